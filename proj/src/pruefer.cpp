#include "cbeta/pruefer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cbeta {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_disk(DiskPoint alpha) {
    if (!(alpha.abs2() < 1.0)) {
        throw std::domain_error("upsilon: |alpha| must be below 1");
    }
}

void require_theta(double theta) {
    if (!(theta >= 0.0 && theta <= kTwoPi)) {
        throw std::domain_error("pruefer_phase: theta must lie in [0, 2 pi]");
    }
}

// Recursion state with e^{i psi} tracked multiplicatively.  Keeping the unit
// complex alongside psi removes the sin/cos of the large unreduced phase from
// the loop; the single atan2 below is the only transcendental per step.
struct PhaseState {
    static constexpr int kRenormPeriod = 256;

    double psi;
    double zr, zi; // e^{i psi}
    int until_renorm = kRenormPeriod;

    explicit PhaseState(double theta)
        : psi(theta), zr(std::cos(theta)), zi(std::sin(theta)) {}

    // psi += theta + Upsilon1(psi, gamma).  With w = 1 - gamma e^{i psi},
    // v = 1 - gamma and c = w conj(v), the increment is -2 arg(c) and the
    // exact rotation of z by e^{i Upsilon1} is conj(c)^2 / |c|^2, so z stays
    // on the recursion's own trajectory without any trigonometry.
    inline void step(double gre, double gim, double theta, double cth, double sth) {
        const double wr = 1.0 - (gre * zr - gim * zi);
        const double wi = -(gre * zi + gim * zr);
        const double vr = 1.0 - gre;
        const double vi = -gim;
        const double cr = wr * vr + wi * vi;
        const double ci = wi * vr - wr * vi;
        psi += theta - 2.0 * std::atan2(ci, cr);

        const double d = cr * cr + ci * ci;
        const double u2r = (cr - ci) * (cr + ci);
        const double u2i = -2.0 * cr * ci;
        const double tr = zr * cth - zi * sth;
        const double ti = zr * sth + zi * cth;
        zr = (tr * u2r - ti * u2i) / d;
        zi = (tr * u2i + ti * u2r) / d;

        if (--until_renorm == 0) {
            until_renorm = kRenormPeriod;
            const double m = zr * zr + zi * zi;
            const double f = 0.5 * (3.0 - m); // one Newton step toward |z| = 1
            zr *= f;
            zi *= f;
        }
    }
};

// psi_{n-1}(theta) with gamma_k supplied by `gamma_at(k)`.
template <class GammaAt>
double run_phase(int n, double theta, GammaAt&& gamma_at) {
    PhaseState s(theta);
    const double cth = std::cos(theta);
    const double sth = std::sin(theta);
    for (int k = 0; k + 1 < n; ++k) {
        const DiskPoint g = gamma_at(k);
        s.step(g.re, g.im, theta, cth, sth);
    }
    return s.psi;
}

} // namespace

double upsilon(double psi, DiskPoint alpha) {
    require_disk(alpha);
    const double c = std::cos(psi);
    const double s = std::sin(psi);
    // w = 1 - alpha e^{i psi}; Re w >= 1 - |alpha| > 0, so -2 arg(w) is the
    // principal-branch value of -2 Im log w.
    const double wr = 1.0 - (alpha.re * c - alpha.im * s);
    const double wi = -(alpha.re * s + alpha.im * c);
    return -2.0 * std::atan2(wi, wr);
}

double upsilon_tilde(double psi, DiskPoint alpha) {
    require_disk(alpha);
    return 2.0 * (alpha.im * std::cos(psi) + alpha.re * std::sin(psi));
}

double upsilon1(double psi, DiskPoint alpha) {
    return upsilon(psi, alpha) - upsilon(0.0, alpha);
}

GammaSequence::GammaSequence(double beta, int n, std::uint64_t seed)
    : beta_(beta), n_(n), seed_(seed) {
    if (!(beta > 0.0)) {
        throw std::domain_error("GammaSequence: beta must be positive");
    }
    if (n < 1) {
        throw std::domain_error("GammaSequence: n must be at least 1");
    }
    gammas_.reserve(static_cast<std::size_t>(n - 1));
    for (int j = 0; j + 1 < n; ++j) {
        SplitMix64 stream(substream_seed(seed, static_cast<std::uint64_t>(j)));
        gammas_.push_back(sample_theta_nu(beta * (j + 1) + 1.0, stream));
    }
}

PrueferEval pruefer_phase(const GammaSequence& gs, double theta, bool want_trajectory) {
    require_theta(theta);
    const auto& g = gs.gammas();
    const int n = gs.n();

    PrueferEval out;
    out.theta = theta;
    if (!want_trajectory) {
        out.psi = run_phase(n, theta, [&g](int k) { return g[static_cast<std::size_t>(k)]; });
        return out;
    }

    out.trajectory.reserve(static_cast<std::size_t>(n));
    out.trajectory.push_back(theta);
    PhaseState s(theta);
    const double cth = std::cos(theta);
    const double sth = std::sin(theta);
    for (int k = 0; k + 1 < n; ++k) {
        const DiskPoint gk = g[static_cast<std::size_t>(k)];
        s.step(gk.re, gk.im, theta, cth, sth);
        out.trajectory.push_back(s.psi);
    }
    out.psi = s.psi;
    return out;
}

double pruefer_phase_seeded(double beta, int n, double theta, std::uint64_t seed) {
    require_theta(theta);
    if (!(beta > 0.0)) {
        throw std::domain_error("pruefer_phase_seeded: beta must be positive");
    }
    if (n < 1) {
        throw std::domain_error("pruefer_phase_seeded: n must be at least 1");
    }
    return run_phase(n, theta, [beta, seed](int j) {
        SplitMix64 stream(substream_seed(seed, static_cast<std::uint64_t>(j)));
        return sample_theta_nu(beta * (j + 1) + 1.0, stream);
    });
}

namespace detail {

PhaseAndSlope eval_phase_and_slope(const std::vector<DiskPoint>& gammas, double theta) {
    PhaseState s(theta);
    const double cth = std::cos(theta);
    const double sth = std::sin(theta);
    double dpsi = 1.0; // d psi_0 / d theta
    for (const DiskPoint& g : gammas) {
        // slope factor uses the pre-step state: t = gamma z / (1 - gamma z)
        const double a = g.re * s.zr - g.im * s.zi;
        const double b = g.re * s.zi + g.im * s.zr;
        const double wr = 1.0 - a;
        const double wi = -b;
        const double ret = (a * wr + b * wi) / (wr * wr + wi * wi);
        dpsi = 1.0 + dpsi * (1.0 + 2.0 * ret);
        s.step(g.re, g.im, theta, cth, sth);
    }
    return {s.psi, dpsi};
}

} // namespace detail

namespace {

// Shrinks [lo, hi] with psi(lo) <= target <= psi(hi) until hi - lo <= tol.
// Newton steps (slope from the recursion itself) are taken whenever they stay
// inside the bracket and keep converging; otherwise the step falls back to the
// midpoint, so the bracket never escapes and the loop always terminates.
double refine_root(const std::vector<DiskPoint>& gammas, double lo, double hi,
                   double target, double tol) {
    double x = 0.5 * (lo + hi);
    double dxold = hi - lo;
    auto ev = detail::eval_phase_and_slope(gammas, x);
    double f = ev.psi - target;

    for (int it = 0; it < 200 && (hi - lo) > tol; ++it) {
        if (f == 0.0) {
            return x;
        }
        (f < 0.0 ? lo : hi) = x;
        if ((hi - lo) <= tol) {
            break;
        }

        const bool newton_ok =
            ev.dpsi > 0.0 &&
            ((x - hi) * ev.dpsi - f) * ((x - lo) * ev.dpsi - f) < 0.0 &&
            std::fabs(2.0 * f) <= std::fabs(dxold * ev.dpsi);
        double dx;
        if (newton_ok) {
            dx = f / ev.dpsi;
            x -= dx;
        } else {
            dx = 0.5 * (hi - lo);
            x = lo + dx;
        }
        if (!(x > lo && x < hi)) {
            x = 0.5 * (lo + hi);
        }
        dxold = dx;
        ev = detail::eval_phase_and_slope(gammas, x);
        f = ev.psi - target;
    }
    return 0.5 * (lo + hi);
}

} // namespace

EigenangleSet eigenangles(const GammaSequence& gs, double eta, double tol) {
    if (!(eta >= 0.0 && eta < kTwoPi)) {
        throw std::domain_error("eigenangles: eta must lie in [0, 2 pi)");
    }
    if (!(tol > 0.0)) {
        throw std::domain_error("eigenangles: tol must be positive");
    }

    const auto& g = gs.gammas();
    const int n = gs.n();
    const int cells = 4 * n;
    const auto grid_theta = [cells](int i) { return kTwoPi * i / cells; };

    std::vector<double> grid_psi(static_cast<std::size_t>(cells) + 1);
    for (int i = 0; i <= cells; ++i) {
        grid_psi[static_cast<std::size_t>(i)] =
            run_phase(n, grid_theta(i), [&g](int k) { return g[static_cast<std::size_t>(k)]; });
    }
    for (int i = 0; i < cells; ++i) {
        if (grid_psi[static_cast<std::size_t>(i) + 1] < grid_psi[static_cast<std::size_t>(i)]) {
            throw std::runtime_error("eigenangles: non-monotone phase scan");
        }
    }

    EigenangleSet out;
    out.eta = eta;
    out.angles.resize(static_cast<std::size_t>(n));
    int cell = 0;
    for (int m = 0; m < n; ++m) {
        const double target = eta + kTwoPi * m;
        if (target <= grid_psi[0]) {
            out.angles[static_cast<std::size_t>(m)] = 0.0; // eta = 0: psi(0) = 0 is the root
            continue;
        }
        while (cell < cells && grid_psi[static_cast<std::size_t>(cell) + 1] < target) {
            ++cell;
        }
        if (cell >= cells) {
            // psi(2 pi) = 2 pi n holds exactly in reals; only floating-point
            // slack can leave the last target above the scan, so the root sits
            // at the right edge of the domain.
            out.angles[static_cast<std::size_t>(m)] = std::nextafter(kTwoPi, 0.0);
            continue;
        }
        out.angles[static_cast<std::size_t>(m)] =
            refine_root(g, grid_theta(cell), grid_theta(cell + 1), target, tol);
    }
    return out;
}

} // namespace cbeta
