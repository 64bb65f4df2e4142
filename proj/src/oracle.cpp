#include "cbeta/oracle.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace cbeta {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_beta_n(double beta, int n, const char* who) {
    if (!(beta > 0.0)) {
        throw std::domain_error(std::string(who) + ": beta must be positive");
    }
    if (n < 1) {
        throw std::domain_error(std::string(who) + ": n must be at least 1");
    }
}

} // namespace

double log_normalization_const(double beta, int n) {
    require_beta_n(beta, n, "log_normalization_const");
    return n * std::log(kTwoPi) + std::lgamma(1.0 + beta * n / 2.0)
         - n * std::lgamma(1.0 + beta / 2.0);
}

double normalization_const(double beta, int n) {
    const double lc = log_normalization_const(beta, n);
    if (lc >= std::log(std::numeric_limits<double>::max())) {
        throw std::overflow_error("normalization_const: value does not fit in a double");
    }
    return std::exp(lc);
}

double CountPmf::mean() const {
    double m = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        m += static_cast<double>(k) * probs[k];
    }
    return m;
}

double CountPmf::variance() const {
    const double m = mean();
    double v = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        const double d = static_cast<double>(k) - m;
        v += d * d * probs[k];
    }
    return v;
}

CountPmf count_pmf_n2(double beta, double theta, int quad_nodes) {
    if (!(beta > 0.0)) {
        throw std::domain_error("count_pmf_n2: beta must be positive");
    }
    if (!(theta > 0.0) || theta > kTwoPi) {
        throw std::domain_error("count_pmf_n2: theta must lie in (0, 2 pi]");
    }
    if (quad_nodes < 8 || quad_nodes % 2 != 0) {
        throw std::domain_error("count_pmf_n2: quad_nodes must be even and >= 8");
    }
    const double c = normalization_const(beta, 2);

    // Periodic trapezoid rule: m equal nodes, equal weights 2 pi / m.  The
    // pair density depends only on the angle difference, so one row of the
    // kernel suffices.
    auto eval = [&](int m) -> std::array<double, 3> {
        std::vector<double> kernel(static_cast<std::size_t>(m));
        std::vector<char> inside(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) {
            const double x = kTwoPi * i / m;
            kernel[static_cast<std::size_t>(i)] = std::pow(2.0 - 2.0 * std::cos(x), beta / 2.0);
            inside[static_cast<std::size_t>(i)] = x < theta ? 1 : 0;
        }
        std::array<double, 3> sums{0.0, 0.0, 0.0};
        for (int i = 0; i < m; ++i) {
            const int ci = inside[static_cast<std::size_t>(i)];
            for (int j = 0; j < m; ++j) {
                const int d = i - j >= 0 ? i - j : i - j + m;
                sums[static_cast<std::size_t>(ci + inside[static_cast<std::size_t>(j)])]
                    += kernel[static_cast<std::size_t>(d)];
            }
        }
        const double h = kTwoPi / m;
        for (double& s : sums) {
            s *= h * h / c;
        }
        return sums;
    };

    const std::array<double, 3> coarse = eval(quad_nodes / 2);
    const std::array<double, 3> fine = eval(quad_nodes);

    CountPmf out;
    out.probs.assign(fine.begin(), fine.end());
    for (int k = 0; k < 3; ++k) {
        out.quad_error = std::max(out.quad_error,
                                  std::abs(fine[static_cast<std::size_t>(k)]
                                           - coarse[static_cast<std::size_t>(k)]));
    }
    return out;
}

RejectionSample rejection_sample(double beta, int n, SplitMix64& stream) {
    if (n != 2 && n != 3) {
        throw std::domain_error("rejection_sample: n must be 2 or 3");
    }
    if (!(beta > 0.0) || beta > 8.0) {
        throw std::domain_error("rejection_sample: beta must lie in (0, 8]");
    }
    const int pairs = n * (n - 1) / 2;
    const double log_cap = pairs * beta * std::numbers::ln2;
    // Worst case (n = 3, beta = 8) accepts about 1 in 500 proposals, so this
    // cap is astronomically unlikely to trigger.
    constexpr std::int64_t kMaxProposals = 100'000'000;

    RejectionSample out;
    std::vector<double> angles(static_cast<std::size_t>(n));
    while (out.proposals < kMaxProposals) {
        ++out.proposals;
        for (double& a : angles) {
            a = kTwoPi * stream.next_double();
        }
        double log_weight = 0.0;
        for (int j = 0; j < n && std::isfinite(log_weight); ++j) {
            for (int k = j + 1; k < n; ++k) {
                const double t = 2.0 - 2.0 * std::cos(angles[static_cast<std::size_t>(j)]
                                                      - angles[static_cast<std::size_t>(k)]);
                if (t <= 0.0) {
                    log_weight = -std::numeric_limits<double>::infinity();
                    break;
                }
                log_weight += std::log(t);
            }
        }
        const double log_accept = (beta / 2.0) * log_weight - log_cap;
        if (std::log(stream.next_double_open0()) < log_accept) {
            out.angles = angles;
            return out;
        }
    }
    throw std::runtime_error("rejection_sample: proposal budget exhausted");
}

} // namespace cbeta
