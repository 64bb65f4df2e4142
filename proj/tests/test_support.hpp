#ifndef CBETA_TEST_SUPPORT_HPP
#define CBETA_TEST_SUPPORT_HPP

// Shared helpers for the unit tests: a literal reference implementation of
// the phase recursion (complex logs at every step, no incremental tricks), a
// Box-Muller normal sampler, and a Simpson integrator for oracle CDFs.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

#include "cbeta/pruefer.hpp"
#include "cbeta/rng.hpp"
#include "cbeta/theta_dist.hpp"

namespace testsupport {

inline std::complex<double> unit(double angle) {
    return {std::cos(angle), std::sin(angle)};
}

//! -2 Im log(1 - alpha e^{i psi}), straight from the definition.
inline double reference_upsilon(double psi, std::complex<double> alpha) {
    return -2.0 * std::imag(std::log(1.0 - alpha * unit(psi)));
}

//! The phase recursion psi_0 = theta, psi_{k+1} = psi_k + theta +
//! Upsilon(psi_k, g_k) - Upsilon(0, g_k), evaluated without any of the
//! production shortcuts.
inline double reference_phase(const cbeta::GammaSequence& gs, double theta) {
    double psi = theta;
    for (int k = 0; k + 1 < gs.n(); ++k) {
        const cbeta::DiskPoint g = gs.gammas()[static_cast<std::size_t>(k)];
        const std::complex<double> alpha(g.re, g.im);
        psi += theta + reference_upsilon(psi, alpha) - reference_upsilon(0.0, alpha);
    }
    return psi;
}

//! Standard normal draws (Box-Muller; consumes two uniforms per pair).
inline std::vector<double> normal_sample(std::size_t count, std::uint64_t seed) {
    cbeta::SplitMix64 rng(seed);
    std::vector<double> out;
    out.reserve(count + 1);
    while (out.size() < count) {
        const double u = rng.next_double_open0();
        const double v = rng.next_double();
        const double r = std::sqrt(-2.0 * std::log(u));
        out.push_back(r * std::cos(2.0 * std::numbers::pi * v));
        out.push_back(r * std::sin(2.0 * std::numbers::pi * v));
    }
    out.resize(count);
    return out;
}

//! Composite Simpson rule with `intervals` (even) subintervals.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int intervals) {
    const double h = (b - a) / intervals;
    double acc = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) {
        acc += f(a + i * h) * (i % 2 == 0 ? 2.0 : 4.0);
    }
    return acc * h / 3.0;
}

} // namespace testsupport

#endif // CBETA_TEST_SUPPORT_HPP
