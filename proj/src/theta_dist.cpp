#include "cbeta/theta_dist.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cbeta {

namespace {

void require_nu(double nu) {
    if (!(nu > 1.0)) {
        throw std::domain_error("theta_nu: nu must exceed 1");
    }
}

} // namespace

ThetaNuMoments theta_nu_moments(double nu) {
    require_nu(nu);
    return {2.0 / (nu + 1.0), 8.0 / ((nu + 1.0) * (nu + 3.0))};
}

double theta_nu_log_moment(double nu, int m) {
    require_nu(nu);
    if (m < 0) {
        throw std::domain_error("theta_nu_log_moment: m must be non-negative");
    }
    // Gamma(m+1) * (2/(nu-1))^m, evaluated in log space to survive large m.
    return std::exp(std::lgamma(static_cast<double>(m) + 1.0) +
                    static_cast<double>(m) * std::log(2.0 / (nu - 1.0)));
}

DiskPoint sample_theta_nu(double nu, SplitMix64& rng) {
    require_nu(nu);
    const double u = rng.next_double_open0();
    const double v = rng.next_double();

    // |X|^2 = 1 - u^(2/(nu-1)), computed as -expm1((2/(nu-1)) log u) so that
    // values near 0 and near 1 are both produced at full precision.
    double t = -std::expm1((2.0 / (nu - 1.0)) * std::log(u));
    if (t >= 1.0) {
        t = 1.0 - 0x1.0p-50; // rounding hit the boundary; keep |X| < 1
    }

    const double r = std::sqrt(t);
    const double phi = 2.0 * std::numbers::pi * v;
    return {r * std::cos(phi), r * std::sin(phi)};
}

} // namespace cbeta
