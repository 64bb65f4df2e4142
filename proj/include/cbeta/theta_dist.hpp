#ifndef CBETA_THETA_DIST_HPP
#define CBETA_THETA_DIST_HPP

#include "cbeta/rng.hpp"

namespace cbeta {

//! A point of the open unit disk, stored as Cartesian coordinates.
struct DiskPoint {
    double re = 0.0;
    double im = 0.0;

    constexpr double abs2() const noexcept { return re * re + im * im; }
};

//! Closed-form moments of the Theta_nu distribution on the unit disk,
//! density (nu-1)/(2 pi) * (1 - |z|^2)^((nu-3)/2):
//!   m2 = E[|X|^2] = 2/(nu+1),   m4 = E[|X|^4] = 8/((nu+1)(nu+3)).
struct ThetaNuMoments {
    double m2 = 0.0;
    double m4 = 0.0;
};

//! Moments of Theta_nu.  Throws std::domain_error unless nu > 1.
ThetaNuMoments theta_nu_moments(double nu);

//! E[(-log(1-|X|^2))^m] = Gamma(m+1) * (2/(nu-1))^m for X ~ Theta_nu; the
//! variable -log(1-|X|^2) is exponential with rate (nu-1)/2.
//! Throws std::domain_error unless nu > 1 and m >= 0.
double theta_nu_log_moment(double nu, int m);

//! One draw from Theta_nu.  Consumes exactly two uniforms from `rng`, radius
//! first and angle second: |X|^2 = 1 - u^(2/(nu-1)) (the Beta(1,(nu-1)/2)
//! inverse CDF, evaluated as -expm1 of a log for stability near the boundary),
//! and the angle is 2 pi v.  If rounding pushes |X|^2 to 1 it is clamped to
//! 1 - 2^-50, so |X| < 1 always holds.  Throws std::domain_error unless nu > 1.
DiskPoint sample_theta_nu(double nu, SplitMix64& rng);

} // namespace cbeta

#endif // CBETA_THETA_DIST_HPP
