#ifndef CBETA_CHECKS_HPP
#define CBETA_CHECKS_HPP

#include <cstdint>
#include <vector>

#include "cbeta/report.hpp"

namespace cbeta {

//! Shared configuration of the verification suites.  Every cell derives its
//! own master seed from `seed` and a stable cell tag, so suites are
//! individually and jointly reproducible.  reps_scale multiplies every
//! replica budget (floored at 200) for quick smoke runs.
struct CheckConfig {
    std::uint64_t seed = 42;
    double reps_scale = 1.0;
    int parallelism = 0;
};

//! Replica budget after scaling.
std::int64_t scaled_reps(const CheckConfig& cfg, std::int64_t base);

//! Coefficient-law moments: E|X|^2, E|X|^4 and E[-log(1 - |X|^2)] against
//! their closed forms over the nu grid, plus an exponentiality KS check of
//! -log(1 - |X|^2) at the first grid point.
std::vector<RunReport> check_theta(const CheckConfig& cfg,
                                   const std::vector<double>& nus = {2, 3, 5, 11, 101},
                                   std::int64_t reps = 1'000'000);

//! Increment-kernel moment suite at fixed evaluation angles psi = 2, phi =
//! 1/2: the mean, cross, and fourth moments, the two one-sided second-moment
//! bounds, and the two vanishing correlations.
std::vector<RunReport> check_moments(const CheckConfig& cfg,
                                     const std::vector<double>& nus = {3, 21},
                                     std::int64_t reps = 1'000'000);

//! Deterministic step-sequence check: sup_k |s_k - (4/beta) log(k+1)| against
//! the closed-form bound.
std::vector<RunReport> check_seq(const CheckConfig& cfg,
                                 const std::vector<double>& betas = {0.5, 1, 2, 4},
                                 std::int64_t k_max = 1'000'000);

//! Phase-moment suite: E[psi_s] = (s+1) theta, the increment-sum identity for
//! E|psi_m - psi_k - (m-k) theta|^2, and the one-sided bound
//! E|psi_m - (m+1) theta|^2 <= 8 m theta / beta on a (beta, theta, m) grid.
std::vector<RunReport> check_phase(const CheckConfig& cfg, std::int64_t reps = 100'000);

//! Count- and phase-variance boundedness on the 12-cell grid
//! n in {64,256,1024,4096} x theta in {pi, pi/8, 8pi/n} at beta = 2, plus a
//! no-growth trend test of the count-variance gaps in n.
std::vector<RunReport> check_variance(const CheckConfig& cfg, std::int64_t reps = 100'000);

//! Characteristic function of the centered phase at (beta=2, theta=pi)
//! against the closed-form prediction on the lambda grid, a non-growth check
//! of the relative deviation in n, and the count analogue at n = 1024.
std::vector<RunReport> check_charfn(const CheckConfig& cfg, std::int64_t reps = 100'000);

//! Gaussian-limit suite at (beta=2, theta=pi): KS decay of standardized
//! counts and standardized phases over n in {16, 256, 4096}, the count mean
//! identity, and the reflection symmetry of the counting law at theta = pi/3.
std::vector<RunReport> check_clt(const CheckConfig& cfg, std::int64_t reps = 100'000);

//! Small-n ground truth: sampler pmf vs quadrature (n=2) and vs the rejection
//! sampler (n=2,3) per cell, the count variance at (2, 2, pi) against its
//! closed form, quadrature self-consistency, and the rejection acceptance
//! rate.
std::vector<RunReport> check_oracle(const CheckConfig& cfg, std::int64_t reps = 1'000'000);

//! Linear-statistics suite at beta = 2: Gaussian limit of sum 2cos(theta_j)
//! at n = 1024 (mean, variance, KS), derivative-norm boundedness of the
//! variance for three trigonometric test functions over n in {64,256,1024},
//! and the deterministic smoothed-variance / smoothed-derivative monotonicity
//! checks.
std::vector<RunReport> check_linstat(const CheckConfig& cfg, std::int64_t reps = 20'000);

//! Scaling-limit counts: variance vs 2 log(2+x)/(beta pi^2) on the
//! x in {1, 2pi, 50, 500} x beta in {1,2,4} grid at n_approx = 4096, KS decay
//! in x at beta = 2 with the fixed threshold at x = 500, and stability of the
//! variance under doubling n_approx.
std::vector<RunReport> check_sine(const CheckConfig& cfg, std::int64_t reps = 100'000);

//! All suites above, concatenated in a fixed order.
std::vector<RunReport> check_all(const CheckConfig& cfg);

} // namespace cbeta

#endif // CBETA_CHECKS_HPP
