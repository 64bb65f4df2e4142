#ifndef CBETA_SINE_BETA_HPP
#define CBETA_SINE_BETA_HPP

#include <cstdint>
#include <vector>

namespace cbeta {

//! Sine_beta interval counts via the finite-n proxy: the number of points of
//! the limit process in [0, x] is approximated in distribution by the
//! eigenangle count N_{n_approx}(0, x / n_approx).
struct SineBetaConfig {
    double beta = 2.0;
    double x = 1.0;
    int n_approx = 4096;
    std::int64_t replicas = 0;
    std::uint64_t seed = 0;
};

//! Default proxy size max(4096, ceil(100 x)): keeps x / n_approx deep in the
//! microscopic regime.
int default_n_approx(double x);

//! One draw of the proxy count, seeded directly by config.seed.  Requires
//! x / n_approx in (0, pi] so the counting identity applies.
std::int64_t sample_sine_count(const SineBetaConfig& config);

//! config.replicas independent draws; replica r uses the sub-seed
//! replica_seed(config.seed, r), so results are deterministic and
//! parallelism-independent.
std::vector<std::int64_t> sample_sine_counts(const SineBetaConfig& config,
                                             int parallelism = 0);

//! Predicted count variance over [0, x]: 2 log(2 + x) / (beta pi^2).
double predicted_sine_variance(double beta, double x);

//! Centers at x / (2 pi) and scales by sqrt(pi^2 beta / (2 log(2 + x))), the
//! normalization under which the count converges to a standard Gaussian.
double standardize_sine_count(std::int64_t count, double beta, double x);

} // namespace cbeta

#endif // CBETA_SINE_BETA_HPP
