#ifndef CBETA_COUNTING_HPP
#define CBETA_COUNTING_HPP

#include <cstdint>

namespace cbeta {

//! One Monte Carlo draw of the arc-counting pipeline: the phase value
//! psi = psi_{n-1}(theta), the boundary angle eta, and the resulting count.
struct CountSample {
    std::int64_t count = 0;
    double psi = 0.0;
    double eta = 0.0;
};

//! Number of eigenangles in the arc (0, theta) expressed through the phase:
//! floor((psi - eta) / (2 pi)) + 1.  Requires psi >= 0 and eta in [0, 2 pi);
//! the result is never negative.
std::int64_t count_in_arc(double psi, double eta);

//! Closed-form predictions for the count and phase statistics at (beta, n,
//! theta), all driven by L = log(2 + n theta):
//!   mean      = n theta / (2 pi)
//!   count_var = 2 L / (pi^2 beta)
//!   phase_var = (8 / beta) L
//!   scale     = sqrt(pi^2 beta / (2 L))   (count standardization factor)
struct Predictors {
    double mean = 0.0;
    double count_var = 0.0;
    double phase_var = 0.0;
    double scale = 0.0;
};

//! Throws std::domain_error unless beta > 0, n >= 1 and theta lies in (0, pi].
Predictors predictors(double beta, int n, double theta);

//! scale * (count - mean) for the cell (beta, n, theta).
double standardize(std::int64_t count, double beta, int n, double theta);

//! The deterministic step sequence eps_k = 4 / (beta (k + 1) + 2), its prefix
//! sums s_k = sum_{j<k} eps_j, and the gap |s_k - (4/beta) log(k+1)|, which
//! stays below (8/beta^2 + 2/beta) pi^2/6 for every k.
struct EpsilonSRecord {
    double eps_k = 0.0;
    double s_k = 0.0;
    double gap_k = 0.0;
};

//! Record at index k (O(k) prefix sum).  Throws std::domain_error unless
//! beta > 0 and k >= 0.
EpsilonSRecord epsilon_s_sequences(double beta, std::int64_t k);

//! sup_{0 <= k <= k_max} of the gap, computed incrementally in O(k_max).
double epsilon_s_max_gap(double beta, std::int64_t k_max);

//! The uniform bound (8/beta^2 + 2/beta) pi^2/6 on the gap.
double epsilon_s_gap_bound(double beta);

//! The uniform boundary angle eta = 2 pi u of a size-n configuration, drawn
//! from sub-stream n-1 of `seed` (the coefficient indices use 0..n-2, so the
//! same seed yields an independent eta).
double draw_eta(std::uint64_t seed, int n);

//! One replica of the counting pipeline: gamma_j from the per-index
//! sub-streams of `seed` (indices 0..n-2), eta = draw_eta(seed, n), psi
//! evaluated at theta, count = count_in_arc(psi, eta).  theta may lie
//! anywhere in [0, 2 pi] (the arc (0, theta) need not be restricted to a
//! half circle when sampling).
CountSample draw_count_sample(double beta, int n, double theta, std::uint64_t seed);

} // namespace cbeta

#endif // CBETA_COUNTING_HPP
