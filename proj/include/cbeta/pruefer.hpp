#ifndef CBETA_PRUEFER_HPP
#define CBETA_PRUEFER_HPP

#include <cstdint>
#include <vector>

#include "cbeta/rng.hpp"
#include "cbeta/theta_dist.hpp"

namespace cbeta {

//! Upsilon(psi, alpha) = -2 Im log(1 - alpha e^{i psi}) for |alpha| < 1.
//! Re(1 - alpha e^{i psi}) >= 1 - |alpha| > 0, so the principal branch never
//! crosses the cut and the value lies in (-pi, pi).
//! Throws std::domain_error when |alpha| >= 1.
double upsilon(double psi, DiskPoint alpha);

//! The linearization Upsilon~(psi, alpha) = 2 Im(alpha e^{i psi}).
double upsilon_tilde(double psi, DiskPoint alpha);

//! Upsilon1(psi, alpha) = Upsilon(psi, alpha) - Upsilon(0, alpha), the exact
//! increment of the phase recursion beyond the rigid rotation by theta.
double upsilon1(double psi, DiskPoint alpha);

//! The n-1 disk coefficients gamma_0..gamma_{n-2} of an n-point ensemble,
//! gamma_j ~ Theta_{beta (j+1) + 1}, drawn independently.  Coefficient j is
//! produced from sub-stream substream_seed(seed, j), so gamma_j depends only
//! on (beta, j, seed) and not on n; regenerating with the same arguments
//! reproduces the sequence bit for bit.
class GammaSequence {
  public:
    //! Throws std::domain_error unless beta > 0 and n >= 1.
    GammaSequence(double beta, int n, std::uint64_t seed);

    double beta() const noexcept { return beta_; }
    int n() const noexcept { return n_; }
    std::uint64_t seed() const noexcept { return seed_; }
    const std::vector<DiskPoint>& gammas() const noexcept { return gammas_; }

  private:
    double beta_;
    int n_;
    std::uint64_t seed_;
    std::vector<DiskPoint> gammas_;
};

inline GammaSequence draw_gamma_sequence(double beta, int n, std::uint64_t seed) {
    return GammaSequence(beta, n, seed);
}

//! Evaluation record of the relative Pruefer phase psi_{n-1} at one angle.
struct PrueferEval {
    double theta = 0.0;
    double psi = 0.0;
    //! psi_0..psi_{n-1} when requested (psi_0 = theta), otherwise empty.
    std::vector<double> trajectory;
};

//! psi_{n-1}(theta) for the recursion
//!     psi_0(theta) = theta,
//!     psi_{k+1}(theta) = psi_k(theta) + theta + Upsilon1(psi_k(theta), gamma_k),
//! iterated in index order k = 0..n-2.  psi_{n-1}(0) = 0 exactly, and
//! psi_{n-1} is strictly increasing in theta with psi_{n-1}(2 pi) = 2 pi n.
//! Throws std::domain_error unless theta lies in [0, 2 pi].
PrueferEval pruefer_phase(const GammaSequence& gs, double theta, bool want_trajectory = false);

//! Streamed variant of pruefer_phase: regenerates gamma_j on the fly from the
//! per-index sub-streams of `seed` and never stores the sequence.  Bit
//! identical to pruefer_phase(GammaSequence(beta, n, seed), theta).psi.
double pruefer_phase_seeded(double beta, int n, double theta, std::uint64_t seed);

//! The eigenangle configuration determined by a coefficient sequence and the
//! boundary angle eta.
struct EigenangleSet {
    std::vector<double> angles; // ascending, in [0, 2 pi)
    double eta = 0.0;
};

//! Solves psi_{n-1}(theta) = eta + 2 pi m for m = 0..n-1.  Each root is
//! bracketed by a monotone scan over the uniform grid of 4n points on
//! [0, 2 pi] and then refined, keeping the bracket at every step, until the
//! bracket width is at most tol.  Throws std::domain_error for eta outside
//! [0, 2 pi) or tol <= 0, and std::runtime_error if the scan detects a
//! floating-point monotonicity violation.
EigenangleSet eigenangles(const GammaSequence& gs, double eta, double tol = 1e-12);

namespace detail {

//! psi_{n-1}(theta) together with its theta-derivative.  The slope obeys
//! d psi_{k+1} = 1 + d psi_k * (1 + 2 Re(gamma_k e^{i psi_k}/(1 - gamma_k e^{i psi_k})))
//! and stays strictly positive, which is what root refinement relies on.
struct PhaseAndSlope {
    double psi = 0.0;
    double dpsi = 0.0;
};

PhaseAndSlope eval_phase_and_slope(const std::vector<DiskPoint>& gammas, double theta);

} // namespace detail

} // namespace cbeta

#endif // CBETA_PRUEFER_HPP
