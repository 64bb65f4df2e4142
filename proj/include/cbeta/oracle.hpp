#ifndef CBETA_ORACLE_HPP
#define CBETA_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "cbeta/rng.hpp"

namespace cbeta {

//! log of the normalizing constant of the joint eigenangle density,
//! log[(2 pi)^n Gamma(1 + beta n / 2) / Gamma(1 + beta / 2)^n].
double log_normalization_const(double beta, int n);

//! Normalizing constant itself; throws std::overflow_error when it does not
//! fit in a double (the log version never overflows for sane inputs).
double normalization_const(double beta, int n);

//! Distribution of the number of eigenangles in [0, theta), obtained by
//! numerical integration of the joint density.  probs[k] = P(N = k).
struct CountPmf {
    std::vector<double> probs;
    //! Max change of any prob when the node count is halved (doubling check).
    double quad_error = 0.0;

    double mean() const;
    double variance() const;
};

//! Exact (to quadrature accuracy) counting distribution for n = 2 via the
//! tensor periodic trapezoid rule with quad_nodes points per axis, normalized
//! by the closed-form constant.  quad_nodes must be even and at least 8;
//! theta must lie in (0, 2 pi].
CountPmf count_pmf_n2(double beta, double theta, int quad_nodes = 4096);

//! One exact draw from the joint eigenangle density by rejection from the
//! uniform proposal, using the bound |e^{i a} - e^{i b}|^beta <= 2^beta per
//! pair.  Practical for n in {2, 3} and beta <= 8 (worst acceptance rate
//! about 1/500).  Consumes n + 1 uniforms per proposal.
struct RejectionSample {
    std::vector<double> angles;
    std::int64_t proposals = 0;
};

RejectionSample rejection_sample(double beta, int n, SplitMix64& stream);

} // namespace cbeta

#endif // CBETA_ORACLE_HPP
