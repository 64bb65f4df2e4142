#include "cbeta/counting.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cbeta/pruefer.hpp"
#include "cbeta/rng.hpp"

namespace cbeta {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

} // namespace

std::int64_t count_in_arc(double psi, double eta) {
    if (!(psi >= 0.0)) {
        throw std::domain_error("count_in_arc: psi must be non-negative");
    }
    if (!(eta >= 0.0 && eta < kTwoPi)) {
        throw std::domain_error("count_in_arc: eta must lie in [0, 2 pi)");
    }
    return static_cast<std::int64_t>(std::floor((psi - eta) / kTwoPi)) + 1;
}

Predictors predictors(double beta, int n, double theta) {
    if (!(beta > 0.0)) {
        throw std::domain_error("predictors: beta must be positive");
    }
    if (n < 1) {
        throw std::domain_error("predictors: n must be at least 1");
    }
    if (!(theta > 0.0 && theta <= kPi)) {
        throw std::domain_error("predictors: theta must lie in (0, pi]");
    }
    const double big_l = std::log(2.0 + n * theta);
    Predictors p;
    p.mean = n * theta / kTwoPi;
    p.count_var = 2.0 * big_l / (kPi * kPi * beta);
    p.phase_var = (8.0 / beta) * big_l;
    p.scale = std::sqrt(kPi * kPi * beta / (2.0 * big_l));
    return p;
}

double standardize(std::int64_t count, double beta, int n, double theta) {
    const Predictors p = predictors(beta, n, theta);
    return p.scale * (static_cast<double>(count) - p.mean);
}

EpsilonSRecord epsilon_s_sequences(double beta, std::int64_t k) {
    if (!(beta > 0.0)) {
        throw std::domain_error("epsilon_s_sequences: beta must be positive");
    }
    if (k < 0) {
        throw std::domain_error("epsilon_s_sequences: k must be non-negative");
    }
    double s = 0.0;
    for (std::int64_t j = 0; j < k; ++j) {
        s += 4.0 / (beta * static_cast<double>(j + 1) + 2.0);
    }
    EpsilonSRecord rec;
    rec.eps_k = 4.0 / (beta * static_cast<double>(k + 1) + 2.0);
    rec.s_k = s;
    rec.gap_k = std::fabs(s - (4.0 / beta) * std::log(static_cast<double>(k + 1)));
    return rec;
}

double epsilon_s_max_gap(double beta, std::int64_t k_max) {
    if (!(beta > 0.0)) {
        throw std::domain_error("epsilon_s_max_gap: beta must be positive");
    }
    if (k_max < 0) {
        throw std::domain_error("epsilon_s_max_gap: k_max must be non-negative");
    }
    double s = 0.0;
    double worst = 0.0; // k = 0: s_0 = 0 and log(1) = 0
    for (std::int64_t k = 1; k <= k_max; ++k) {
        s += 4.0 / (beta * static_cast<double>(k) + 2.0);
        const double gap = std::fabs(s - (4.0 / beta) * std::log(static_cast<double>(k + 1)));
        if (gap > worst) {
            worst = gap;
        }
    }
    return worst;
}

double epsilon_s_gap_bound(double beta) {
    if (!(beta > 0.0)) {
        throw std::domain_error("epsilon_s_gap_bound: beta must be positive");
    }
    return (8.0 / (beta * beta) + 2.0 / beta) * kPi * kPi / 6.0;
}

double draw_eta(std::uint64_t seed, int n) {
    if (n < 1) {
        throw std::domain_error("draw_eta: n must be at least 1");
    }
    SplitMix64 eta_stream(substream_seed(seed, static_cast<std::uint64_t>(n) - 1));
    return kTwoPi * eta_stream.next_double();
}

CountSample draw_count_sample(double beta, int n, double theta, std::uint64_t seed) {
    CountSample out;
    // psi > 0 holds in exact arithmetic for theta > 0; the max() only guards
    // against rounding putting a microscopic phase a few ulp below zero.
    out.psi = std::max(0.0, pruefer_phase_seeded(beta, n, theta, seed));
    out.eta = draw_eta(seed, n);
    out.count = count_in_arc(out.psi, out.eta);
    return out;
}

} // namespace cbeta
