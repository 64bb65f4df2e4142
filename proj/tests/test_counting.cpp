#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"

#include "cbeta/counting.hpp"
#include "cbeta/pruefer.hpp"
#include "cbeta/rng.hpp"

using namespace cbeta;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
} // namespace

TEST_SUITE("counting") {

TEST_CASE("count_in_arc frozen values") {
    CHECK(count_in_arc(0.0, 0.0) == 1);
    CHECK(count_in_arc(kTwoPi - 1e-9, 0.0) == 1);
    CHECK(count_in_arc(kTwoPi + 1e-9, 0.0) == 2);
    CHECK(count_in_arc(0.1, 0.2) == 0);
    CHECK(count_in_arc(100.0, 3.0) == 16);
    CHECK_THROWS_AS(count_in_arc(-0.1, 0.0), std::domain_error);
    CHECK_THROWS_AS(count_in_arc(1.0, -0.1), std::domain_error);
    CHECK_THROWS_AS(count_in_arc(1.0, kTwoPi), std::domain_error);
}

TEST_CASE("predictors follow the closed forms") {
    const double beta = 2.0;
    const int n = 100;
    const double theta = kPi;
    const Predictors p = predictors(beta, n, theta);
    const double len = std::log(2.0 + n * theta);
    CHECK(p.mean == doctest::Approx(50.0).epsilon(1e-14));
    CHECK(p.count_var == doctest::Approx(2.0 * len / (kPi * kPi * beta)).epsilon(1e-14));
    CHECK(p.phase_var == doctest::Approx(8.0 * len / beta).epsilon(1e-14));
    CHECK(p.scale == doctest::Approx(std::sqrt(kPi * kPi * beta / (2.0 * len))).epsilon(1e-14));
    // Standardization is the centered count times the scale.
    CHECK(standardize(53, beta, n, theta) == doctest::Approx((53.0 - 50.0) * p.scale));

    CHECK_THROWS_AS(predictors(0.0, 100, kPi), std::domain_error);
    CHECK_THROWS_AS(predictors(2.0, 0, kPi), std::domain_error);
    CHECK_THROWS_AS(predictors(2.0, 100, 0.0), std::domain_error);
    CHECK_THROWS_AS(predictors(2.0, 100, kPi + 0.01), std::domain_error);
}

TEST_CASE("step sequence values and bound") {
    const EpsilonSRecord r0 = epsilon_s_sequences(2.0, 0);
    CHECK(r0.eps_k == doctest::Approx(1.0));
    CHECK(r0.s_k == 0.0);
    CHECK(r0.gap_k == 0.0);
    const EpsilonSRecord r1 = epsilon_s_sequences(2.0, 1);
    CHECK(r1.eps_k == doctest::Approx(4.0 / 6.0));
    CHECK(r1.s_k == doctest::Approx(1.0));
    CHECK(r1.gap_k == doctest::Approx(std::abs(1.0 - 2.0 * std::log(2.0))));

    for (const double beta : {0.5, 1.0, 2.0, 4.0}) {
        const double gap = epsilon_s_max_gap(beta, 100000);
        CHECK(gap < epsilon_s_gap_bound(beta));
        // The sup over a prefix can only grow with the horizon.
        CHECK(epsilon_s_max_gap(beta, 1000) <= gap);
    }
    CHECK(epsilon_s_gap_bound(2.0)
          == doctest::Approx((8.0 / 4.0 + 1.0) * kPi * kPi / 6.0).epsilon(1e-14));
    CHECK_THROWS_AS(epsilon_s_sequences(0.0, 3), std::domain_error);
    CHECK_THROWS_AS(epsilon_s_sequences(2.0, -1), std::domain_error);
}

TEST_CASE("eta substream") {
    const int n = 12;
    SplitMix64 sub(substream_seed(77, n - 1));
    CHECK(draw_eta(77, n) == kTwoPi * sub.next_double());
    for (int k = 1; k <= 40; ++k) {
        const double eta = draw_eta(1000 + static_cast<std::uint64_t>(k), k);
        CHECK(eta >= 0.0);
        CHECK(eta < kTwoPi);
    }
    CHECK_THROWS_AS(draw_eta(1, 0), std::domain_error);
}

TEST_CASE("count sample wiring") {
    const double beta = 2.0;
    const int n = 24;
    const double theta = 1.9;
    const std::uint64_t seed = 321;
    const CountSample cs = draw_count_sample(beta, n, theta, seed);
    CHECK(cs.eta == draw_eta(seed, n));
    CHECK(cs.psi >= 0.0);
    CHECK(cs.psi == doctest::Approx(pruefer_phase_seeded(beta, n, theta, seed)));
    CHECK(cs.count == count_in_arc(cs.psi, cs.eta));
    // theta may cover more than the half circle when sampling.
    CHECK_NOTHROW(draw_count_sample(beta, n, 6.1, seed));
}

} // TEST_SUITE
