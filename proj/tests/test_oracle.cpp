#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "cbeta/counting.hpp"
#include "cbeta/oracle.hpp"
#include "cbeta/rng.hpp"
#include "cbeta/stats.hpp"

using namespace cbeta;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
} // namespace

TEST_SUITE("oracle") {

TEST_CASE("normalization constants") {
    // (2 pi)^2 Gamma(3) / Gamma(2)^2 = 8 pi^2.
    CHECK(normalization_const(2.0, 2) == doctest::Approx(8.0 * kPi * kPi).epsilon(1e-12));
    CHECK(log_normalization_const(2.0, 2)
          == doctest::Approx(std::log(8.0 * kPi * kPi)).epsilon(1e-12));
    CHECK(normalization_const(1.0, 2)
          == doctest::Approx(kTwoPi * kTwoPi * std::tgamma(2.0)
                             / std::pow(std::tgamma(1.5), 2.0))
                 .epsilon(1e-12));
    CHECK_THROWS_AS(normalization_const(2.0, 400), std::overflow_error);
    CHECK_NOTHROW(log_normalization_const(2.0, 400));
    CHECK_THROWS_AS(log_normalization_const(0.0, 2), std::domain_error);
}

TEST_CASE("quadrature pmf at the frozen half-circle cell") {
    const CountPmf pmf = count_pmf_n2(2.0, kPi, 4096);
    REQUIRE(pmf.probs.size() == 3);
    // P(both angles inside) = (pi^2 - 4) / (4 pi^2) at beta = 2, theta = pi.
    // The arc boundary gives the rule an O(h^2) error, about 2e-8 here.
    const double p2 = (kPi * kPi - 4.0) / (4.0 * kPi * kPi);
    CHECK(pmf.probs[2] == doctest::Approx(p2).epsilon(1e-6));
    CHECK(pmf.probs[0] == doctest::Approx(p2).epsilon(1e-6));
    CHECK(pmf.probs[1] == doctest::Approx(1.0 - 2.0 * p2).epsilon(1e-6));
    CHECK(pmf.mean() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(pmf.variance() == doctest::Approx(0.2973576327153245).epsilon(1e-6));
    CHECK(pmf.quad_error >= 0.0);
}

TEST_CASE("quadrature pmf basics off the symmetric point") {
    const CountPmf pmf = count_pmf_n2(1.0, kPi / 2.0, 2048);
    double total = 0.0;
    for (const double p : pmf.probs) {
        CHECK(p >= 0.0);
        total += p;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
    // Rotational invariance fixes the mean at n theta / (2 pi) = 1/2.
    CHECK(pmf.mean() == doctest::Approx(0.5).epsilon(1e-5));

    const CountPmf full = count_pmf_n2(2.0, kTwoPi, 512);
    CHECK(full.probs[2] == doctest::Approx(1.0).epsilon(1e-9));

    CHECK_THROWS_AS(count_pmf_n2(2.0, kPi, 1023), std::domain_error);
    CHECK_THROWS_AS(count_pmf_n2(2.0, kPi, 6), std::domain_error);
    CHECK_THROWS_AS(count_pmf_n2(2.0, 0.0, 1024), std::domain_error);
    CHECK_THROWS_AS(count_pmf_n2(2.0, kTwoPi + 0.1, 1024), std::domain_error);
    CHECK_THROWS_AS(count_pmf_n2(0.0, kPi, 1024), std::domain_error);
}

TEST_CASE("rejection sampler consumes n + 1 uniforms per proposal") {
    SplitMix64 used(7);
    const RejectionSample s = rejection_sample(2.0, 2, used);
    REQUIRE(s.angles.size() == 2);
    CHECK(s.proposals >= 1);
    for (const double a : s.angles) {
        CHECK(a >= 0.0);
        CHECK(a < kTwoPi);
    }
    SplitMix64 skipped(7);
    for (std::int64_t i = 0; i < 3 * s.proposals; ++i) {
        skipped.next_u64();
    }
    CHECK(used.next_u64() == skipped.next_u64());

    SplitMix64 rng(8);
    CHECK_THROWS_AS(rejection_sample(2.0, 4, rng), std::domain_error);
    CHECK_THROWS_AS(rejection_sample(9.0, 2, rng), std::domain_error);
    CHECK_THROWS_AS(rejection_sample(0.0, 2, rng), std::domain_error);
}

TEST_CASE("rejection counts match the quadrature pmf") {
    const int reps = 20000;
    SplitMix64 stream(909);
    std::int64_t proposals = 0;
    std::vector<double> observed(3, 0.0);
    for (int i = 0; i < reps; ++i) {
        const RejectionSample s = rejection_sample(2.0, 2, stream);
        proposals += s.proposals;
        int c = 0;
        for (const double a : s.angles) {
            if (a < kPi) {
                ++c;
            }
        }
        observed[static_cast<std::size_t>(c)] += 1.0;
    }
    // Uniform proposals against the pairwise bound accept half the time here.
    const double rate = static_cast<double>(reps) / static_cast<double>(proposals);
    CHECK(rate == doctest::Approx(0.5).epsilon(0.05));

    const CountPmf pmf = count_pmf_n2(2.0, kPi, 512);
    std::vector<double> expected(3);
    for (std::size_t k = 0; k < 3; ++k) {
        expected[k] = pmf.probs[k] * reps;
    }
    CHECK(chi_square_stat(observed, expected) < chi2_critical(2, 0.001));
}

TEST_CASE("three-point rejection sampler has the uniform mean count") {
    const int reps = 4000;
    SplitMix64 stream(5150);
    double mean = 0.0;
    for (int i = 0; i < reps; ++i) {
        const RejectionSample s = rejection_sample(2.0, 3, stream);
        for (const double a : s.angles) {
            if (a < kPi / 2.0) {
                mean += 1.0;
            }
        }
    }
    mean /= reps;
    // E N = 3 theta / (2 pi) = 3/4; the count is bounded by 3, so 5 sigma is
    // well inside +-0.07.
    CHECK(mean == doctest::Approx(0.75).epsilon(0.09));
}

} // TEST_SUITE
