#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "test_support.hpp"

#include "cbeta/montecarlo.hpp"
#include "cbeta/stats.hpp"

using namespace cbeta;

TEST_SUITE("stats") {

TEST_CASE("mean and unbiased variance") {
    const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
    CHECK(sample_mean(x) == doctest::Approx(2.5));
    CHECK(sample_variance(x) == doctest::Approx(5.0 / 3.0));
    CHECK(sample_mean(std::vector<double>{}) == 0.0);
    CHECK(sample_variance(std::vector<double>{7.0}) == 0.0);
}

TEST_CASE("batch-means standard errors") {
    const std::vector<double> flat(1000, 3.25);
    const BatchSe zero = batch_means_se(flat);
    CHECK(zero.mean_se == doctest::Approx(0.0));
    CHECK(zero.var_se == doctest::Approx(0.0));

    // For iid draws the batch-means SE of the mean estimates sd/sqrt(m).
    const std::vector<double> z = testsupport::normal_sample(20000, 5);
    const BatchSe se = batch_means_se(z);
    const double classical = std::sqrt(sample_variance(z) / 20000.0);
    CHECK(se.mean_se == doctest::Approx(classical).epsilon(0.35));
    CHECK(se.var_se > 0.0);

    // Short samples fall back to fewer batches instead of failing.
    const std::vector<double> tiny{1.0, 2.0, 3.0, 4.0, 5.0};
    CHECK_NOTHROW(batch_means_se(tiny));
}

TEST_CASE("normal quantile") {
    CHECK(std::abs(normal_quantile(0.5)) < 1e-12);
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963985).epsilon(1e-6));
    CHECK(normal_quantile(0.95) == doctest::Approx(1.6448536270).epsilon(1e-6));
    CHECK(normal_quantile(0.01) == doctest::Approx(-2.3263478740).epsilon(1e-6));
    for (const double p : {0.001, 0.1, 0.3, 0.77, 0.999}) {
        CHECK(gaussian_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-7));
    }
    CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
    CHECK_THROWS_AS(normal_quantile(1.0), std::domain_error);
}

TEST_CASE("chi-square critical values") {
    CHECK(chi2_critical(63, 0.01) == doctest::Approx(92.01).epsilon(0.005));
    CHECK(chi2_critical(10, 0.05) == doctest::Approx(18.307).epsilon(0.005));
    CHECK(chi2_critical(1, 0.05) == doctest::Approx(3.841).epsilon(0.04));
}

TEST_CASE("chi-square statistic") {
    const std::vector<double> obs{10.0, 20.0};
    const std::vector<double> expd{15.0, 15.0};
    CHECK(chi_square_stat(obs, expd) == doctest::Approx(10.0 / 3.0));
    CHECK_THROWS_AS(chi_square_stat(obs, std::vector<double>{15.0}), std::invalid_argument);
    CHECK_THROWS_AS(chi_square_stat(obs, std::vector<double>{15.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("spearman rank correlation") {
    const std::vector<double> x{1.0, 2.0, 3.0, 4.0, 5.0};
    const std::vector<double> up{2.0, 4.0, 5.0, 7.0, 11.0};
    const std::vector<double> down{5.0, 4.0, 3.0, 2.0, 1.0};
    CHECK(spearman_rho(x, up) == doctest::Approx(1.0));
    CHECK(spearman_rho(x, down) == doctest::Approx(-1.0));
    CHECK(spearman_rho(x, std::vector<double>(5, 1.0)) == doctest::Approx(0.0));

    std::vector<double> long_x(50);
    std::vector<double> long_y(50);
    for (std::size_t i = 0; i < long_x.size(); ++i) {
        long_x[i] = static_cast<double>(i);
        long_y[i] = static_cast<double>(i) * 0.5;
    }
    CHECK(spearman_trend_significant(long_x, long_y));
    CHECK_FALSE(spearman_trend_significant(long_x, std::vector<double>(50, 2.0)));
}

TEST_CASE("two-sample KS distance") {
    const std::vector<double> a{1.0, 2.0, 3.0, 4.0};
    CHECK(ks_two_sample(a, a) == doctest::Approx(0.0));
    CHECK(ks_two_sample(std::vector<double>{0.0, 1.0}, std::vector<double>{2.0, 3.0})
          == doctest::Approx(1.0));
    // Ties contribute through the average step on both sides.
    CHECK(ks_two_sample(std::vector<double>{1.0, 1.0, 2.0},
                        std::vector<double>{1.0, 2.0, 2.0})
          == doctest::Approx(1.0 / 3.0));

    const std::vector<double> za = testsupport::normal_sample(4000, 31);
    const std::vector<double> zb = testsupport::normal_sample(4000, 32);
    CHECK(ks_two_sample(za, zb) < ks_two_sample_critical(4000, 4000, 0.001));
}

TEST_CASE("KS critical values") {
    const double c = std::sqrt(-std::log(0.005) / 2.0);
    CHECK(ks_two_sample_critical(100, 400, 0.01)
          == doctest::Approx(c * std::sqrt(500.0 / 40000.0)).epsilon(1e-12));
    CHECK(ks_one_sample_critical(100, 0.01) == doctest::Approx(c / 10.0).epsilon(1e-12));
    CHECK(ks_one_sample_critical(100, 0.01) == doctest::Approx(0.16276).epsilon(1e-4));
}

} // TEST_SUITE
