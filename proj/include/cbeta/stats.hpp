#ifndef CBETA_STATS_HPP
#define CBETA_STATS_HPP

#include <span>
#include <vector>

namespace cbeta {

//! Mean of a sample; 0 for an empty sample.
double sample_mean(std::span<const double> x);

//! Unbiased sample variance; 0 for fewer than two points.
double sample_variance(std::span<const double> x);

//! Standard errors of the sample mean and of the unbiased sample variance,
//! estimated by splitting the sample into `batches` contiguous batches in
//! replica order: the SE of a statistic is the spread of its per-batch values
//! over sqrt(batches).  Falls back to fewer batches when the sample is short
//! (at least two points per batch).
struct BatchSe {
    double mean_se = 0.0;
    double var_se = 0.0;
};
BatchSe batch_means_se(std::span<const double> x, int batches = 100);

//! Inverse standard normal CDF (Acklam's rational approximation, relative
//! error below 1.2e-9).  Throws std::domain_error unless 0 < p < 1.
double normal_quantile(double p);

//! Upper critical value of the chi-square distribution with `dof` degrees of
//! freedom at tail probability `alpha` (Wilson-Hilferty approximation).
double chi2_critical(int dof, double alpha);

//! Pearson chi-square statistic sum (observed - expected)^2 / expected.
//! Throws std::invalid_argument on length mismatch or non-positive expected
//! counts.
double chi_square_stat(std::span<const double> observed, std::span<const double> expected);

//! Spearman rank correlation (average ranks on ties).
double spearman_rho(std::span<const double> x, std::span<const double> y);

//! One-sided test for a positive monotone trend of y in x: true when the
//! Spearman statistic rho sqrt(m - 1) exceeds the standard normal quantile at
//! 1 - alpha, i.e. when the growth trend is significant.
bool spearman_trend_significant(std::span<const double> x, std::span<const double> y,
                                double alpha = 0.05);

//! Two-sample Kolmogorov-Smirnov distance sup |F_a - F_b| (tie-aware).
double ks_two_sample(std::vector<double> a, std::vector<double> b);

//! Asymptotic two-sample KS critical value c(alpha) sqrt((m+n)/(mn)) with
//! c(alpha) = sqrt(-log(alpha/2)/2).
double ks_two_sample_critical(std::size_t m, std::size_t n, double alpha);

//! One-sample KS critical value c(alpha)/sqrt(m).
double ks_one_sample_critical(std::size_t m, double alpha);

} // namespace cbeta

#endif // CBETA_STATS_HPP
