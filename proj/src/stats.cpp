#include "cbeta/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>

namespace cbeta {

double sample_mean(std::span<const double> x) {
    if (x.empty()) {
        return 0.0;
    }
    double s = 0.0;
    for (double v : x) {
        s += v;
    }
    return s / static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x) {
    const std::size_t m = x.size();
    if (m < 2) {
        return 0.0;
    }
    const double mu = sample_mean(x);
    double s2 = 0.0;
    for (double v : x) {
        const double d = v - mu;
        s2 += d * d;
    }
    return s2 / static_cast<double>(m - 1);
}

BatchSe batch_means_se(std::span<const double> x, int batches) {
    BatchSe out;
    const std::size_t m = x.size();
    if (m < 4 || batches < 2) {
        return out;
    }
    std::size_t b = static_cast<std::size_t>(batches);
    if (m / b < 2) {
        b = m / 2; // keep at least two points per batch
    }
    const std::size_t len = m / b;

    std::vector<double> bmean(b);
    std::vector<double> bvar(b);
    for (std::size_t i = 0; i < b; ++i) {
        // the final batch absorbs the remainder so every point is used
        const std::size_t lo = i * len;
        const std::size_t hi = (i + 1 == b) ? m : lo + len;
        const auto slice = x.subspan(lo, hi - lo);
        bmean[i] = sample_mean(slice);
        bvar[i] = sample_variance(slice);
    }
    const double nb = static_cast<double>(b);
    out.mean_se = std::sqrt(sample_variance(bmean) / nb);
    out.var_se = std::sqrt(sample_variance(bvar) / nb);
    return out;
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("normal_quantile: p must lie in (0, 1)");
    }
    // Acklam's rational approximation with the usual three regions.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;

    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - plow) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double chi2_critical(int dof, double alpha) {
    if (dof < 1) {
        throw std::domain_error("chi2_critical: dof must be positive");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::domain_error("chi2_critical: alpha must lie in (0, 1)");
    }
    // Wilson-Hilferty: (X/k)^(1/3) is approximately normal.
    const double k = static_cast<double>(dof);
    const double z = normal_quantile(1.0 - alpha);
    const double t = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
    return k * t * t * t;
}

double chi_square_stat(std::span<const double> observed, std::span<const double> expected) {
    if (observed.size() != expected.size()) {
        throw std::invalid_argument("chi_square_stat: length mismatch");
    }
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (!(expected[i] > 0.0)) {
            throw std::invalid_argument("chi_square_stat: expected counts must be positive");
        }
        const double d = observed[i] - expected[i];
        stat += d * d / expected[i];
    }
    return stat;
}

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
    const std::size_t m = v.size();
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&v](std::size_t i, std::size_t j) { return v[i] < v[j]; });

    std::vector<double> rank(m);
    std::size_t i = 0;
    while (i < m) {
        std::size_t j = i;
        while (j + 1 < m && v[idx[j + 1]] == v[idx[i]]) {
            ++j;
        }
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            rank[idx[k]] = avg;
        }
        i = j + 1;
    }
    return rank;
}

} // namespace

double spearman_rho(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("spearman_rho: need two samples of equal length >= 2");
    }
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const double mx = sample_mean(rx);
    const double my = sample_mean(ry);
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        const double dx = rx[i] - mx;
        const double dy = ry[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        return 0.0; // a constant margin carries no trend information
    }
    return sxy / std::sqrt(sxx * syy);
}

bool spearman_trend_significant(std::span<const double> x, std::span<const double> y,
                                double alpha) {
    const double rho = spearman_rho(x, y);
    const double z = rho * std::sqrt(static_cast<double>(x.size()) - 1.0);
    return z > normal_quantile(1.0 - alpha);
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("ks_two_sample: samples must be non-empty");
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());

    double d = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
        // advance past every point tied at the current value before comparing
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v) {
            ++i;
        }
        while (j < b.size() && b[j] == v) {
            ++j;
        }
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

namespace {

double ks_coefficient(double alpha) {
    return std::sqrt(-0.5 * std::log(alpha / 2.0));
}

} // namespace

double ks_two_sample_critical(std::size_t m, std::size_t n, double alpha) {
    if (m == 0 || n == 0) {
        throw std::domain_error("ks_two_sample_critical: sample sizes must be positive");
    }
    const double dm = static_cast<double>(m);
    const double dn = static_cast<double>(n);
    return ks_coefficient(alpha) * std::sqrt((dm + dn) / (dm * dn));
}

double ks_one_sample_critical(std::size_t m, double alpha) {
    if (m == 0) {
        throw std::domain_error("ks_one_sample_critical: sample size must be positive");
    }
    return ks_coefficient(alpha) / std::sqrt(static_cast<double>(m));
}

} // namespace cbeta
