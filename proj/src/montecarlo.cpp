#include "cbeta/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cbeta/stats.hpp"

namespace cbeta {

namespace detail {

int resolve_parallelism(int hint) {
    if (hint < 0) {
        throw std::domain_error("parallelism must be non-negative");
    }
    if (hint > 0) {
        return hint;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

} // namespace detail

SummaryStats SummaryStats::merged(const SummaryStats& a, const SummaryStats& b) {
    if (a.count == 0) {
        return b;
    }
    if (b.count == 0) {
        return a;
    }
    SummaryStats out;
    out.count = a.count + b.count;
    const double ca = static_cast<double>(a.count);
    const double cb = static_cast<double>(b.count);
    const double ct = ca + cb;
    const double delta = b.mean - a.mean;
    out.mean = a.mean + delta * cb / ct;
    // Chan et al. pairwise update of the centred sum of squares.
    const double m2 = (ca - 1.0) * a.variance + (cb - 1.0) * b.variance
                    + delta * delta * ca * cb / ct;
    out.variance = out.count > 1 ? m2 / (ct - 1.0) : 0.0;
    out.se_mean = out.count > 1 ? std::sqrt(out.variance / ct) : 0.0;
    const double dfa = ca - 1.0;
    const double dfb = cb - 1.0;
    if (out.count > 1) {
        out.se_variance = std::sqrt(dfa * dfa * a.se_variance * a.se_variance
                                    + dfb * dfb * b.se_variance * b.se_variance)
                        / (ct - 1.0);
    }
    return out;
}

SummaryStats summarize(std::span<const double> samples, int batches) {
    SummaryStats out;
    out.count = static_cast<std::int64_t>(samples.size());
    if (samples.empty()) {
        return out;
    }
    out.mean = sample_mean(samples);
    if (out.count == 1) {
        return out;
    }
    out.variance = sample_variance(samples);
    out.se_mean = std::sqrt(out.variance / static_cast<double>(out.count));
    out.se_variance = batch_means_se(samples, batches).var_se;
    return out;
}

CharFnEstimate empirical_char_fn(std::span<const double> samples,
                                 std::span<const double> lambdas, int batches) {
    if (samples.empty()) {
        throw std::domain_error("empirical_char_fn: empty sample");
    }
    if (batches < 2) {
        throw std::domain_error("empirical_char_fn: need at least 2 batches");
    }
    const std::size_t m = samples.size();
    std::size_t b = m / static_cast<std::size_t>(batches);
    std::size_t nb = static_cast<std::size_t>(batches);
    if (b < 2) {
        nb = std::max<std::size_t>(2, m / 2);
        b = m / nb;
    }

    CharFnEstimate out;
    out.lambdas.assign(lambdas.begin(), lambdas.end());
    out.estimates.reserve(lambdas.size());
    out.ses.reserve(lambdas.size());

    for (const double lambda : lambdas) {
        std::complex<double> total{0.0, 0.0};
        for (const double x : samples) {
            total += std::complex<double>(std::cos(lambda * x), std::sin(lambda * x));
        }
        out.estimates.push_back(total / static_cast<double>(m));

        // Batch means of the real and imaginary parts; the last batch absorbs
        // the remainder, matching batch_means_se.
        std::vector<double> re(nb), im(nb);
        for (std::size_t k = 0; k < nb; ++k) {
            const std::size_t lo = k * b;
            const std::size_t hi = (k + 1 == nb) ? m : lo + b;
            std::complex<double> s{0.0, 0.0};
            for (std::size_t j = lo; j < hi; ++j) {
                s += std::complex<double>(std::cos(lambda * samples[j]),
                                          std::sin(lambda * samples[j]));
            }
            re[k] = s.real() / static_cast<double>(hi - lo);
            im[k] = s.imag() / static_cast<double>(hi - lo);
        }
        const double var_b = sample_variance(re) + sample_variance(im);
        out.ses.push_back(std::sqrt(var_b / static_cast<double>(nb)));
    }
    return out;
}

double predicted_char_fn(double beta, int n, double theta, double lambda) {
    if (!(beta > 0.0)) {
        throw std::domain_error("predicted_char_fn: beta must be positive");
    }
    if (n < 1) {
        throw std::domain_error("predicted_char_fn: n must be at least 1");
    }
    if (!(theta > 0.0)) {
        throw std::domain_error("predicted_char_fn: theta must be positive");
    }
    if (lambda * lambda > beta / 8.0) {
        throw std::domain_error("predicted_char_fn: lambda^2 must not exceed beta/8");
    }
    return std::exp(-(4.0 * lambda * lambda / beta) * std::log(2.0 + n * theta));
}

double predicted_count_char_fn(double beta, int n, double theta, double lambda) {
    const double pi = std::numbers::pi;
    // Same validity window as the phase version after lambda -> lambda/(2 pi).
    return predicted_char_fn(beta, n, theta, lambda / (2.0 * pi));
}

double gaussian_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

KsResult ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) {
        throw std::domain_error("ks_distance: empty sample");
    }
    std::sort(samples.begin(), samples.end());
    const double m = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        const double up = static_cast<double>(i + 1) / m - f;
        const double down = f - static_cast<double>(i) / m;
        d = std::max(d, std::max(up, down));
    }
    return {d, static_cast<std::int64_t>(samples.size())};
}

} // namespace cbeta
