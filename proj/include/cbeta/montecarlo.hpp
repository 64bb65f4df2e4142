#ifndef CBETA_MONTECARLO_HPP
#define CBETA_MONTECARLO_HPP

#include <atomic>
#include <complex>
#include <cstdint>
#include <functional>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "cbeta/rng.hpp"

namespace cbeta {

//! Monte Carlo run description.  Replica r always draws from the sub-seed
//! replica_seed(master_seed, r), so results are bit-identical for every value
//! of `parallelism` (0 picks the hardware thread count).
struct McConfig {
    double beta = 2.0;
    int n = 1;
    double theta = 0.0;
    std::int64_t replicas = 0;
    std::uint64_t master_seed = 0;
    int parallelism = 0;
};

//! Moment summary of one scalar estimator.  se_mean is the classical (equal
//! to leave-one-out jackknife) standard error of the mean; se_variance is the
//! batch-means standard error of the unbiased variance.
struct SummaryStats {
    std::int64_t count = 0;
    double mean = 0.0;
    double variance = 0.0;
    double se_mean = 0.0;
    double se_variance = 0.0;

    //! Stream-merge of two disjoint summaries (count/mean/variance combine
    //! exactly and associatively; the SE fields are recombined, with the
    //! cross-part mean-shift contribution to se_variance omitted).
    static SummaryStats merged(const SummaryStats& a, const SummaryStats& b);
};

//! Summary of an ordered sample: two-pass mean/variance, batch-means SE of
//! the variance over `batches` contiguous batches.
SummaryStats summarize(std::span<const double> samples, int batches = 100);

namespace detail {

int resolve_parallelism(int hint);

} // namespace detail

//! Evaluates fn(r, stream_r) for r = 0..replicas-1 and returns the results in
//! replica order.  Each result is a pure function of (master_seed, r), so the
//! output does not depend on the thread count or on scheduling.  An estimator
//! exception aborts the run and is rethrown as std::runtime_error with the
//! replica index attached.
template <class T, class Fn>
std::vector<T> run_replicas(const McConfig& cfg, Fn&& fn) {
    if (cfg.replicas < 0) {
        throw std::domain_error("run_replicas: replicas must be non-negative");
    }
    std::vector<T> out(static_cast<std::size_t>(cfg.replicas));

    std::atomic<std::int64_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    std::int64_t error_replica = -1;
    constexpr std::int64_t kChunk = 64;

    auto worker = [&]() {
        for (;;) {
            if (failed.load(std::memory_order_relaxed)) {
                return;
            }
            const std::int64_t lo = next.fetch_add(kChunk, std::memory_order_relaxed);
            if (lo >= cfg.replicas) {
                return;
            }
            const std::int64_t hi = std::min(cfg.replicas, lo + kChunk);
            for (std::int64_t r = lo; r < hi; ++r) {
                try {
                    SplitMix64 stream(replica_seed(cfg.master_seed, static_cast<std::uint64_t>(r)));
                    out[static_cast<std::size_t>(r)] = fn(static_cast<std::uint64_t>(r), stream);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error) {
                        first_error = std::current_exception();
                        error_replica = r;
                    }
                    failed.store(true, std::memory_order_relaxed);
                    return;
                }
            }
        }
    };

    const int threads = detail::resolve_parallelism(cfg.parallelism);
    if (threads <= 1 || cfg.replicas <= kChunk) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    if (first_error) {
        try {
            std::rethrow_exception(first_error);
        } catch (const std::exception& e) {
            throw std::runtime_error("replica " + std::to_string(error_replica) + ": " + e.what());
        }
    }
    return out;
}

//! run_replicas for a scalar estimator, reduced to a SummaryStats.
template <class Fn>
SummaryStats run_summary(const McConfig& cfg, Fn&& fn) {
    const std::vector<double> samples = run_replicas<double>(cfg, std::forward<Fn>(fn));
    return summarize(samples);
}

//! Empirical characteristic function of a sample at a grid of frequencies,
//! with per-frequency batch-means standard errors.
struct CharFnEstimate {
    std::vector<double> lambdas;
    std::vector<std::complex<double>> estimates;
    std::vector<double> ses;
};

CharFnEstimate empirical_char_fn(std::span<const double> samples,
                                 std::span<const double> lambdas, int batches = 100);

//! Predicted modulus of E exp(i lambda (psi_{n-1}(theta) - n theta)):
//! exp(-(4 lambda^2 / beta) log(2 + n theta)).  Requires lambda^2 <= beta/8.
double predicted_char_fn(double beta, int n, double theta, double lambda);

//! Predicted E exp(i lambda (N - n theta/(2 pi))):
//! exp(-lambda^2 log(2 + n theta) / (beta pi^2)) for
//! |lambda| <= 2 pi sqrt(beta/8).
double predicted_count_char_fn(double beta, int n, double theta, double lambda);

//! Standard normal CDF via erfc; absolute error well below 1e-10.
double gaussian_cdf(double x);

//! One-sample Kolmogorov-Smirnov distance against a reference CDF.
struct KsResult {
    double d_stat = 0.0;
    std::int64_t m = 0;
};

//! Exact KS statistic of the sample against `cdf` (standard normal by
//! default) via the sorted-sample formula
//! max_i max(i/m - F(x_(i)), F(x_(i)) - (i-1)/m).
KsResult ks_distance(std::vector<double> samples,
                     const std::function<double(double)>& cdf = gaussian_cdf);

} // namespace cbeta

#endif // CBETA_MONTECARLO_HPP
