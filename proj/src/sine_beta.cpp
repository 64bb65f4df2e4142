#include "cbeta/sine_beta.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cbeta/counting.hpp"
#include "cbeta/montecarlo.hpp"

namespace cbeta {

namespace {

void require_config(const SineBetaConfig& config) {
    if (!(config.beta > 0.0)) {
        throw std::domain_error("sine_beta: beta must be positive");
    }
    if (!(config.x > 0.0)) {
        throw std::domain_error("sine_beta: x must be positive");
    }
    if (config.n_approx < 1) {
        throw std::domain_error("sine_beta: n_approx must be at least 1");
    }
    if (config.x / config.n_approx > std::numbers::pi) {
        throw std::domain_error("sine_beta: need x / n_approx <= pi (n_approx too small)");
    }
}

} // namespace

int default_n_approx(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("default_n_approx: x must be positive");
    }
    const double scaled = std::ceil(100.0 * x);
    return scaled > 4096.0 ? static_cast<int>(scaled) : 4096;
}

std::int64_t sample_sine_count(const SineBetaConfig& config) {
    require_config(config);
    const double theta = config.x / config.n_approx;
    return draw_count_sample(config.beta, config.n_approx, theta, config.seed).count;
}

std::vector<std::int64_t> sample_sine_counts(const SineBetaConfig& config,
                                             int parallelism) {
    require_config(config);
    McConfig mc;
    mc.beta = config.beta;
    mc.n = config.n_approx;
    mc.theta = config.x / config.n_approx;
    mc.replicas = config.replicas;
    mc.master_seed = config.seed;
    mc.parallelism = parallelism;
    return run_replicas<std::int64_t>(mc, [&](std::uint64_t r, SplitMix64&) {
        return draw_count_sample(mc.beta, mc.n, mc.theta,
                                 replica_seed(mc.master_seed, r)).count;
    });
}

double predicted_sine_variance(double beta, double x) {
    if (!(beta > 0.0)) {
        throw std::domain_error("predicted_sine_variance: beta must be positive");
    }
    if (!(x > 0.0)) {
        throw std::domain_error("predicted_sine_variance: x must be positive");
    }
    const double pi = std::numbers::pi;
    return 2.0 * std::log(2.0 + x) / (beta * pi * pi);
}

double standardize_sine_count(std::int64_t count, double beta, double x) {
    if (!(beta > 0.0) || !(x > 0.0)) {
        throw std::domain_error("standardize_sine_count: beta and x must be positive");
    }
    const double pi = std::numbers::pi;
    const double scale = std::sqrt(pi * pi * beta / (2.0 * std::log(2.0 + x)));
    return (static_cast<double>(count) - x / (2.0 * pi)) * scale;
}

} // namespace cbeta
