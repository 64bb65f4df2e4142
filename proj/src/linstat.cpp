#include "cbeta/linstat.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cbeta {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kZeroMeanTol = 1e-8;

} // namespace

FourierSeries::FourierSeries(int max_index) : max_index_(max_index) {
    if (max_index < 1) {
        throw std::domain_error("FourierSeries: max_index must be at least 1");
    }
    coeffs_.assign(2 * static_cast<std::size_t>(max_index) + 1, {0.0, 0.0});
}

std::complex<double> FourierSeries::coeff(int j) const {
    if (j < -max_index_ || j > max_index_) {
        return {0.0, 0.0};
    }
    return coeffs_[static_cast<std::size_t>(j + max_index_)];
}

void FourierSeries::set_coeff(int j, std::complex<double> value) {
    if (j < -max_index_ || j > max_index_) {
        throw std::out_of_range("FourierSeries: index beyond max_index");
    }
    coeffs_[static_cast<std::size_t>(j + max_index_)] = value;
}

std::complex<double> fourier_coeff(const std::function<double(double)>& f, int j,
                                   int quad_nodes) {
    if (quad_nodes < 4 * std::abs(j) + 16) {
        throw std::domain_error("fourier_coeff: quad_nodes must be at least 4|j| + 16");
    }
    // Periodic trapezoid rule: equal weights, (1/2 pi) factor folds into the
    // node average.
    std::complex<double> sum{0.0, 0.0};
    for (int k = 0; k < quad_nodes; ++k) {
        const double x = kTwoPi * k / quad_nodes;
        sum += f(x) * std::complex<double>(std::cos(j * x), -std::sin(j * x));
    }
    return sum / static_cast<double>(quad_nodes);
}

FourierSeries fourier_series(const std::function<double(double)>& f, int max_index,
                             int quad_nodes) {
    FourierSeries out(max_index);
    if (quad_nodes < 4 * max_index + 16) {
        throw std::domain_error("fourier_series: quad_nodes must be at least 4 max_index + 16");
    }
    std::vector<double> values(static_cast<std::size_t>(quad_nodes));
    for (int k = 0; k < quad_nodes; ++k) {
        values[static_cast<std::size_t>(k)] = f(kTwoPi * k / quad_nodes);
    }
    for (int j = -max_index; j <= max_index; ++j) {
        std::complex<double> sum{0.0, 0.0};
        for (int k = 0; k < quad_nodes; ++k) {
            const double x = kTwoPi * k / quad_nodes;
            sum += values[static_cast<std::size_t>(k)]
                 * std::complex<double>(std::cos(j * x), -std::sin(j * x));
        }
        out.set_coeff(j, sum / static_cast<double>(quad_nodes));
    }
    return out;
}

double series_value(const FourierSeries& series, double x) {
    // Real part of the symmetric sum; imaginary parts cancel for real f.
    double v = series.coeff(0).real();
    for (int j = 1; j <= series.max_index(); ++j) {
        const std::complex<double> e{std::cos(j * x), std::sin(j * x)};
        v += 2.0 * (series.coeff(j) * e).real();
    }
    return v;
}

double series_derivative(const FourierSeries& series, double x) {
    double v = 0.0;
    for (int j = 1; j <= series.max_index(); ++j) {
        const std::complex<double> e{std::cos(j * x), std::sin(j * x)};
        v += 2.0 * (std::complex<double>(0.0, j) * series.coeff(j) * e).real();
    }
    return v;
}

double fejer_kernel(int n_terms, double x) {
    if (n_terms < 1) {
        throw std::domain_error("fejer_kernel: n_terms must be at least 1");
    }
    const double r = std::remainder(x, kTwoPi);
    if (r == 0.0) {
        return n_terms / kTwoPi;
    }
    const double t = std::sin(0.5 * n_terms * r) / (n_terms * std::sin(0.5 * r));
    return n_terms / kTwoPi * t * t;
}

FourierSeries fejer_smooth(const FourierSeries& series, int n_terms) {
    if (n_terms < 1) {
        throw std::domain_error("fejer_smooth: n_terms must be at least 1");
    }
    FourierSeries out(series.max_index());
    for (int j = -series.max_index(); j <= series.max_index(); ++j) {
        const double w = std::max(0.0, 1.0 - std::abs(j) / static_cast<double>(n_terms));
        out.set_coeff(j, w * series.coeff(j));
    }
    return out;
}

LimitVariance limit_variance(double beta, const FourierSeries& series) {
    if (!(beta > 0.0)) {
        throw std::domain_error("limit_variance: beta must be positive");
    }
    if (std::abs(series.coeff(0)) > kZeroMeanTol) {
        throw std::domain_error("limit_variance: series must have zero mean (a_0 = 0)");
    }
    double s = 0.0;
    for (int j = 1; j <= series.max_index(); ++j) {
        s += j * std::norm(series.coeff(j));
    }
    LimitVariance out;
    out.sigma_sq = 2.0 / beta * s;
    out.limit_var = 2.0 * out.sigma_sq;
    return out;
}

double linear_statistic(const EigenangleSet& angles,
                        const std::function<double(double)>& f) {
    double s = 0.0;
    for (const double a : angles.angles) {
        s += f(a);
    }
    return s;
}

} // namespace cbeta
