#ifndef CBETA_LINSTAT_HPP
#define CBETA_LINSTAT_HPP

#include <complex>
#include <functional>
#include <vector>

#include "cbeta/pruefer.hpp"

namespace cbeta {

//! Truncated Fourier expansion of a real 2 pi-periodic function: coefficients
//! a_j for |j| <= max_index, with a_{-j} = conj(a_j) when the function is
//! real-valued.
class FourierSeries {
  public:
    explicit FourierSeries(int max_index);

    int max_index() const { return max_index_; }

    //! a_j; indices beyond max_index read as zero.
    std::complex<double> coeff(int j) const;

    //! Sets a_j; throws std::out_of_range for |j| > max_index.
    void set_coeff(int j, std::complex<double> value);

  private:
    int max_index_;
    std::vector<std::complex<double>> coeffs_;
};

//! a_j = (1/2 pi) integral of f(x) e^{-i j x} via the periodic trapezoid rule
//! (spectrally accurate for smooth periodic f).  Requires
//! quad_nodes >= 4|j| + 16.
std::complex<double> fourier_coeff(const std::function<double(double)>& f, int j,
                                   int quad_nodes = 8192);

//! All coefficients up to max_index on a shared quadrature grid.
FourierSeries fourier_series(const std::function<double(double)>& f, int max_index,
                             int quad_nodes = 8192);

//! Value of the expansion at x.
double series_value(const FourierSeries& series, double x);

//! Derivative of the expansion at x.
double series_derivative(const FourierSeries& series, double x);

//! Fejér kernel K_N(x) = (N / 2 pi) (sin(N x / 2) / (N sin(x / 2)))^2, with
//! the removable singularity at x = 0 (mod 2 pi) evaluated as N / (2 pi).
double fejer_kernel(int n_terms, double x);

//! Coefficient-wise Fejér smoothing: a_j multiplied by max(0, 1 - |j|/N), so
//! indices |j| >= N vanish.
FourierSeries fejer_smooth(const FourierSeries& series, int n_terms);

//! Limit variance of the centered linear statistic:
//! sigma_sq = (2/beta) sum_{j>=1} j |a_j|^2 over the stored coefficients, and
//! the limiting Gaussian variance limit_var = 2 sigma_sq.  Requires a_0 = 0
//! (zero-mean test function).  Applied to a Fejér-smoothed series this yields
//! the smoothed variance sigma_N^2.
struct LimitVariance {
    double sigma_sq = 0.0;
    double limit_var = 0.0;
};

LimitVariance limit_variance(double beta, const FourierSeries& series);

//! The linear statistic itself: sum of f over the eigenangles.
double linear_statistic(const EigenangleSet& angles,
                        const std::function<double(double)>& f);

} // namespace cbeta

#endif // CBETA_LINSTAT_HPP
