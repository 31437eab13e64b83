#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "nonlocal/grid.hpp"

namespace nonlocal {

using Complex = std::complex<double>;

// Unnormalized real-to-complex DFT, n/2 + 1 coefficients. n must be a power of two.
std::vector<Complex> forward_fft(std::span<const double> values);

// Inverse of forward_fft, including the 1/n normalization.
std::vector<double> inverse_fft(std::span<const Complex> coefficients, std::size_t n);

// Angular wavenumbers pi*j/L for j = 0..n/2 on a periodic grid.
std::vector<double> wavenumbers(const Grid1D& grid);

/**
 * Applies the Fourier multiplier m(k) to periodic samples (k >= 0 only; the
 * negative half follows from Hermitian symmetry, so m must satisfy
 * m(-k) = conj(m(k))). The Nyquist mode is dropped.
 */
std::vector<double> apply_multiplier(const Grid1D& grid, std::span<const double> values,
                                     const std::function<Complex(double)>& multiplier);

// Trigonometric interpolant of periodic samples, for evaluation off the grid.
class FourierSeries {
public:
    FourierSeries(const Grid1D& grid, std::span<const double> values);
    double operator()(double x) const;
    // Values at many points; zero outside [-L, L] when `zero_outside` is set.
    std::vector<double> evaluate(std::span<const double> points, bool zero_outside) const;

private:
    double x0_;
    double half_length_;
    std::vector<double> k_;
    std::vector<Complex> c_;
};

}  // namespace nonlocal
