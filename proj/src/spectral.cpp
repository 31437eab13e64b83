#include "nonlocal/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "nonlocal/errors.hpp"

namespace nonlocal {
namespace {

struct PlanPair {
    fftw_plan forward;
    fftw_plan backward;
};

// FFTW planning is not thread-safe; execution with new-array calls is.
const PlanPair& plans_for(std::size_t n) {
    static std::mutex mutex;
    static std::map<std::size_t, PlanPair> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<double> real(n);
    std::vector<Complex> spec(n / 2 + 1);
    auto* r = real.data();
    auto* c = reinterpret_cast<fftw_complex*>(spec.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p{fftw_plan_dft_r2c_1d(static_cast<int>(n), r, c, flags),
               fftw_plan_dft_c2r_1d(static_cast<int>(n), c, r, flags)};
    return cache.emplace(n, p).first->second;
}

void require_power_of_two(std::size_t n) {
    if (n < 4 || (n & (n - 1)) != 0) {
        throw LabError(ErrorKind::InvalidArgument, "transform length must be a power of two");
    }
}

}  // namespace

std::vector<Complex> forward_fft(std::span<const double> values) {
    const std::size_t n = values.size();
    require_power_of_two(n);
    std::vector<double> in(values.begin(), values.end());
    std::vector<Complex> out(n / 2 + 1);
    fftw_execute_dft_r2c(plans_for(n).forward, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

std::vector<double> inverse_fft(std::span<const Complex> coefficients, std::size_t n) {
    require_power_of_two(n);
    if (coefficients.size() != n / 2 + 1) {
        throw LabError(ErrorKind::GridMismatch, "coefficient count does not match length");
    }
    // c2r overwrites its input.
    std::vector<Complex> in(coefficients.begin(), coefficients.end());
    std::vector<double> out(n);
    fftw_execute_dft_c2r(plans_for(n).backward, reinterpret_cast<fftw_complex*>(in.data()), out.data());
    const double scale = 1.0 / static_cast<double>(n);
    for (double& v : out) v *= scale;
    return out;
}

std::vector<double> wavenumbers(const Grid1D& grid) {
    if (!grid.is_periodic()) throw LabError(ErrorKind::MethodDomainMismatch, "wavenumbers need a periodic grid");
    const std::size_t n = grid.size();
    std::vector<double> k(n / 2 + 1);
    for (std::size_t j = 0; j < k.size(); ++j) k[j] = std::numbers::pi * static_cast<double>(j) / grid.half_length();
    return k;
}

std::vector<double> apply_multiplier(const Grid1D& grid, std::span<const double> values,
                                     const std::function<Complex(double)>& multiplier) {
    if (values.size() != grid.size()) throw LabError(ErrorKind::GridMismatch, "sample count does not match grid");
    auto c = forward_fft(values);
    const auto k = wavenumbers(grid);
    for (std::size_t j = 0; j + 1 < c.size(); ++j) c[j] *= multiplier(k[j]);
    c.back() = 0.0;
    return inverse_fft(c, grid.size());
}

FourierSeries::FourierSeries(const Grid1D& grid, std::span<const double> values)
    : x0_(grid.node(0)), half_length_(grid.half_length()), k_(wavenumbers(grid)) {
    if (values.size() != grid.size()) throw LabError(ErrorKind::GridMismatch, "sample count does not match grid");
    c_ = forward_fft(values);
    const double n = static_cast<double>(grid.size());
    for (std::size_t j = 0; j < c_.size(); ++j) {
        // Interior modes appear twice (k and -k); the end modes once.
        const double factor = (j == 0 || j + 1 == c_.size()) ? 1.0 : 2.0;
        c_[j] *= factor / n;
    }
}

double FourierSeries::operator()(double x) const {
    const double t = x - x0_;
    // e^{i k_j t} by repeated multiplication, re-seeded every 64 modes.
    const Complex step = std::polar(1.0, k_.size() > 1 ? k_[1] * t : 0.0);
    Complex phase(1.0, 0.0);
    double total = 0.0;
    for (std::size_t j = 0; j < c_.size(); ++j) {
        if (j % 64 == 0) phase = std::polar(1.0, k_[j] * t);
        total += c_[j].real() * phase.real() - c_[j].imag() * phase.imag();
        phase *= step;
    }
    return total;
}

std::vector<double> FourierSeries::evaluate(std::span<const double> points, bool zero_outside) const {
    std::vector<double> out(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double x = points[i];
        out[i] = (zero_outside && std::abs(x) >= half_length_) ? 0.0 : (*this)(x);
    }
    return out;
}

}  // namespace nonlocal
