#include "nonlocal/operators.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "nonlocal/errors.hpp"
#include "nonlocal/quadrature.hpp"
#include "nonlocal/spectral.hpp"

namespace nonlocal {
namespace {

constexpr double kPi = std::numbers::pi;

Parity flipped(Parity p) {
    if (p == Parity::even) return Parity::odd;
    if (p == Parity::odd) return Parity::even;
    return Parity::none;
}

void require_periodic(const SampledFunction& f, const char* what) {
    if (!f.grid().is_periodic()) throw LabError(ErrorKind::MethodDomainMismatch, what);
}

SampledFunction with_parity(const SampledFunction& f, std::vector<double> v, Parity parity) {
    enforce_parity(f.grid(), v, parity);
    return f.with_values(std::move(v), parity);
}

SampledFunction hilbert_spectral(const SampledFunction& f) {
    require_periodic(f, "spectral Hilbert transform needs a periodic grid");
    auto v = apply_multiplier(f.grid(), f.values(), [](double k) { return k > 0.0 ? Complex(0.0, -1.0) : Complex(0.0); });
    return with_parity(f, std::move(v), flipped(f.parity()));
}

// (2x/pi) int_0^inf (g(y)-g(x))/(x^2-y^2) dy for even g on a graded grid.
SampledFunction hilbert_graded_even(const SampledFunction& f) {
    const Grid1D& grid = f.grid();
    const auto x = grid.nodes();
    const std::size_t n = x.size();
    const double L = grid.half_length();
    const auto inc = origin_increment(f);
    const auto d = fd_derivative(f);
    std::vector<double> out(n), integrand(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i];
        for (std::size_t j = 0; j < n; ++j) {
            integrand[j] = j == i ? -d[i] / (2.0 * xi) : (inc[j] - inc[i]) / ((xi - x[j]) * (xi + x[j]));
        }
        double total = integrate_samples(grid, integrand, 0.0, L).value;
        // Beyond the grid g is taken to stay at its last sampled value.
        const double jump = f[i] - f[n - 1];
        if (jump != 0.0 && xi < L) total += jump / (2.0 * xi) * std::log((L + xi) / (L - xi));
        out[i] = 2.0 * xi / kPi * total;
    }
    return f.with_values(std::move(out), Parity::odd);
}

// int_0^L log|(x-y)/(x+y)| dy
double log_kernel_mass(double x, double L) {
    const double a = L - x;
    const double left = a == 0.0 ? 0.0 : a * std::log(std::abs(a));
    return left - (L + x) * std::log(L + x) + 2.0 * x * std::log(x);
}

SampledFunction hilbert_logkernel(const SampledFunction& f) {
    const Grid1D& grid = f.grid();
    const auto x = grid.nodes();
    const std::size_t n = x.size();
    const double L = grid.half_length();
    const auto d = fd_derivative(f);
    std::vector<double> out(n), integrand(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i];
        for (std::size_t j = 0; j < n; ++j) {
            integrand[j] = j == i ? 0.0 : std::log(std::abs((xi - x[j]) / (xi + x[j]))) * (d[j] - d[i]);
        }
        const double rest = integrate_samples(grid, integrand, 0.0, L).value;
        out[i] = (d[i] * log_kernel_mass(xi, L) + rest) / kPi;
    }
    return f.with_values(std::move(out), Parity::odd);
}

}  // namespace

std::vector<double> hilbert_pv_at(const SampledFunction& f, std::span<const std::size_t> indices) {
    require_periodic(f, "whole-line PV quadrature needs a uniform grid");
    const auto x = f.grid().nodes();
    const double h = f.grid().spacing();
    const auto d = fd_derivative(f);
    std::vector<double> out;
    out.reserve(indices.size());
    for (std::size_t i : indices) {
        double total = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (j != i) total += f[j] / (x[i] - x[j]);
        }
        out.push_back(h * (total - d[i]) / kPi);
    }
    return out;
}

SampledFunction hilbert_transform(const SampledFunction& f, HilbertMethod method) {
    switch (method) {
        case HilbertMethod::spectral: return hilbert_spectral(f);
        case HilbertMethod::pv_quadrature: {
            if (!f.grid().is_periodic()) {
                if (f.parity() != Parity::even) {
                    throw LabError(ErrorKind::MethodDomainMismatch, "half-line PV quadrature needs an even function");
                }
                return hilbert_graded_even(f);
            }
            std::vector<std::size_t> all(f.size());
            for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
            return with_parity(f, hilbert_pv_at(f, all), flipped(f.parity()));
        }
        case HilbertMethod::logkernel_even:
            if (f.grid().is_periodic() || f.parity() != Parity::even) {
                throw LabError(ErrorKind::MethodDomainMismatch, "log-kernel path needs an even function on a half-line grid");
            }
            return hilbert_logkernel(f);
    }
    throw LabError(ErrorKind::InvalidArgument, "unknown Hilbert method");
}

SampledFunction hilbert_zero_padded(const SampledFunction& f, std::size_t pad) {
    require_periodic(f, "zero padding needs a periodic grid");
    const std::size_t n = f.size();
    const Grid1D big = Grid1D::periodic(n * pad, f.grid().half_length() * static_cast<double>(pad));
    const std::size_t offset = (pad - 1) * n / 2;
    std::vector<double> v(n * pad, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[offset + i] = f[i];
    auto hv = apply_multiplier(big, v, [](double k) { return k > 0.0 ? Complex(0.0, -1.0) : Complex(0.0); });
    std::vector<double> out(hv.begin() + static_cast<std::ptrdiff_t>(offset),
                            hv.begin() + static_cast<std::ptrdiff_t>(offset + n));
    return with_parity(f, std::move(out), flipped(f.parity()));
}

namespace {

void check_gamma(double gamma, bool allow_two) {
    if (!(gamma > 0.0) || gamma > 2.0 || (!allow_two && gamma == 2.0)) {
        throw LabError(ErrorKind::GammaOutOfRange, "gamma must lie in (0, 2]");
    }
}

// sum_n |t + 2nL|^(-1-gamma), images beyond |n| = M summed as integrals.
double periodized_kernel(double t, double L, double gamma) {
    constexpr int M = 64;
    double total = std::pow(t, -1.0 - gamma);
    for (int m = 1; m <= M; ++m) {
        total += std::pow(2.0 * m * L + t, -1.0 - gamma) + std::pow(2.0 * m * L - t, -1.0 - gamma);
    }
    const double edge = 2.0 * L * (M + 0.5);
    total += (std::pow(edge + t, -gamma) + std::pow(edge - t, -gamma)) / (2.0 * L * gamma);
    return total;
}

std::map<double, SingularConstant>& calibration_cache() {
    static std::map<double, SingularConstant> cache;
    return cache;
}
std::mutex& calibration_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

std::vector<double> singular_integral(const SampledFunction& f, double gamma) {
    check_gamma(gamma, false);
    require_periodic(f, "singular integral needs a periodic grid");
    const std::size_t n = f.size();
    const std::size_t half = n / 2;
    const double h = f.grid().spacing();
    const double L = f.grid().half_length();
    std::vector<double> kernel(half + 1, 0.0);
    for (std::size_t m = 1; m <= half; ++m) {
        kernel[m] = periodized_kernel(static_cast<double>(m) * h, L, gamma);
        if (m == half) kernel[m] *= 0.5;  // t = L is the trapezoid end point
    }
    const auto second = apply_multiplier(f.grid(), f.values(), [](double k) { return Complex(-k * k); });
    // Generalized Euler-Maclaurin correction for the t^(1-gamma) behaviour at t = 0.
    const double correction = boost::math::zeta(gamma - 1.0) * std::pow(h, 2.0 - gamma);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double total = 0.0;
        for (std::size_t m = 1; m <= half; ++m) {
            total += (2.0 * f[i] - f[(i + m) % n] - f[(i + n - m) % n]) * kernel[m];
        }
        out[i] = h * total + correction * second[i];
    }
    return out;
}

SingularConstant calibrate_singular_constant(double gamma, std::size_t n, double half_length) {
    check_gamma(gamma, false);
    auto grid = share(Grid1D::periodic(n, half_length));
    auto gauss = SampledFunction::sample(grid, [](double x) { return std::exp(-x * x); }, Parity::even);
    const auto spec = fractional_laplacian(gauss, gamma, LaplacianMethod::spectral);
    const auto raw = singular_integral(gauss, gamma);
    const double h = grid->spacing();
    const std::size_t mid = grid->origin_index();
    double su = 0.0, uu = 0.0, ss = 0.0;
    std::vector<std::size_t> picks;
    for (int s = 0; s < 100; ++s) {
        const double xs = -6.0 + 12.0 * s / 99.0;
        const auto i = static_cast<std::size_t>(static_cast<long>(mid) + std::lround(xs / h));
        picks.push_back(i);
        su += spec[i] * raw[i];
        uu += raw[i] * raw[i];
        ss += spec[i] * spec[i];
    }
    SingularConstant c;
    c.gamma = gamma;
    c.value = su / uu;
    double res = 0.0;
    for (std::size_t i : picks) res += std::pow(spec[i] - c.value * raw[i], 2);
    c.calibration_residual = std::sqrt(res / ss);
    if (!(c.value > 0.0) || c.calibration_residual > 1e-3) {
        throw LabError(ErrorKind::CalibrationFailed,
                       "calibration residual " + std::to_string(c.calibration_residual));
    }
    return c;
}

SampledFunction fractional_laplacian(const SampledFunction& f, double gamma, LaplacianMethod method) {
    check_gamma(gamma, method == LaplacianMethod::spectral);
    require_periodic(f, "fractional Laplacian needs a periodic grid");
    if (method == LaplacianMethod::spectral) {
        auto v = apply_multiplier(f.grid(), f.values(), [gamma](double k) { return Complex(std::pow(k, gamma)); });
        return with_parity(f, std::move(v), f.parity());
    }
    SingularConstant c;
    {
        std::lock_guard lock(calibration_mutex());
        auto& cache = calibration_cache();
        auto it = cache.find(gamma);
        if (it == cache.end()) it = cache.emplace(gamma, calibrate_singular_constant(gamma)).first;
        c = it->second;
    }
    auto v = singular_integral(f, gamma);
    for (double& x : v) x *= c.value;
    return with_parity(f, std::move(v), f.parity());
}

SampledFunction drift_velocity(const SampledFunction& f, double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw LabError(ErrorKind::AlphaOutOfRange, "alpha must lie in (0, 2)");
    require_periodic(f, "drift operator needs a periodic grid");
    if (alpha == 1.0) {
        auto h = hilbert_spectral(f);
        std::vector<double> v(h.values().begin(), h.values().end());
        for (double& x : v) x = -x;
        return f.with_values(std::move(v), h.parity());
    }
    auto v = apply_multiplier(f.grid(), f.values(),
                              [alpha](double k) { return k > 0.0 ? Complex(0.0, std::pow(k, 1.0 - alpha)) : Complex(0.0); });
    return with_parity(f, std::move(v), flipped(f.parity()));
}

SampledFunction apply_operator(const OperatorSpec& spec, const SampledFunction& f) {
    switch (spec.kind) {
        case OperatorKind::hilbert: {
            auto h = hilbert_spectral(f);
            if (spec.sign == SignConvention::plus_hilbert) return h;
            std::vector<double> v(h.values().begin(), h.values().end());
            for (double& x : v) x = -x;
            return f.with_values(std::move(v), h.parity());
        }
        case OperatorKind::fractional_laplacian: return fractional_laplacian(f, spec.gamma);
        case OperatorKind::drift: return drift_velocity(f, spec.alpha);
    }
    throw LabError(ErrorKind::InvalidArgument, "unknown operator");
}

namespace {

void check_alpha_kernel(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0) || alpha == 1.0) {
        throw LabError(ErrorKind::AlphaOutOfRange, "kernel defined for alpha in (0,1) or (1,2)");
    }
}

// h with the signed difference x - y supplied separately (exact near the diagonal).
double kernel_with_offset(double x, double y, double diff, double alpha) {
    const double dist = std::abs(diff);
    const double sgn = diff > 0.0 ? 1.0 : -1.0;
    if (alpha < 1.0) {
        return -(1.0 - alpha) * (sgn * std::pow(dist, alpha - 2.0) + std::pow(x + y, alpha - 2.0));
    }
    const double eps = alpha - 1.0;
    return -(sgn * std::pow(dist, eps - 1.0) + std::pow(x + y, eps - 1.0));
}

// |x - y| * h, finite as y -> x.
double kernel_times_distance(double x, double y, double diff, double alpha) {
    const double dist = std::abs(diff);
    const double sgn = diff > 0.0 ? 1.0 : -1.0;
    if (alpha < 1.0) {
        return -(1.0 - alpha) * (sgn * std::pow(dist, alpha - 1.0) + dist * std::pow(x + y, alpha - 2.0));
    }
    const double eps = alpha - 1.0;
    return -(sgn * std::pow(dist, eps) + dist * std::pow(x + y, eps - 1.0));
}

}  // namespace

double alpha_kernel_h(double x, double y, double alpha) {
    check_alpha_kernel(alpha);
    if (!(x > 0.0 && y > 0.0)) throw LabError(ErrorKind::DomainError, "kernel needs x, y > 0");
    if (x == y) throw LabError(ErrorKind::DiagonalSingularity, "kernel is singular at x = y");
    return kernel_with_offset(x, y, x - y, alpha);
}

double alpha_kernel_constant(double alpha) {
    check_alpha_kernel(alpha);
    if (alpha < 1.0) return 1.0 / (2.0 * std::tgamma(alpha) * std::cos(kPi * alpha / 2.0));
    const double eps = alpha - 1.0;
    return 1.0 / (2.0 * std::tgamma(eps) * std::sin(kPi * eps / 2.0));
}

double drift_by_kernel(const std::function<double(double)>& g, const std::function<double(double)>& dg,
                       double x, double alpha) {
    check_alpha_kernel(alpha);
    if (!(x > 0.0)) throw LabError(ErrorKind::DomainError, "kernel quadrature needs x > 0");
    const double gx = g(x);
    const double small = 1e-4 * std::max(1.0, x);
    // Integrand at y = x + s*d, d > 0.
    auto piece = [&](double d, double s) {
        if (d <= 0.0) return 0.0;
        const double y = x + s * d;
        if (d < small) return kernel_times_distance(x, y, -s * d, alpha) * dg(x + 0.5 * s * d) * s;
        return kernel_with_offset(x, y, -s * d, alpha) * (g(y) - gx);
    };
    boost::math::quadrature::tanh_sinh<double> ts;
    boost::math::quadrature::exp_sinh<double> es;
    const double left = ts.integrate([&](double d) { return piece(d, -1.0); }, 0.0, x);
    const double near = ts.integrate([&](double d) { return piece(d, 1.0); }, 0.0, 1.0);
    // Beyond y = x + 1 split off g(x) * int h dy, which has a closed form but
    // decays too slowly for the quadrature.
    const double far_g = es.integrate([&](double d) { return kernel_with_offset(x, x + d, -d, alpha) * g(x + d); }, 1.0,
                                      std::numeric_limits<double>::infinity());
    const double far_mass = alpha < 1.0 ? 1.0 - std::pow(2.0 * x + 1.0, alpha - 1.0)
                                        : (std::pow(2.0 * x + 1.0, alpha - 1.0) - 1.0) / (alpha - 1.0);
    const double far = far_g - gx * far_mass;
    return alpha_kernel_constant(alpha) * (left + near + far);
}

}  // namespace nonlocal
