#include "nonlocal/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "nonlocal/errors.hpp"

namespace nonlocal {

double WeightSpec::operator()(double x) const {
    switch (family) {
        case WeightFamily::power: return std::pow(x, -exponent);
        case WeightFamily::power_exp: return std::pow(x, -exponent) * std::exp(-x);
        case WeightFamily::exp_over_x: return std::exp(-x) / x;
    }
    return 0.0;
}

std::string WeightSpec::describe() const {
    std::ostringstream os;
    switch (family) {
        case WeightFamily::power: os << "x^-" << exponent; break;
        case WeightFamily::power_exp: os << "x^-" << exponent << "*exp(-x)"; break;
        case WeightFamily::exp_over_x: os << "exp(-x)/x"; break;
    }
    return os.str();
}

namespace {

struct Point {
    double x;
    double y;
};

struct EndModel {
    double value = 0.0;
    double error = 0.0;
};

bool negligible(double v, double scale) { return std::abs(v) <= 1e-10 * scale; }

// int_lower^{p0.x} of c*x^k through p0, p1 (p0.x < p1.x); p2 checks the fit.
EndModel head_model(Point p0, Point p1, Point p2, double lower, double scale) {
    if (lower >= p0.x) return {};
    if (p0.y == 0.0) return {};
    if (p1.y == 0.0 || (p0.y > 0.0) != (p1.y > 0.0)) {
        const double v = 0.5 * p0.y * (p0.x - lower);
        return {v, std::abs(v)};
    }
    const double k = std::log(p1.y / p0.y) / std::log(p1.x / p0.x);
    const double ratio = lower / p0.x;
    if (k <= -1.0 + 1e-9 && lower == 0.0) {
        // A non-integrable fit is only trusted if the next pair of nodes agrees.
        const bool same_sign = p2.y != 0.0 && (p2.y > 0.0) == (p1.y > 0.0);
        const double k2 = same_sign ? std::log(p2.y / p1.y) / std::log(p2.x / p1.x) : 0.0;
        if (!same_sign || std::abs(k2 - k) > 0.1) {
            const double v = 0.5 * p0.y * p0.x;
            return {v, std::abs(v)};
        }
    }
    if (k <= -1.0 + 1e-9) {
        if (lower > 0.0) {
            const double v = std::abs(k + 1.0) < 1e-9 ? p0.y * p0.x * -std::log(ratio)
                                                      : p0.y * p0.x / (k + 1.0) * (1.0 - std::pow(ratio, k + 1.0));
            return {v, 0.0};
        }
        if (negligible(p0.y * p0.x, scale)) return {0.0, std::abs(p0.y * p0.x)};
        throw LabError(ErrorKind::NonIntegrable,
                       "integrand behaves like x^" + std::to_string(k) + " at the origin");
    }
    const double v = p0.y * p0.x / (k + 1.0) * (1.0 - std::pow(ratio, k + 1.0));
    return {v, 0.0};
}

// int_{pl.x}^inf of c*x^-m through pm (second to last) and pl (last).
EndModel tail_model(Point pm, Point pl, double scale) {
    if (pl.y == 0.0) return {};
    if (pm.y == 0.0 || (pm.y > 0.0) != (pl.y > 0.0)) return {0.0, std::abs(pl.y * pl.x)};
    const double m = -std::log(pl.y / pm.y) / std::log(pl.x / pm.x);
    if (m <= 1.0 + 1e-9) {
        if (negligible(pl.y * pl.x, scale)) return {0.0, std::abs(pl.y * pl.x)};
        throw LabError(ErrorKind::NonIntegrable,
                       "integrand decays like x^-" + std::to_string(m) + " at infinity");
    }
    return {pl.y * pl.x / (m - 1.0), 0.0};
}

// Trapezoid of the piecewise-linear interpolant (in variable s) of Y over [a, b].
double clipped_trapezoid(std::span<const double> s, std::span<const double> Y, double a, double b) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const double s0 = std::max(s[i], a);
        const double s1 = std::min(s[i + 1], b);
        if (s1 <= s0) continue;
        const double slope = (Y[i + 1] - Y[i]) / (s[i + 1] - s[i]);
        const double y0 = Y[i] + slope * (s0 - s[i]);
        const double y1 = Y[i] + slope * (s1 - s[i]);
        total += 0.5 * (s1 - s0) * (y0 + y1);
    }
    return total;
}

struct Level {
    double value = 0.0;
    double model_error = 0.0;
    double scale = 0.0;
};

Level graded_level(const Grid1D& grid, std::span<const double> y, double lower, double upper,
                   std::size_t stride) {
    const auto x = grid.nodes();
    const std::size_t n = x.size();
    std::vector<double> u, Y, xs, ys;
    for (std::size_t k = (n - 1) % stride; k < n; k += stride) {
        xs.push_back(x[k]);
        ys.push_back(y[k]);
        u.push_back(std::log(x[k]));
        Y.push_back(y[k] * x[k]);
    }
    Level level;
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        level.scale += 0.5 * (u[i + 1] - u[i]) * (std::abs(Y[i]) + std::abs(Y[i + 1]));
    }
    const double lo = std::max(lower, xs.front());
    const double hi = std::min(upper, xs.back());
    if (hi > lo) level.value = clipped_trapezoid(u, Y, std::log(lo), std::log(hi));
    const double floor_scale = std::max(level.scale, std::numeric_limits<double>::min());
    if (lower < xs.front()) {
        const double top = std::min(upper, xs.front());
        EndModel head = head_model({xs[0], ys[0]}, {xs[1], ys[1]}, {xs[2], ys[2]}, lower, floor_scale);
        if (top < xs.front()) {
            // Whole range sits inside the first cell.
            const EndModel upper_part = head_model({xs[0], ys[0]}, {xs[1], ys[1]}, {xs[2], ys[2]}, top, floor_scale);
            head.value -= upper_part.value;
        }
        level.value += head.value;
        level.model_error += head.error;
    }
    if (upper > xs.back()) {
        if (std::isinf(upper)) {
            const std::size_t m = xs.size();
            const EndModel tail = tail_model({xs[m - 2], ys[m - 2]}, {xs[m - 1], ys[m - 1]}, floor_scale);
            level.value += tail.value;
            level.model_error += tail.error;
        } else {
            throw LabError(ErrorKind::DomainError, "finite upper limit beyond the grid");
        }
    }
    return level;
}

Level periodic_level(const Grid1D& grid, std::span<const double> y, double lower, double upper,
                     std::size_t stride) {
    const auto x = grid.nodes();
    const std::size_t n = x.size();
    std::vector<double> s, Y;
    for (std::size_t j = 0; j < n; j += stride) {
        s.push_back(x[j]);
        Y.push_back(y[j]);
    }
    s.push_back(grid.half_length());  // periodic image of x_0
    Y.push_back(y[0]);
    Level level;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        level.scale += 0.5 * (s[i + 1] - s[i]) * (std::abs(Y[i]) + std::abs(Y[i + 1]));
    }
    const double lo = std::max(lower, -grid.half_length());
    const double hi = std::min(upper, grid.half_length());
    if (hi > lo) level.value = clipped_trapezoid(s, Y, lo, hi);
    return level;
}

}  // namespace

QuadResult integrate_samples(const Grid1D& grid, std::span<const double> integrand, double lower,
                             double upper) {
    if (integrand.size() != grid.size()) {
        throw LabError(ErrorKind::GridMismatch, "integrand length does not match grid");
    }
    if (!(lower < upper)) throw LabError(ErrorKind::DomainError, "need lower < upper");
    if (!grid.is_periodic() && lower < 0.0) {
        throw LabError(ErrorKind::DomainError, "half-line grid integrates over x >= 0 only");
    }
    const bool graded = !grid.is_periodic();
    auto level = [&](std::size_t stride) {
        return graded ? graded_level(grid, integrand, lower, upper, stride)
                      : periodic_level(grid, integrand, lower, upper, stride);
    };
    const Level t1 = level(1);
    const Level t2 = level(2);
    const Level t4 = level(4);
    const double r1 = t1.value + (t1.value - t2.value) / 3.0;
    const double r2 = t2.value + (t2.value - t4.value) / 3.0;
    QuadResult result;
    result.value = r1 + (r1 - r2) / 15.0;
    result.error = std::abs(r1 - r2) + t1.model_error;
    const double diff = std::abs(t1.value - t2.value);
    const double reference = std::max(std::abs(t1.value), 1e-8 * t1.scale);
    if (diff > 5e-2 * reference && diff > 1e-13 * t1.scale) {
        throw LabError(ErrorKind::NonIntegrable, "fine and coarse quadratures disagree");
    }
    return result;
}

QuadResult weighted_integral(const SampledFunction& f, const WeightSpec& w, double lower,
                             double upper) {
    const auto x = f.grid().nodes();
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        // The weight is singular at 0; f(0) = 0 is the caller's obligation.
        y[i] = f[i] == 0.0 ? 0.0 : f[i] * w(std::abs(x[i]));
    }
    const double order = w.singularity_order();
    if (f.grid().is_periodic() && order > 0.0) {
        const std::size_t mid = f.grid().origin_index();
        if (f[mid] != 0.0) throw LabError(ErrorKind::NonIntegrable, "singular weight against f(0) != 0");
        if (order > 2.0) throw LabError(ErrorKind::NonIntegrable, "weight too singular at the origin");
        // Limit at the origin assuming f ~ x^2 there.
        y[mid] = order == 2.0 ? 0.5 * (y[mid - 1] + y[mid + 1]) : 0.0;
    }
    return integrate_samples(f.grid(), y, lower, upper);
}

namespace {

double lagrange_eval(const std::array<double, 4>& a, const std::array<double, 4>& v, double t) {
    double total = 0.0;
    for (int i = 0; i < 4; ++i) {
        double basis = 1.0;
        for (int j = 0; j < 4; ++j) {
            if (j != i) basis *= (t - a[j]) / (a[i] - a[j]);
        }
        total += basis * v[i];
    }
    return total;
}

// Integral of f over [x_k, x_{k+1}] by the cubic through four nearby nodes.
double cubic_cell(std::span<const double> x, std::span<const double> f, std::size_t k) {
    const std::size_t n = x.size();
    std::size_t start = k >= 1 ? k - 1 : 0;
    if (start + 3 >= n) start = n - 4;
    std::array<double, 4> a{}, v{};
    for (int i = 0; i < 4; ++i) {
        a[i] = x[start + i];
        v[i] = f[start + i];
    }
    const double mid = 0.5 * (x[k] + x[k + 1]);
    const double half = 0.5 * (x[k + 1] - x[k]);
    const double g = half / std::sqrt(3.0);
    const double cubic = half * (lagrange_eval(a, v, mid - g) + lagrange_eval(a, v, mid + g));
    const double trapezoid = half * (f[k] + f[k + 1]);
    // Keep accumulation monotone for nonnegative data.
    if (f[k] >= 0.0 && f[k + 1] >= 0.0 && cubic < 0.0) return trapezoid;
    if (f[k] <= 0.0 && f[k + 1] <= 0.0 && cubic > 0.0) return trapezoid;
    return cubic;
}

}  // namespace

SampledFunction cumulative_primitive(const SampledFunction& f) {
    const auto x = f.grid().nodes();
    const auto v = f.values();
    const std::size_t n = x.size();
    std::vector<double> F(n, 0.0);
    if (f.grid().is_periodic()) {
        const std::size_t mid = f.grid().origin_index();
        for (std::size_t j = mid + 1; j < n; ++j) F[j] = F[j - 1] + cubic_cell(x, v, j - 1);
        for (std::size_t j = mid; j-- > 0;) F[j] = F[j + 1] - cubic_cell(x, v, j);
    } else {
        double scale = 0.0;
        for (double s : v) scale = std::max(scale, std::abs(s));
        const EndModel head = head_model({x[0], v[0]}, {x[1], v[1]}, {x[2], v[2]}, 0.0, std::max(scale, 1e-300));
        F[0] = head.value;
        for (std::size_t k = 1; k < n; ++k) F[k] = F[k - 1] + cubic_cell(x, v, k - 1);
    }
    Parity parity = Parity::none;
    if (f.parity() == Parity::even) parity = Parity::odd;
    if (f.parity() == Parity::odd) parity = Parity::even;
    bool nonnegative = std::all_of(v.begin(), v.end(), [](double s) { return s >= 0.0; });
    if (f.grid().is_periodic() && parity == Parity::odd) {
        // Restore exact antisymmetry lost to summation order.
        const std::size_t mid = f.grid().origin_index();
        for (std::size_t j = 1; j < mid; ++j) F[j] = -F[n - j];
        F[0] = 0.0;
    } else if (f.grid().is_periodic() && parity == Parity::even) {
        const std::size_t mid = f.grid().origin_index();
        for (std::size_t j = 1; j < mid; ++j) F[j] = F[n - j];
    }
    return f.with_values(std::move(F), parity,
                         nonnegative && !f.grid().is_periodic() ? Monotonicity::nondecreasing
                                                                : Monotonicity::unknown);
}

std::vector<double> fd_weights(double x0, std::span<const double> nodes, int order) {
    // Fornberg (1988), weights for derivatives 0..order, return the last row.
    const int n = static_cast<int>(nodes.size());
    std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) {
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = c[i][order];
    return w;
}

namespace {

// Even function near 0 on a graded grid: g(x) - g(0) ~ a x^2 + b x^4, fitted
// where the increment is well above rounding; used below x_switch.
struct OriginModel {
    double g0 = 0.0;
    double a = 0.0;
    double b = 0.0;
    double x_switch = 0.0;
};

OriginModel fit_origin_model(const SampledFunction& f) {
    OriginModel m;
    m.g0 = f.value_at_origin();
    const auto x = f.grid().nodes();
    const auto v = f.values();
    const double floor = 1e-8 * std::max(f.sup_norm(), std::numeric_limits<double>::min());
    std::size_t s = 0;
    while (s < x.size() && std::abs(v[s] - m.g0) < floor) ++s;
    if (s == 0) return m;
    if (s >= x.size()) {
        // Flat to rounding everywhere: the model is the constant itself.
        m.x_switch = std::numeric_limits<double>::infinity();
        return m;
    }
    std::size_t t = s;
    while (t + 1 < x.size() && x[t] < 2.0 * x[s]) ++t;
    if (t == s) return m;
    const double x1 = x[s] * x[s], x2 = x[t] * x[t];
    const double d1 = v[s] - m.g0, d2 = v[t] - m.g0;
    const double det = x1 * x2 * x2 - x2 * x1 * x1;
    m.a = (d1 * x2 * x2 - d2 * x1 * x1) / det;
    m.b = (x1 * d2 - x2 * d1) / det;
    // Flatter-than-Taylor profiles (plateaus) make the quartic fit turn over;
    // keep the slope sign of the data with a pure quadratic instead.
    if (m.a * (m.a + 2.0 * m.b * x1) < 0.0) {
        m.a = d1 / x1;
        m.b = 0.0;
    }
    m.x_switch = x[s];
    return m;
}

}  // namespace

std::vector<double> origin_increment(const SampledFunction& f) {
    const auto x = f.grid().nodes();
    const auto v = f.values();
    std::vector<double> out(x.size());
    if (f.grid().is_periodic() || f.parity() != Parity::even) {
        const double g0 = f.value_at_origin();
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = v[i] - g0;
        return out;
    }
    const OriginModel m = fit_origin_model(f);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double x2 = x[i] * x[i];
        out[i] = x[i] < m.x_switch ? x2 * (m.a + m.b * x2) : v[i] - m.g0;
    }
    return out;
}

SampledFunction fd_derivative(const SampledFunction& f) {
    const auto x = f.grid().nodes();
    const auto v = f.values();
    const std::size_t n = x.size();
    std::vector<double> d(n, 0.0);
    if (f.grid().is_periodic()) {
        static constexpr std::array<double, 7> c{-1.0 / 60, 3.0 / 20, -3.0 / 4, 0.0, 3.0 / 4, -3.0 / 20, 1.0 / 60};
        const double h = f.grid().spacing();
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int m = -3; m <= 3; ++m) acc += c[m + 3] * v[(j + n + m) % n];
            d[j] = acc / h;
        }
    } else {
        const double ghost_sign = f.parity() == Parity::even ? 1.0 : -1.0;
        const bool use_ghosts = f.parity() != Parity::none;
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<double> sx, sv;
            if (k < 2 && use_ghosts) {
                for (std::size_t g = 2 - k; g-- > 0;) {
                    sx.push_back(-x[g]);
                    sv.push_back(ghost_sign * v[g]);
                }
                for (std::size_t i = 0; i <= k + 2; ++i) {
                    sx.push_back(x[i]);
                    sv.push_back(v[i]);
                }
            } else {
                std::size_t start = k >= 2 ? k - 2 : 0;
                if (start + 5 > n) start = n - 5;
                for (std::size_t i = start; i < start + 5; ++i) {
                    sx.push_back(x[i]);
                    sv.push_back(v[i]);
                }
            }
            const auto w = fd_weights(x[k], sx, 1);
            double acc = 0.0;
            for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * sv[i];
            d[k] = acc;
        }
        if (f.parity() == Parity::even) {
            const OriginModel m = fit_origin_model(f);
            for (std::size_t k = 0; k < n && x[k] < m.x_switch; ++k) {
                d[k] = x[k] * (2.0 * m.a + 4.0 * m.b * x[k] * x[k]);
            }
        }
    }
    Parity parity = Parity::none;
    if (f.parity() == Parity::even) parity = Parity::odd;
    if (f.parity() == Parity::odd) parity = Parity::even;
    if (f.grid().is_periodic() && parity != Parity::none) {
        const std::size_t mid = f.grid().origin_index();
        const double s = parity == Parity::even ? 1.0 : -1.0;
        for (std::size_t j = 1; j < mid; ++j) d[j] = s * d[n - j];
        if (parity == Parity::odd) d[mid] = 0.0;
        if (parity == Parity::odd) d[0] = 0.0;
    }
    return f.with_values(std::move(d), parity);
}

}  // namespace nonlocal
