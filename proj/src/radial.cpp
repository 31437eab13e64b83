#include "nonlocal/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include <boost/math/interpolators/makima.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "nonlocal/errors.hpp"

namespace nonlocal {
namespace {

constexpr double kPi = std::numbers::pi;

// Surface area of the unit sphere S^m in R^(m+1).
double sphere_area(int m) { return 2.0 * std::pow(kPi, 0.5 * (m + 1)) / boost::math::tgamma(0.5 * (m + 1)); }

void validate(const RadialProfile& g) {
    if (g.dimension < 2) throw LabError(ErrorKind::InvalidArgument, "dimension must be at least 2");
    if (g.radii.size() < 4 || g.values.size() != g.radii.size() || g.derivative.size() != g.radii.size()) {
        throw LabError(ErrorKind::GridMismatch, "radial samples have inconsistent sizes");
    }
    for (std::size_t i = 0; i < g.radii.size(); ++i) {
        if (!(g.radii[i] > (i ? g.radii[i - 1] : 0.0))) {
            throw LabError(ErrorKind::InvalidArgument, "radii must be positive and increasing");
        }
    }
    if (std::abs(g.derivative.back()) > 1e-10) {
        throw LabError(ErrorKind::InsufficientDecay, "profile is not flat at the largest radius");
    }
    if (g.monotone == Monotonicity::nonincreasing) {
        double scale = 0.0;
        for (double d : g.derivative) scale = std::max(scale, std::abs(d));
        for (double d : g.derivative) {
            if (d > 1e-12 * scale) throw LabError(ErrorKind::HypothesisViolation, "profile is not nonincreasing");
        }
    }
}

void check_kernel_range(int n, double alpha) {
    if (n < 2 || n > 4) throw LabError(ErrorKind::InvalidArgument, "dimension must be 2, 3 or 4");
    if (!(alpha > 0.0 && alpha < 2.0)) throw LabError(ErrorKind::AlphaOutOfRange, "alpha must lie in (0, 2)");
}

// Polar-angle form, folded onto [0, pi/2] by pairing theta with pi - theta so
// that the odd factor omega_n cancels exactly at eps = 0. Dyadic panels resolve
// the peak of width 1 - eps at theta = 0.
// `defect` is 1 - eps, passed separately so it keeps full precision near the ring.
double sphere_kernel_core(double eps, double defect, int n, double alpha, int refine) {
    if (eps == 0.0) return 0.0;
    defect = std::max(defect, 1e-30);
    const double p = 0.5 * (n - alpha);
    const double gap = defect * defect;
    auto f = [&](double theta) {
        const double c = std::cos(theta), s = std::sin(theta);
        const double half = std::sin(0.5 * theta);
        const double near = gap + 4.0 * eps * half * half;
        const double far = 1.0 + 2.0 * eps * c + eps * eps;
        return c * std::pow(s, n - 2) * (std::pow(near, -p) - std::pow(far, -p));
    };
    std::vector<double> edges{0.0};
    double w = std::min(defect, 0.5 * kPi);
    while (w < 0.5 * kPi) {
        edges.push_back(w);
        w *= 2.0;
    }
    edges.push_back(0.5 * kPi);
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        const double step = (edges[k + 1] - edges[k]) / refine;
        for (int j = 0; j < refine; ++j) {
            total += boost::math::quadrature::gauss<double, 20>::integrate(f, edges[k] + j * step, edges[k] + (j + 1) * step);
        }
    }
    return sphere_area(n - 2) * total;
}

}  // namespace

RadialProfile RadialProfile::from_function(int n, std::function<double(double)> g, std::function<double(double)> dg,
                                           Monotonicity monotone, double r_max, std::size_t count) {
    RadialProfile out;
    out.dimension = n;
    out.monotone = monotone;
    for (std::size_t k = 1; k <= count; ++k) {
        const double r = r_max * static_cast<double>(k) / static_cast<double>(count);
        out.radii.push_back(r);
        out.values.push_back(g(r));
        out.derivative.push_back(dg(r));
    }
    out.value_fn = std::move(g);
    out.derivative_fn = std::move(dg);
    validate(out);
    return out;
}

RadialProfile RadialProfile::from_samples(int n, std::vector<double> radii, std::vector<double> values,
                                          std::vector<double> derivative, Monotonicity monotone) {
    RadialProfile out;
    out.dimension = n;
    out.monotone = monotone;
    out.radii = std::move(radii);
    out.values = std::move(values);
    out.derivative = std::move(derivative);
    validate(out);
    using Interp = boost::math::interpolators::makima<std::vector<double>>;
    auto gv = std::make_shared<Interp>(std::vector<double>(out.radii), std::vector<double>(out.values));
    auto dv = std::make_shared<Interp>(std::vector<double>(out.radii), std::vector<double>(out.derivative));
    const double r0 = out.radii.front(), g0 = out.values.front(), d0 = out.derivative.front();
    // Below the first sample: even extension, g ~ g(r0) + (g'(r0)/(2 r0)) (r^2 - r0^2).
    out.value_fn = [gv, r0, g0, d0](double r) { return r < r0 ? g0 + 0.5 * d0 / r0 * (r * r - r0 * r0) : (*gv)(r); };
    out.derivative_fn = [dv, r0, d0](double r) { return r < r0 ? d0 * r / r0 : (*dv)(r); };
    return out;
}

double RadialProfile::value(double r) const { return r >= r_max() ? values.back() : value_fn(r); }

double RadialProfile::slope(double r) const { return r >= r_max() ? 0.0 : derivative_fn(r); }

double sphere_kernel_integral(double epsilon, int n, double alpha, RadialResolution res) {
    check_kernel_range(n, alpha);
    if (!(epsilon >= 0.0 && epsilon < 1.0)) throw LabError(ErrorKind::DomainError, "epsilon must lie in [0, 1)");
    const double coarse = sphere_kernel_core(epsilon, 1.0 - epsilon, n, alpha, res.refine);
    const double fine = sphere_kernel_core(epsilon, 1.0 - epsilon, n, alpha, 2 * res.refine);
    if (std::abs(coarse - fine) > 1e-9 * std::abs(fine) + 1e-300) {
        throw LabError(ErrorKind::NonIntegrable, "angular quadrature did not converge");
    }
    return fine;
}

double radial_fractional_gradient(const RadialProfile& g, double r, double alpha, RadialResolution res) {
    const int n = g.dimension;
    check_kernel_range(n, alpha);
    if (!(r > 0.0 && r < g.r_max())) throw LabError(ErrorKind::DomainError, "r must lie inside the profile's range");
    boost::math::quadrature::tanh_sinh<double> ts;
    // The sphere integral is homogeneous: inside the ring it scales with r, outside
    // with rho. Both sides use 1 - eps = s^2, which tames the (1 - eps)^(alpha-1) ring singularity.
    auto inner = [&](double s) {
        const double rho = r * (1.0 - s * s);
        const double d = -g.slope(rho);
        if (d == 0.0 || rho <= 0.0) return 0.0;
        return d * std::pow(rho, n - 1) * std::pow(r, alpha - n) * sphere_kernel_core(1.0 - s * s, s * s, n, alpha, res.refine) *
               2.0 * r * s;
    };
    auto outer = [&](double s) {
        const double q = 1.0 - s * s;
        const double rho = r / q;
        const double d = -g.slope(rho);
        if (d == 0.0) return 0.0;
        return d * std::pow(rho, alpha - 1.0) * sphere_kernel_core(q, s * s, n, alpha, res.refine) * 2.0 * r * s / (q * q);
    };
    const double a = ts.integrate(inner, 0.0, 1.0, res.tolerance);
    const double b = ts.integrate(outer, 0.0, std::sqrt(1.0 - r / g.r_max()), res.tolerance);
    const double v = a + b;
    if (!std::isfinite(v)) throw LabError(ErrorKind::NonIntegrable, "radial quadrature failed");
    return v;
}

double hardy_step_value(int n, double alpha, double delta) {
    const double q = 2.0 / (2.0 * n + 2.0 - alpha + delta);
    return n * (n + 2.0 - alpha + delta) * q * q;
}

bool hardy_step_condition(int n, double alpha, double delta) { return 1.0 > hardy_step_value(n, alpha, delta); }

std::vector<HardyStepPoint> hardy_step_sweep() {
    std::vector<HardyStepPoint> out;
    for (int n : {2, 3, 4}) {
        for (double alpha : {0.5, 1.0, 1.5}) {
            for (double delta : {-0.5, 0.0, 0.5}) {
                const double v = hardy_step_value(n, alpha, delta);
                out.push_back({n, alpha, delta, v, 1.0 > v});
            }
        }
    }
    return out;
}

std::pair<InequalityReport, InequalityReport> verify_radial_bounds(const RadialProfile& g, double alpha, double delta,
                                                                   RadialResolution res) {
    const int n = g.dimension;
    check_kernel_range(n, alpha);
    if (!(delta > -1.0 && delta < 1.0)) throw LabError(ErrorKind::DeltaOutOfRange, "delta must lie in (-1, 1)");
    if (g.monotone != Monotonicity::nonincreasing) {
        throw LabError(ErrorKind::HypothesisViolation, "radial bounds need a nonincreasing profile");
    }
    boost::math::quadrature::tanh_sinh<double> ts;
    const double R = g.r_max();
    std::vector<std::pair<std::string, double>> base{{"n", double(n)}, {"alpha", alpha}, {"unnormalized", 1.0}};

    InequalityReport point;
    point.name = "radial_pointwise";
    point.params = base;
    double inf_ratio = std::numeric_limits<double>::infinity();
    double worst_r = 0.0;
    bool signs_ok = true;
    bool trivial = true;
    const int count = 24;
    for (int k = 0; k < count; ++k) {
        const double r = R * 1e-3 * std::pow(500.0, double(k) / (count - 1));
        const double lhs = radial_fractional_gradient(g, r, alpha, res);
        const double mass = ts.integrate([&](double rho) { return -g.slope(rho) * std::pow(rho, n); }, 0.0, r, res.tolerance);
        const double rhs = mass * std::pow(r, alpha - n - 1.0);
        if (lhs < -1e-8 * std::abs(rhs) - 1e-14) signs_ok = false;
        if (rhs > 0.0) {
            trivial = false;
            if (lhs / rhs < inf_ratio) {
                inf_ratio = lhs / rhs;
                worst_r = r;
                point.lhs = lhs;
                point.rhs = rhs;
            }
        }
    }
    point.params.push_back({"r_worst", worst_r});
    if (trivial) {
        point.params.push_back({"trivial", 1.0});
        point.ratio = std::numeric_limits<double>::quiet_NaN();
        point.verdict = Verdict::inconclusive;
    } else {
        point.ratio = inf_ratio;
        point.err_est = res.tolerance * std::abs(point.lhs);
        point.verdict = signs_ok && inf_ratio > 0.0 && std::isfinite(inf_ratio) ? Verdict::holds : Verdict::fails;
    }

    InequalityReport weighted;
    weighted.name = "radial_weighted";
    weighted.params = base;
    weighted.params.push_back({"delta", delta});
    const double area = sphere_area(n - 1);
    const double g0 = g.value(0.0);
    auto left = [&](double r) {
        const double d = -g.slope(r);
        return d == 0.0 || r < 1e-150 ? 0.0 : radial_fractional_gradient(g, r, alpha, res) * d * std::pow(r, -1.0 - delta);
    };
    auto right = [&](double r) {
        const double f = g0 - g.value(r);
        return f == 0.0 ? 0.0 : f * f * std::pow(r, alpha - 3.0 - delta);
    };
    // Each lhs sample is itself a double integral, so a fixed composite rule in
    // log r (two panels per decade) replaces the adaptive one; below R 1e-7 the
    // integrand is O(r^(1-delta)) and dropped.
    double lhs = 0.0;
    for (double a = R * 1e-7; a < R * (1.0 - 1e-12);) {
        const double b = std::min(a * std::sqrt(10.0), R * (1.0 - 1e-12));
        lhs += boost::math::quadrature::gauss<double, 10>::integrate(left, a, b);
        a = b;
    }
    weighted.lhs = area * lhs;
    double rhs = ts.integrate(right, 0.0, R, 1e-10);
    const double edge = g0 - g.value(R);
    // Beyond R the gap g(0) - g is frozen; its weighted tail converges only for delta > alpha - 2.
    if (edge != 0.0) {
        rhs += delta > alpha - 2.0 ? edge * edge * std::pow(R, alpha - 2.0 - delta) / (2.0 + delta - alpha)
                                   : std::numeric_limits<double>::infinity();
    }
    weighted.rhs = area * rhs;
    weighted.err_est = 1e-7 * std::abs(weighted.lhs);
    if (weighted.lhs == 0.0 && weighted.rhs == 0.0) {
        weighted.params.push_back({"trivial", 1.0});
        weighted.ratio = std::numeric_limits<double>::quiet_NaN();
        weighted.verdict = Verdict::inconclusive;
    } else {
        weighted.ratio = safe_ratio(weighted.lhs, weighted.rhs);
        weighted.verdict = weighted.ratio > 0.0 && std::isfinite(weighted.ratio) ? Verdict::holds : Verdict::fails;
    }
    return {point, weighted};
}

}  // namespace nonlocal
