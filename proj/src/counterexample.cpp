// Sign-changing counterexample for the weighted Kiselev functional with p = 1:
// an inner bump phi_A near x0 < 1 and an outer bump phi_B in 1.1 < |x| < 3.
#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "nonlocal/errors.hpp"
#include "nonlocal/inequalities.hpp"
#include "nonlocal/operators.hpp"
#include "nonlocal/quadrature.hpp"

namespace nonlocal {
namespace {

constexpr double kRadiusB = 0.3;
constexpr double kBoxHalfLength = 8.0;

double bump(double u) { return std::abs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0; }

double bump_derivative(double u) {
    if (std::abs(u) >= 1.0) return 0.0;
    const double s = 1.0 - u * u;
    return std::exp(-1.0 / s) * (-2.0 * u / (s * s));
}

// Even bump around |x| = c of half-width r.
double even_bump(double x, double c, double r) { return bump((std::abs(x) - c) / r); }

double even_bump_derivative(double x, double c, double r) {
    const double s = x < 0.0 ? -1.0 : 1.0;
    return s * bump_derivative((std::abs(x) - c) / r) / r;
}

// H phi(x) for an even bump away from x, via 2x / (x^2 - y^2) on the half line.
double hilbert_of_bump(double x, double c, double r) {
    boost::math::quadrature::tanh_sinh<double> ts;
    auto f = [&](double y) { return even_bump(y, c, r) * 2.0 * x / (x * x - y * y); };
    return ts.integrate(f, c - r, c + r) / std::numbers::pi;
}

double functional(const Grid1D& grid, const std::vector<double>& hf, const std::vector<double>& df, double sigma) {
    const auto x = grid.nodes();
    std::vector<double> integrand(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > 0.0 && x[i] < 1.0 && df[i] != 0.0) integrand[i] = -hf[i] * df[i] / std::pow(x[i], sigma);
    }
    return integrate_samples(grid, integrand, 0.0, 1.0).value;
}

}  // namespace

double counterexample_drive(double x, double center, double radius, double sigma) {
    if (!(x > 0.0) || center - radius <= x) throw LabError(ErrorKind::DomainError, "bump must lie beyond x");
    boost::math::quadrature::tanh_sinh<double> ts;
    auto f = [&](double y) {
        const double d = x * x - y * y;
        return even_bump(y, center, radius) * (2.0 * (x * x + y * y) / (d * d) + 2.0 * sigma / d);
    };
    return -ts.integrate(f, center - radius, center + radius) / std::numbers::pi;
}

CounterexampleResult construct_counterexample(double sigma) {
    if (!(sigma > 0.0)) throw LabError(ErrorKind::InvalidArgument, "sigma must be positive");
    struct Scalars {
        double t = 0, x0 = 0, center_b = 0, radius_a = 0, cross_term = 0, cross_term_direct = 0, functional_value = 0;
        double functional_t[3] = {0, 0, 0};
        double affine_residual = 0;
    } out;
    const double lo = 1.1 + kRadiusB, hi = 3.0 - kRadiusB;
    bool found = false;
    for (int k = 1; k < 1000 && !found; ++k) {
        const double c = lo + (hi - lo) * k / 1000.0;
        if (counterexample_drive(1.0, c, kRadiusB, sigma) < 0.0) {
            out.center_b = c;
            found = true;
        }
    }
    if (!found) throw LabError(ErrorKind::SearchFailed, "no outer bump centre gives a negative drive at x = 1");
    found = false;
    for (int k = 1; k < 1000 && !found; ++k) {
        const double x0 = 1.0 - 1e-3 * k;
        if (counterexample_drive(x0, out.center_b, kRadiusB, sigma) < 0.0) {
            out.x0 = x0;
            found = true;
        }
    }
    if (!found) throw LabError(ErrorKind::SearchFailed, "drive stays nonnegative below x = 1");
    out.radius_a = std::min(0.05, 0.5 * (1.0 - out.x0));

    // Resolve phi_A with at least 128 points per half-width.
    std::size_t n = 1024;
    while (2.0 * kBoxHalfLength / n > out.radius_a / 128.0 && n < (std::size_t{1} << 23)) n *= 2;
    const auto grid = std::make_shared<const Grid1D>(Grid1D::periodic(n, kBoxHalfLength));
    const double xa = out.x0, ra = out.radius_a, cb = out.center_b;
    auto phi_a = SampledFunction::sample(grid, [&](double x) { return even_bump(x, xa, ra); }, Parity::even);
    auto phi_b = SampledFunction::sample(grid, [&](double x) { return even_bump(x, cb, kRadiusB); }, Parity::even);
    const auto x = grid->nodes();
    std::vector<double> da(n), db(n);
    for (std::size_t i = 0; i < n; ++i) {
        da[i] = even_bump_derivative(x[i], xa, ra);
        db[i] = even_bump_derivative(x[i], cb, kRadiusB);
    }
    const auto h_a = hilbert_transform(phi_a);
    const auto ha_span = h_a.values();
    const std::vector<double> ha(ha_span.begin(), ha_span.end());
    const auto h_b = hilbert_transform(phi_b);
    const auto hb_span = h_b.values();
    const std::vector<double> hb(hb_span.begin(), hb_span.end());

    // H and d/dx are linear, so K(t) is assembled from the two bumps' pieces.
    auto k_of_t = [&](double t) {
        std::vector<double> hf(n), df(n);
        for (std::size_t i = 0; i < n; ++i) {
            hf[i] = ha[i] + t * hb[i];
            df[i] = da[i] + t * db[i];
        }
        return functional(*grid, hf, df, sigma);
    };

    out.cross_term = -functional(*grid, hb, da, sigma);
    {
        boost::math::quadrature::tanh_sinh<double> ts;
        auto f = [&](double y) { return hilbert_of_bump(y, cb, kRadiusB) * even_bump_derivative(y, xa, ra) / std::pow(y, sigma); };
        out.cross_term_direct = ts.integrate(f, xa - ra, xa + ra);
    }

    found = false;
    double t = 1.0;
    for (int k = 0; k < 1000 && !found; ++k, t *= 2.0) {
        const double value = k_of_t(t);
        if (!std::isfinite(value)) break;
        if (value < 0.0) {
            out.t = t;
            out.functional_value = value;
            found = true;
        }
    }
    if (!found) throw LabError(ErrorKind::SearchFailed, "functional stays nonnegative under doubling of t");
    for (int k = 0; k < 3; ++k) out.functional_t[k] = k_of_t(k + 1.0);
    const double scale = std::max({std::abs(out.functional_t[0]), std::abs(out.functional_t[1]), std::abs(out.functional_t[2])});
    const double second_difference = out.functional_t[0] - 2.0 * out.functional_t[1] + out.functional_t[2];
    out.affine_residual = scale > 0.0 ? std::abs(second_difference) / scale : std::abs(second_difference);
    CounterexampleResult res{std::move(phi_a), std::move(phi_b)};
    res.t = out.t;
    res.x0 = out.x0;
    res.center_b = out.center_b;
    res.radius_a = out.radius_a;
    res.cross_term = out.cross_term;
    res.cross_term_direct = out.cross_term_direct;
    res.functional_value = out.functional_value;
    std::copy(out.functional_t, out.functional_t + 3, res.functional_t);
    res.affine_residual = out.affine_residual;
    return res;
}

}  // namespace nonlocal
