#include "nonlocal/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nonlocal/errors.hpp"
#include "nonlocal/operators.hpp"
#include "nonlocal/quadrature.hpp"
#include "nonlocal/spectral.hpp"

namespace nonlocal {
namespace {

constexpr double kPi = std::numbers::pi;

QuadResult half_line_integral(const Grid1D& grid, const std::vector<double>& y, double upper = kInfinity) {
    return integrate_samples(grid, y, 0.0, upper);
}

void require_even_half_line(const SampledFunction& g) {
    if (g.grid().is_periodic()) {
        throw LabError(ErrorKind::MethodDomainMismatch, "half-line checks need a graded grid");
    }
    if (g.parity() != Parity::even) throw LabError(ErrorKind::HypothesisViolation, "function must be even");
}

InequalityReport inconclusive(std::string name, std::vector<std::pair<std::string, double>> params,
                              std::optional<double> constant) {
    InequalityReport r;
    r.name = std::move(name);
    r.params = std::move(params);
    r.lhs = r.rhs = r.ratio = r.err_est = std::numeric_limits<double>::quiet_NaN();
    r.stated_constant = constant;
    r.verdict = Verdict::inconclusive;
    return r;
}

}  // namespace

GridPtr default_graded_grid() {
    static const GridPtr grid = share(Grid1D::graded());
    return grid;
}

GridPtr default_periodic_embedding() {
    static const GridPtr grid = share(Grid1D::periodic(32768, 256.0));
    return grid;
}

SampledFunction to_graded(const SampledFunction& periodic, const GridPtr& graded) {
    if (!periodic.grid().is_periodic() || graded->is_periodic()) {
        throw LabError(ErrorKind::MethodDomainMismatch, "expected periodic samples and a graded target");
    }
    const FourierSeries series(periodic.grid(), periodic.values());
    auto v = series.evaluate(graded->nodes(), true);
    // Beyond the box the function keeps its edge value.
    const auto x = graded->nodes();
    const double edge = periodic.grid().half_length();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (x[i] > edge) v[i] = periodic[0];
    }
    return SampledFunction(graded, std::move(v), periodic.parity());
}

EvenProfile make_profile(const SampledFunction& g) {
    require_even_half_line(g);
    return EvenProfile{g, fd_derivative(g), hilbert_transform(g, HilbertMethod::pv_quadrature), origin_increment(g),
                       g.value_at_origin()};
}

EvenProfile make_profile(const TestFunction& f, Monotonicity monotone) {
    return make_profile(sample_even(default_graded_grid(), f, monotone));
}

PointwiseBound check_pointwise_lower_bound(const EvenProfile& p) {
    double sign = 0.0;
    if (p.g.monotone() == Monotonicity::nonincreasing) sign = 1.0;
    if (p.g.monotone() == Monotonicity::nondecreasing) sign = -1.0;
    if (sign == 0.0) throw LabError(ErrorKind::HypothesisViolation, "pointwise bound needs a monotone function");
    const auto x = p.g.grid().nodes();
    const auto primitive = cumulative_primitive(p.g.with_values(p.inc, Parity::none));
    PointwiseBound out;
    out.scale = p.g.sup_norm();
    out.x.assign(x.begin(), x.end());
    out.margin.resize(x.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        // (1/x) int_0^x (g(y) - g(x)) dy
        const double mean_gap = primitive[i] / x[i] - p.inc[i];
        out.margin[i] = sign * (p.hg[i] - 2.0 / kPi * mean_gap);
        worst = std::min(worst, out.margin[i]);
    }
    out.worst = out.scale > 0.0 ? worst / out.scale : worst;
    out.holds = out.worst >= -1e-6;
    return out;
}

PointwiseBound check_pointwise_lower_bound(const SampledFunction& g) { return check_pointwise_lower_bound(make_profile(g)); }

double ccf_constant(double delta) { return (1.0 + delta) * (1.0 + delta) / (kPi * (3.0 + delta)); }

double ccf_direct_constant(double delta) { return (3.0 + delta - 2.0 * std::sqrt(2.0 + delta)) / kPi; }

InequalityReport verify_ccf(const EvenProfile& p, double delta) {
    if (!(delta > -1.0 && delta < 1.0)) throw LabError(ErrorKind::DeltaOutOfRange, "delta must lie in (-1, 1)");
    if (p.g.monotone() != Monotonicity::nonincreasing) {
        throw LabError(ErrorKind::HypothesisViolation, "weighted bound needs g nonincreasing on x > 0");
    }
    const auto& grid = p.g.grid();
    const auto x = grid.nodes();
    const double c = ccf_constant(delta);
    std::vector<std::pair<std::string, double>> params{{"delta", delta}, {"direct_constant", ccf_direct_constant(delta)}};
    std::vector<double> left(x.size()), right(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        left[i] = -p.dg[i] * p.hg[i] * std::pow(x[i], -1.0 - delta);
        right[i] = p.inc[i] * p.inc[i] * std::pow(x[i], -2.0 - delta);
    }
    try {
        const auto l = half_line_integral(grid, left);
        const auto r = half_line_integral(grid, right);
        InequalityReport rep;
        rep.name = "ccf_weighted";
        rep.params = std::move(params);
        rep.lhs = l.value;
        rep.rhs = r.value;
        rep.stated_constant = c;
        rep.ratio = safe_ratio(l.value, r.value);
        rep.err_est = l.error + c * r.error;
        rep.verdict = judge(rep.lhs, rep.rhs, c, rep.err_est, Orientation::lower);
        return rep;
    } catch (const LabError& e) {
        if (e.kind() != ErrorKind::NonIntegrable) throw;
        return inconclusive("ccf_weighted", std::move(params), c);
    }
}

InequalityReport verify_ccf(const SampledFunction& g, double delta) { return verify_ccf(make_profile(g), delta); }

InequalityReport verify_hardy(const SampledFunction& f, double p, double r_tilde) {
    if (!(p >= 1.0) || !(r_tilde > 0.0)) throw LabError(ErrorKind::InvalidArgument, "need p >= 1 and r > 0");
    if (f.grid().is_periodic()) throw LabError(ErrorKind::MethodDomainMismatch, "Hardy check runs on a half-line grid");
    for (double v : f.values()) {
        if (v < 0.0) throw LabError(ErrorKind::NegativeInput, "Hardy check needs f >= 0");
    }
    const double c = std::pow(p / r_tilde, p);
    std::vector<std::pair<std::string, double>> params{{"p", p}, {"r_tilde", r_tilde}};
    const auto& grid = f.grid();
    const auto x = grid.nodes();
    const auto F = cumulative_primitive(f);
    std::vector<double> left(x.size()), right(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        left[i] = std::pow(F[i], p) * std::pow(x[i], p - r_tilde - 3.0);
        right[i] = std::pow(f[i], p) * std::pow(x[i], p - r_tilde - 1.0);
    }
    try {
        const auto l = half_line_integral(grid, left);
        const auto r = half_line_integral(grid, right);
        InequalityReport rep;
        rep.name = "hardy";
        rep.params = std::move(params);
        rep.lhs = l.value;
        rep.rhs = r.value;
        rep.stated_constant = c;
        rep.ratio = safe_ratio(l.value, r.value);
        rep.err_est = l.error + c * r.error;
        rep.verdict = judge(rep.lhs, rep.rhs, c, rep.err_est, Orientation::upper);
        return rep;
    } catch (const LabError& e) {
        if (e.kind() != ErrorKind::NonIntegrable) throw;
        return inconclusive("hardy", std::move(params), c);
    }
}

double kiselev_c1(double p, double beta) {
    if (!(beta > 1.0) || !(p >= 1.0)) throw LabError(ErrorKind::InvalidArgument, "need beta > 1, p >= 1");
    const double top = std::pow(beta, -1.0 / (p + 1.0));
    auto phi = [&](double s) { return std::pow(1.0 - s, p + 1.0) / (1.0 - beta * std::pow(s, p + 1.0)); };
    // Coarse scan, then golden section on the bracketing cell.
    constexpr int kScan = 4000;
    int best = 0;
    double best_value = phi(0.0);
    for (int k = 1; k < kScan; ++k) {
        const double v = phi(top * k / kScan);
        if (v < best_value) {
            best_value = v;
            best = k;
        }
    }
    double a = top * std::max(0, best - 1) / kScan;
    double b = top * std::min(kScan - 1, best + 1) / kScan;
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - ratio * (b - a), d = a + ratio * (b - a);
    double fc = phi(c), fd = phi(d);
    while (b - a > 1e-12) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = phi(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = phi(d);
        }
    }
    return std::min({best_value, fc, fd, phi(0.0)});
}

double kiselev_proof_constant(double p, double sigma) {
    if (!(p >= 1.0) || !(sigma > 0.0)) throw LabError(ErrorKind::InvalidArgument, "need p >= 1 and sigma > 0");
    if (p == 1.0) {
        const double r = std::sqrt(1.0 + sigma) - 1.0;
        return r * r / kPi;
    }
    const double beta = 1.0 + sigma / 2.0;
    return 2.0 / kPi * (1.0 + sigma) / (p + 1.0) * kiselev_c1(p, beta) * (1.0 - beta / (1.0 + sigma));
}

InequalityReport verify_kiselev(const EvenProfile& f, double p, double sigma, KiselevDomain domain) {
    if (f.g.parity() != Parity::even || f.g.monotone() != Monotonicity::nondecreasing) {
        throw LabError(ErrorKind::HypothesisViolation, "needs an even function nondecreasing on x > 0");
    }
    if (std::abs(f.g0) > 1e-12 * std::max(1.0, f.g.sup_norm())) {
        throw LabError(ErrorKind::HypothesisViolation, "needs f(0) = 0");
    }
    const double c = kiselev_proof_constant(p, sigma);
    const double upper = domain == KiselevDomain::unit ? 1.0 : kInfinity;
    const auto& grid = f.g.grid();
    const auto x = grid.nodes();
    std::vector<double> left(x.size()), right(x.size());
    double min_integrand = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double v = std::max(0.0, f.inc[i]);
        const double flux = -f.hg[i] * f.dg[i];
        if (x[i] <= upper) min_integrand = std::min(min_integrand, flux);
        left[i] = flux * std::pow(v, p - 1.0) * std::pow(x[i], -sigma);
        right[i] = std::pow(v, p + 1.0) * std::pow(x[i], -1.0 - sigma);
    }
    std::vector<std::pair<std::string, double>> params{{"p", p}, {"sigma", sigma},
                                                       {"half_line", domain == KiselevDomain::half_line ? 1.0 : 0.0},
                                                       {"min_integrand", min_integrand}};
    try {
        const auto l = integrate_samples(grid, left, 0.0, upper);
        const auto r = integrate_samples(grid, right, 0.0, upper);
        InequalityReport rep;
        rep.name = "kiselev";
        rep.params = std::move(params);
        rep.lhs = l.value;
        rep.rhs = r.value;
        rep.stated_constant = c;
        rep.ratio = safe_ratio(l.value, r.value);
        rep.err_est = l.error + c * r.error;
        rep.verdict = judge(rep.lhs, rep.rhs, c, rep.err_est, Orientation::lower);
        return rep;
    } catch (const LabError& e) {
        if (e.kind() != ErrorKind::NonIntegrable) throw;
        return inconclusive("kiselev", std::move(params), c);
    }
}

InequalityReport verify_kiselev(const SampledFunction& f, double p, double sigma, KiselevDomain domain) {
    return verify_kiselev(make_profile(f), p, sigma, domain);
}

IdentityReport hilbert_energy_identity(const EvenProfile& p) {
    const auto& grid = p.g.grid();
    const auto x = grid.nodes();
    const std::size_t n = x.size();
    IdentityReport out;
    try {
        std::vector<double> left(n), quad(n), inner(n), outer(n);
        for (std::size_t i = 0; i < n; ++i) {
            left[i] = -p.dg[i] * p.hg[i] / x[i];
            quad[i] = p.inc[i] * p.inc[i] / (x[i] * x[i]);
        }
        const auto l = half_line_integral(grid, left);
        const auto t1 = half_line_integral(grid, quad);
        double inner_err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) {
                    inner[j] = p.dg[i] * p.dg[i] / (2.0 * x[i]);
                } else {
                    const double d = p.inc[i] - p.inc[j];
                    const double gap = x[i] - x[j];
                    inner[j] = d * d / (gap * gap * (x[i] + x[j]));
                }
            }
            const auto r = half_line_integral(grid, inner);
            outer[i] = r.value;
            inner_err = std::max(inner_err, r.error / std::max(std::abs(r.value), 1e-300));
        }
        const auto t2 = half_line_integral(grid, outer);
        out.lhs = l.value;
        out.term1 = t1.value / kPi;
        out.term2 = t2.value / kPi;
        out.err_est = l.error + (t1.error + t2.error + inner_err * std::abs(t2.value)) / kPi;
        const double gap = std::abs(out.lhs - out.term1 - out.term2);
        out.residual = std::abs(out.lhs) > 0.0 ? gap / std::abs(out.lhs) : gap;
        out.direct_bound = out.term2 >= (3.0 - 2.0 * std::sqrt(2.0)) * out.term1 - 10.0 * out.err_est;
        out.verdict = out.residual <= 1e-3 ? Verdict::holds : Verdict::fails;
    } catch (const LabError& e) {
        if (e.kind() != ErrorKind::NonIntegrable) throw;
        out.verdict = Verdict::inconclusive;
    }
    return out;
}

IdentityReport hilbert_energy_identity(const SampledFunction& g) { return hilbert_energy_identity(make_profile(g)); }

InequalityReport verify_exp_weighted_bound(const EvenProfile& p) {
    const auto& grid = p.g.grid();
    const auto x = grid.nodes();
    std::vector<double> left(x.size()), quad(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        left[i] = -p.dg[i] * p.hg[i] * std::exp(-x[i]) / x[i];
        quad[i] = p.inc[i] * p.inc[i] / (x[i] * x[i]);
    }
    const double c = 1.0 / (2.0 * kPi);
    const double slack = 1000.0 * p.g.sup_norm() * p.g.sup_norm();
    std::vector<std::pair<std::string, double>> params{{"slack", slack}};
    try {
        const auto l = half_line_integral(grid, left);
        const auto q = half_line_integral(grid, quad);
        InequalityReport rep;
        rep.name = "exp_weighted";
        rep.params = std::move(params);
        rep.lhs = l.value;
        rep.rhs = c * q.value - slack;
        rep.stated_constant = c;
        rep.ratio = safe_ratio(rep.lhs, rep.rhs);
        rep.err_est = l.error + c * q.error;
        rep.verdict = judge(rep.lhs, rep.rhs, 1.0, rep.err_est, Orientation::lower);
        return rep;
    } catch (const LabError& e) {
        if (e.kind() != ErrorKind::NonIntegrable) throw;
        return inconclusive("exp_weighted", std::move(params), c);
    }
}

}  // namespace nonlocal
