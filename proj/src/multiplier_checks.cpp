// Checks whose operator is a Fourier multiplier: evaluated on the periodic
// embedding, then moved to the graded half-line grid for the weighted integrals.
#include <algorithm>
#include <cmath>
#include <limits>

#include "nonlocal/errors.hpp"
#include "nonlocal/inequalities.hpp"
#include "nonlocal/operators.hpp"
#include "nonlocal/quadrature.hpp"

namespace nonlocal {
namespace {

struct Embedded {
    SampledFunction g;
    SampledFunction dg;
    std::vector<double> inc;
};

Embedded embed_even(const SampledFunction& gp) {
    if (!gp.grid().is_periodic()) throw LabError(ErrorKind::MethodDomainMismatch, "expected periodic samples");
    if (gp.parity() != Parity::even) throw LabError(ErrorKind::HypothesisViolation, "function must be even");
    auto g = to_graded(gp, default_graded_grid());
    auto dg = fd_derivative(g);
    auto inc = origin_increment(g);
    return {std::move(g), std::move(dg), std::move(inc)};
}

}  // namespace

BoundReport verify_fractional_log_bound(const SampledFunction& gp, double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw LabError(ErrorKind::GammaOutOfRange, "gamma must lie in (0, 1)");
    const Embedded e = embed_even(gp);
    const auto lg = to_graded(fractional_laplacian(gp, gamma), default_graded_grid());
    const auto lg_inc = origin_increment(lg);
    const auto& grid = e.g.grid();
    const auto x = grid.nodes();
    std::vector<double> left(x.size()), right(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        left[i] = -lg_inc[i] / x[i] * std::exp(-x[i]);
        right[i] = std::abs(e.inc[i]) * std::pow(x[i], -1.0 - gamma) * std::log(10.0 + 1.0 / x[i]);
    }
    BoundReport out;
    out.lhs = std::abs(integrate_samples(grid, left, 0.0, kInfinity).value);
    out.rhs = integrate_samples(grid, right, 0.0, kInfinity).value;
    out.ratio = safe_ratio(out.lhs, out.rhs);
    return out;
}

InequalityReport verify_alpha(const SampledFunction& gp, double alpha, bool weighted) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw LabError(ErrorKind::AlphaOutOfRange, "alpha must lie in (0, 2)");
    const Embedded e = embed_even(gp);
    const auto drift = to_graded(drift_velocity(gp, alpha), default_graded_grid());
    const auto& grid = e.g.grid();
    const auto x = grid.nodes();
    std::vector<double> left(x.size()), right(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        left[i] = drift[i] * e.dg[i] / x[i] * (weighted ? std::exp(-x[i]) : 1.0);
        right[i] = e.inc[i] * e.inc[i] * std::pow(x[i], alpha - 3.0);
    }
    InequalityReport rep;
    rep.name = weighted ? "alpha_drift_weighted" : "alpha_drift";
    rep.params = {{"alpha", alpha}, {"weighted", weighted ? 1.0 : 0.0}};
    try {
        const auto l = integrate_samples(grid, left, 0.0, kInfinity);
        const auto r = integrate_samples(grid, right, 0.0, kInfinity);
        rep.lhs = l.value;
        rep.rhs = r.value;
        rep.ratio = safe_ratio(l.value, r.value);
        rep.err_est = l.error + r.error;
        const bool trivial = rep.lhs == 0.0 && rep.rhs == 0.0;
        // Unweighted mode asserts positivity; the weighted slack is fitted over a family.
        if (weighted) {
            rep.verdict = std::isfinite(rep.ratio) || trivial ? Verdict::holds : Verdict::inconclusive;
        } else {
            rep.verdict = trivial || (rep.lhs > 0.0 && std::isfinite(rep.ratio)) ? Verdict::holds : Verdict::fails;
        }
    } catch (const LabError& err) {
        if (err.kind() != ErrorKind::NonIntegrable) throw;
        rep.lhs = rep.rhs = rep.ratio = rep.err_est = std::numeric_limits<double>::quiet_NaN();
        rep.verdict = Verdict::inconclusive;
    }
    return rep;
}

AlphaFamilyFit fit_alpha_family(const std::vector<SampledFunction>& family, double alpha) {
    AlphaFamilyFit fit;
    fit.alpha = alpha;
    fit.inf_ratio = std::numeric_limits<double>::infinity();
    bool all_positive = true;
    std::vector<InequalityReport> weighted;
    std::vector<double> sup2;
    for (const auto& g : family) {
        auto plain = verify_alpha(g, alpha, false);
        if (plain.verdict != Verdict::holds) all_positive = false;
        if (plain.rhs > 0.0) fit.inf_ratio = std::min(fit.inf_ratio, plain.ratio);
        fit.reports.push_back(plain);
        weighted.push_back(verify_alpha(g, alpha, true));
        sup2.push_back(g.sup_norm() * g.sup_norm());
    }
    // Lower-order slack: the weighted lhs is compared with half the unweighted rate.
    fit.c = 0.5 * fit.inf_ratio;
    fit.C = 0.0;
    for (std::size_t k = 0; k < weighted.size(); ++k) {
        if (sup2[k] > 0.0) fit.C = std::max(fit.C, (fit.c * weighted[k].rhs - weighted[k].lhs) / sup2[k]);
    }
    bool weighted_ok = true;
    for (std::size_t k = 0; k < weighted.size(); ++k) {
        auto& w = weighted[k];
        const double quadratic = w.rhs;
        w.params.push_back({"c", fit.c});
        w.params.push_back({"C", fit.C});
        w.rhs = fit.c * quadratic - fit.C * sup2[k];
        w.ratio = safe_ratio(w.lhs, w.rhs);
        w.verdict = judge(w.lhs, w.rhs, 1.0, w.err_est, Orientation::lower);
        if (w.verdict != Verdict::holds) weighted_ok = false;
        fit.reports.push_back(w);
    }
    fit.holds = all_positive && fit.inf_ratio > 0.0 && std::isfinite(fit.inf_ratio) && std::isfinite(fit.C) && weighted_ok;
    return fit;
}

}  // namespace nonlocal
