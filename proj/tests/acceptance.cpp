// Acceptance suite: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "nonlocal/errors.hpp"
#include "nonlocal/families.hpp"
#include "nonlocal/inequalities.hpp"
#include "nonlocal/operators.hpp"
#include "nonlocal/radial.hpp"
#include "nonlocal/simulator.hpp"

using namespace nonlocal;
using std::numbers::pi;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
        }
    }
    void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

SampledFunction graded(const TestFunction& f, Monotonicity m = Monotonicity::unknown) {
    return sample_even(default_graded_grid(), f, m);
}

SampledFunction periodic(const TestFunction& f) {
    return sample_even(default_periodic_embedding(), f, Monotonicity::nonincreasing);
}

Outcome operator_fidelity() {
    Outcome o;
    const auto t0 = Clock::now();
    auto g = share(Grid1D::periodic(4096, 200.0));
    auto c = SampledFunction::sample(g, [](double x) { return std::cos(x * pi / 200.0 * 64.0); }, Parity::even);
    const auto hc = hilbert_transform(c);
    double err_cos = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) err_cos = std::max(err_cos, std::abs(hc[i] - std::sin(g->node(i) * pi / 200.0 * 64.0)));
    o.require(err_cos <= 1e-5, "H cos = sin (err " + num(err_cos) + ")");

    auto f = SampledFunction::sample(g, [](double x) { return 1.0 / (1.0 + x * x); }, Parity::even);
    const auto h = hilbert_zero_padded(f, 8);
    double err_l = 0.0, err_pv = 0.0;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double x = g->node(i);
        if (std::abs(x) > 10.0) continue;
        err_l = std::max(err_l, std::abs(h[i] - x / (1.0 + x * x)));
        if (i % 16 == 0) idx.push_back(i);
    }
    const auto pv = hilbert_pv_at(f, idx);
    for (std::size_t k = 0; k < idx.size(); ++k) err_pv = std::max(err_pv, std::abs(h[idx[k]] - pv[k]));
    o.require(err_l / 0.5 <= 1e-5, "H Lorentzian (rel " + num(err_l / 0.5) + ")");
    o.note("PV cross-check rel " + num(err_pv / 0.5));

    auto m = SampledFunction::sample(g, [](double x) { return std::exp(-x * x) * std::sin(3.0 * x) + std::cos(0.5 * pi * x); });
    const auto hhm = hilbert_transform(hilbert_transform(m));
    double err_sq = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) err_sq = std::max(err_sq, std::abs(hhm[i] + m[i]));
    o.require(err_sq <= 1e-10, "H^2 = -Id (err " + num(err_sq) + ")");
    const double t = seconds_since(t0);
    o.require(t < 1.0, "runtime " + num(t) + " s");
    o.note("H cos err " + num(err_cos) + ", Lorentzian rel " + num(err_l / 0.5) + ", H^2 err " + num(err_sq) +
           ", " + num(t) + " s");
    return o;
}

Outcome pointwise_bound() {
    Outcome o;
    double worst = std::numeric_limits<double>::infinity();
    int failing = 0;
    for (const auto& f : monotone_family()) {
        const auto b = check_pointwise_lower_bound(make_profile(f, Monotonicity::nonincreasing));
        worst = std::min(worst, b.worst);
        if (!(b.worst >= -1e-6)) ++failing;
    }
    o.require(failing == 0, std::to_string(failing) + " functions below -1e-6 scale");
    o.note("50 functions, worst margin/scale " + num(worst));
    return o;
}

Outcome ccf_lemma() {
    Outcome o;
    const double c0 = ccf_constant(0.0);
    o.require(std::abs(c0 - 1.0 / (3.0 * pi)) <= 4.0 * std::numeric_limits<double>::epsilon() * c0,
              "C_0 = 1/(3 pi)");
    int failing = 0, total = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    for (const auto& f : monotone_family()) {
        const auto g = make_profile(f, Monotonicity::nonincreasing);
        for (double d : {-0.5, 0.0, 0.5}) {
            const auto r = verify_ccf(g, d);
            ++total;
            if (r.verdict != Verdict::holds) ++failing;
            if (!r.stated_constant || *r.stated_constant != ccf_constant(d)) ++failing;
            min_margin = std::min(min_margin, r.ratio / ccf_constant(d));
        }
    }
    o.require(failing == 0, std::to_string(failing) + " of " + std::to_string(total) + " reports");
    o.note(std::to_string(total) + " reports, min ratio/C_delta " + num(min_margin));
    return o;
}

Outcome hardy_lemma() {
    Outcome o;
    const std::pair<double, double> cases[] = {{1.0, 1.0}, {2.0, 1.0}, {2.0, 2.0}};
    for (auto [p, rt] : cases) {
        int failing = 0, inconclusive = 0;
        double worst = 0.0;
        const double constant = std::pow(p / rt, p);
        for (const auto& f : nonnegative_family()) {
            const auto r = verify_hardy(graded(f), p, rt);
            if (r.verdict == Verdict::inconclusive) ++inconclusive;
            if (r.verdict == Verdict::fails || r.lhs > constant * r.rhs + 10.0 * r.err_est) ++failing;
            worst = std::max(worst, r.ratio / constant);
        }
        const std::string tag = "(p,r)=(" + num(p) + "," + num(rt) + ")";
        o.require(failing == 0 && inconclusive == 0, tag + ": " + std::to_string(failing) + " fail, " +
                                                         std::to_string(inconclusive) + " inconclusive");
        o.note(tag + " max ratio/constant " + num(worst));
    }
    return o;
}

Outcome kiselev_inequality() {
    Outcome o;
    const std::pair<double, double> cases[] = {{1.0, 0.5}, {1.0, 1.0}, {1.0, 2.0}, {2.0, 0.5}, {2.0, 1.0}, {2.0, 2.0}};
    int failing[6] = {};
    double min_ratio[6], drift[6] = {};
    std::fill(std::begin(min_ratio), std::end(min_ratio), std::numeric_limits<double>::infinity());
    for (const auto& f : increasing_family()) {
        double base[6];
        for (double L : {1.0, 2.0, 8.0}) {
            const auto g = make_profile(graded(L == 1.0 ? f : f.dilated(L), Monotonicity::nondecreasing));
            for (int i = 0; i < 6; ++i) {
                const auto r = verify_kiselev(g, cases[i].first, cases[i].second, KiselevDomain::half_line);
                if (L == 1.0) {
                    base[i] = r.ratio;
                    if (r.verdict != Verdict::holds) ++failing[i];
                    min_ratio[i] = std::min(min_ratio[i], r.ratio);
                } else {
                    drift[i] = std::max(drift[i], std::abs(r.ratio - base[i]) / std::abs(base[i]));
                }
            }
        }
    }
    for (int i = 0; i < 6; ++i) {
        const auto [p, sigma] = cases[i];
        const std::string tag = "p=" + num(p) + " sigma=" + num(sigma);
        o.require(failing[i] == 0, tag + ": " + std::to_string(failing[i]) + " fail");
        o.require(drift[i] <= 1e-3, tag + " scaling drift " + num(drift[i]));
        o.note(tag + " min ratio " + num(min_ratio[i]) + " vs C " + num(kiselev_proof_constant(p, sigma)) +
               ", scaling drift " + num(drift[i]));
    }
    return o;
}

Outcome counterexample() {
    Outcome o;
    const auto t0 = Clock::now();
    const auto ce = construct_counterexample(1.0);
    const double t = seconds_since(t0);
    o.require(ce.functional_value < 0.0, "functional " + num(ce.functional_value));
    o.require(ce.affine_residual <= 1e-6, "affine residual " + num(ce.affine_residual));
    o.require(t < 30.0, "runtime " + num(t) + " s");
    o.note("t=" + num(ce.t) + " functional " + num(ce.functional_value) + ", residual " + num(ce.affine_residual) +
           ", " + num(t) + " s");
    return o;
}

Outcome energy_identity() {
    Outcome o;
    const TestFunction fns[] = {
        {"gaussian", [](double x) { return std::exp(-x * x); }},
        {"sech", [](double x) { return 1.0 / std::cosh(x); }},
        {"quartic_gaussian", [](double x) { return std::exp(-x * x * x * x); }},
    };
    for (const auto& f : fns) {
        const auto id = hilbert_energy_identity(graded(f));
        o.require(id.residual <= 1e-3, f.name + " residual " + num(id.residual));
        o.note(f.name + " residual " + num(id.residual));
    }
    return o;
}

Outcome drift_lemmas() {
    Outcome o;
    int failing = 0;
    for (const auto& f : monotone_family()) {
        if (verify_exp_weighted_bound(make_profile(f, Monotonicity::nonincreasing)).verdict != Verdict::holds) ++failing;
    }
    o.require(failing == 0, "exp-weighted bound: " + std::to_string(failing) + " fail");

    std::vector<SampledFunction> family;
    for (const auto& f : monotone_family()) family.push_back(periodic(f));
    for (double alpha : {0.5, 1.5}) {
        const auto fit = fit_alpha_family(family, alpha);
        o.require(fit.holds && fit.inf_ratio > 0.0 && fit.c > 0.0, "alpha=" + num(alpha) + " fit");
        o.note("alpha=" + num(alpha) + " inf ratio " + num(fit.inf_ratio) + ", c " + num(fit.c) + ", C " + num(fit.C));
    }

    const TestFunction gauss{"gaussian", [](double x) { return std::exp(-x * x); }};
    const double a1 = verify_alpha(periodic(gauss), 1.0, false).lhs;
    const double hil = hilbert_energy_identity(graded(gauss)).lhs;
    const double rel = std::abs(a1 - hil) / std::abs(hil);
    o.require(rel <= 1e-4, "alpha=1 reduction rel " + num(rel));
    o.note("alpha=1 reduction rel " + num(rel));

    for (double alpha : {0.3, 0.7, 1.3, 1.8}) {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double x = std::pow(10.0, -3.0 + 6.0 * i / 99.0);
            for (int j = 0; j < 100; ++j) {
                const double y = std::pow(10.0, -3.0 + 6.0 * (j + 0.5) / 100.0);
                const double r = std::abs(x - y), s = x + y;
                const double h = alpha_kernel_h(x, y, alpha);
                const double hx = alpha < 1.0 ? (1 - alpha) * (2 - alpha) * (std::pow(r, alpha - 3) + std::pow(s, alpha - 3))
                                              : (2 - alpha) * (std::pow(r, alpha - 3) + std::pow(s, alpha - 3));
                const double d = hx / x - h / (x * x);
                worst = std::min(worst, d / (std::abs(hx / x) + std::abs(h / (x * x))));
            }
        }
        o.require(worst >= -1e-8, "kernel monotonicity alpha=" + num(alpha) + ": " + num(worst));
    }
    return o;
}

Outcome radial() {
    Outcome o;
    const std::pair<int, double> cases[] = {{2, 1.0}, {3, 0.5}, {2, 1.5}};
    for (auto [n, alpha] : cases) {
        o.require(sphere_kernel_integral(0.0, n, alpha) == 0.0, "S(0) != 0 for n=" + std::to_string(n));
        double lo = std::numeric_limits<double>::infinity();
        for (int k = 0; k <= 40; ++k) {
            const double eps = 0.05 + (0.9 - 0.05) * k / 40.0;
            lo = std::min(lo, sphere_kernel_integral(eps, n, alpha) / eps);
        }
        const std::string tag = "(n,alpha)=(" + std::to_string(n) + "," + num(alpha) + ")";
        o.require(lo > 0.0, tag + " min S/eps " + num(lo));
        o.note(tag + " min S/eps " + num(lo));
    }
    int failing = 0, total = 0;
    std::string first;
    for (const auto& p : hardy_step_sweep()) {
        ++total;
        if (!p.holds) {
            if (failing++ == 0)
                first = "n=" + std::to_string(p.n) + " alpha=" + num(p.alpha) + " delta=" + num(p.delta) + " value " +
                        num(p.value);
        }
    }
    o.require(failing == 0, "Hardy step: " + std::to_string(failing) + " of " + std::to_string(total) +
                                " sweep points fail (first " + first + ")");
    return o;
}

SimulationConfig sim_config(Model m, std::size_t n, double half_length = 40.0 * pi) {
    SimulationConfig c;
    c.model = m;
    c.grid = simulation_grid(n, half_length);
    return c;
}

Outcome simulator(Clock::time_point suite_start) {
    Outcome o;
    {
        double worst = 0.0;
        for (double gamma : {0.5, 1.0, 1.5}) {
            auto c = sim_config(Model::hilbert_transport, 1024);
            c.kappa = 1.0;
            c.gamma = gamma;
            c.zero_velocity = true;
            c.t_end = 1.0;
            c.monitors = {false, true, true, false};
            const double k = 5.0 * pi / c.grid->half_length();
            auto s = initialize(c, [k](double x) { return std::cos(k * x); });
            while (s.t < c.t_end - 1e-12) s = step(s, c);
            const double decay = std::exp(-std::pow(k, gamma) * s.t);
            for (std::size_t j = 0; j < s.theta.size(); ++j)
                worst = std::max(worst, std::abs(s.theta[j] - decay * std::cos(k * c.grid->node(j))) / s.t);
        }
        o.require(worst <= 1e-8, "linear decay err/t " + num(worst));
        o.note("linear decay err/t " + num(worst));
    }
    {
        double worst = 0.0;
        for (auto [m, gamma] : {std::pair{Model::hilbert_transport, 1.0}, {Model::hilbert_transport, 0.5}, {Model::reversed_hilbert, 1.0}}) {
            auto c = sim_config(m, 4096);
            c.kappa = 1.0;
            c.gamma = gamma;
            c.t_end = 1.0;
            const auto series = run_with_monitors(c, [](double x) { return std::exp(-x * x); });
            for (const auto& r : series.records) worst = std::max(worst, r.sup / series.sup0 - 1.0);
        }
        o.require(worst <= 1e-6, "max principle excess " + num(worst));
        o.note("max principle excess " + num(worst));
    }
    {
        // Inviscid reversed-Hilbert model steepens a Gaussian of amplitude 4.
        auto c = sim_config(Model::reversed_hilbert, 32768, 5.0 * pi);
        c.t_end = 0.35;
        c.output_interval = 0.0025;
        auto theta0 = [](double x) { return 4.0 * std::exp(-x * x); };
        const auto coarse = run_with_monitors(c, theta0);
        c.grid = simulation_grid(65536, 5.0 * pi);
        const auto fine = run_with_monitors(c, theta0);
        double growth = 0.0, j_drift = 0.0, g_drift = 0.0;
        for (const auto& r : fine.records)
            if (r.resolved) growth = std::max(growth, r.max_grad / fine.max_grad0);
        int common = 0;
        for (std::size_t i = 0; i < std::min(coarse.records.size(), fine.records.size()); ++i) {
            const auto& a = coarse.records[i];
            const auto& b = fine.records[i];
            if (!(a.resolved && b.resolved)) break;
            ++common;
            j_drift = std::max(j_drift, std::abs(a.J - b.J) / std::abs(b.J));
            g_drift = std::max(g_drift, std::abs(a.max_grad - b.max_grad) / b.max_grad);
        }
        o.require(growth >= 10.0, "gradient growth " + num(growth));
        o.require(common >= 2 && j_drift <= 1e-3, "self-convergence of J " + num(j_drift));
        o.note("gradient growth " + num(growth) + "x, J drift " + num(j_drift) + " (max_grad drift " + num(g_drift) +
               ") over " + std::to_string(common) + " common times");
    }
    {
        auto c = sim_config(Model::reversed_hilbert, 16384);
        c.kappa = 1.0;
        c.gamma = 0.25;
        c.t_end = 1.0;
        auto theta0 = [](double x) { return 6.0 * std::exp(-x * x); };
        const auto coarse = run_with_monitors(c, theta0);
        c.grid = simulation_grid(32768);
        const auto fine = run_with_monitors(c, theta0);
        const auto rep = riccati_check(coarse, fine);
        o.require(rep.holds, "Riccati C2 " + num(rep.c2_coarse) + " vs " + num(rep.c2_fine));
        o.note("Riccati C2 " + num(rep.c2_coarse) + " / " + num(rep.c2_fine) + (rep.j_increasing ? ", J increasing" : ""));
    }
    const double t = seconds_since(suite_start);
    o.require(t < 300.0, "suite runtime " + num(t) + " s");
    o.note("suite runtime so far " + num(t) + " s");
    return o;
}

}  // namespace

int main() {
    const auto start = Clock::now();
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"operator fidelity", operator_fidelity},
        {"pointwise lower bound for H g", pointwise_bound},
        {"weighted lower bound with C_delta", ccf_lemma},
        {"Hardy inequality with (p/r)^p", hardy_lemma},
        {"Kiselev inequality and scaling", kiselev_inequality},
        {"counterexample without monotonicity", counterexample},
        {"Hilbert energy identity", energy_identity},
        {"drift lower bounds and kernel monotonicity", drift_lemmas},
        {"radial kernel and Hardy step", radial},
        {"simulator", [start] { return simulator(start); }},
    };
    int failures = 0, index = 0;
    for (const auto& [name, run] : criteria) {
        ++index;
        Outcome out;
        const auto t0 = Clock::now();
        try {
            out = run();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        if (!out.pass) ++failures;
        std::printf("criterion %d: %s  %s (%.1f s)  %s\n", index, out.pass ? "PASS" : "FAIL", name,
                    seconds_since(t0), out.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of 10 criteria pass, %.1f s\n", 10 - failures, seconds_since(start));
    return failures == 0 ? 0 : 1;
}
