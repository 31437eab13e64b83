#include <cmath>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "doctest.h"
#include "json.hpp"
#include "nonlocal/errors.hpp"
#include "nonlocal/simulator.hpp"

using namespace nonlocal;

namespace {

SimulationConfig base_config(Model m, std::size_t n = 4096) {
    SimulationConfig c;
    c.model = m;
    c.grid = simulation_grid(n);
    c.t_end = 1.0;
    c.output_interval = 0.05;
    return c;
}

auto gaussian(double a) {
    return [a](double x) { return a * std::exp(-x * x); };
}

}  // namespace

TEST_CASE("blow-up functional against a direct quadrature") {
    boost::math::quadrature::exp_sinh<double> es;
    const double unit = es.integrate([](double x) { return x < 1e-8 ? x * std::exp(-x) : -std::expm1(-x * x) / x * std::exp(-x); });
    const auto c = base_config(Model::hilbert_transport);
    for (double a : {1.0, 2.5}) {
        auto s = initialize(c, gaussian(a));
        CHECK(s.J == doctest::Approx(a * unit).epsilon(1e-9));
    }
    auto zero = initialize(c, [](double) { return 0.0; });
    CHECK(zero.J == 0.0);
    CHECK(zero.max_grad == 0.0);
    auto later = step(step(zero, c), c);
    CHECK(later.theta.sup_norm() == 0.0);
}

TEST_CASE("initial data checks") {
    auto c = base_config(Model::hilbert_transport);
    CHECK_THROWS_AS(initialize(c, [](double x) { return std::cos(x); }), LabError);
    c.kappa = 1.0;
    c.monitors.J_functional = false;
    c.monitors.riccati = false;
    CHECK_NOTHROW(initialize(c, [](double x) { return std::cos(x); }));
    auto odd = SampledFunction::sample(c.grid, [](double x) { return x * std::exp(-x * x); }, Parity::odd);
    CHECK_THROWS_AS(initialize(c, odd), LabError);
}

TEST_CASE("pure dissipation decays each mode exactly") {
    auto c = base_config(Model::hilbert_transport, 1024);
    c.kappa = 1.0;
    c.gamma = 0.5;
    c.zero_velocity = true;
    c.monitors = {false, true, true, false};
    const double k = 5.0 * M_PI / c.grid->half_length();
    auto s = initialize(c, [k](double x) { return std::cos(k * x); });
    while (s.t < c.t_end - 1e-12) s = step(s, c);
    const double decay = std::exp(-std::pow(k, 0.5) * s.t);
    const auto x = c.grid->nodes();
    double err = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) err = std::max(err, std::abs(s.theta[j] - decay * std::cos(k * x[j])));
    CHECK(err <= 1e-8 * s.t);
}

TEST_CASE("dissipative run keeps the maximum principle and parity") {
    auto c = base_config(Model::hilbert_transport);
    c.kappa = 1.0;
    c.gamma = 1.0;
    auto series = run_with_monitors(c, gaussian(1.0));
    CHECK(series.stop == StopReason::reached_end);
    for (const auto& r : series.records) CHECK(r.sup <= series.sup0 * (1.0 + 1e-6));
    CHECK(series.odd_part_max < 1e-10);
}

TEST_CASE("subcritical run stays resolved") {
    auto c = base_config(Model::hilbert_transport);
    c.kappa = 1.0;
    c.gamma = 1.5;
    auto series = run_with_monitors(c, gaussian(0.5));
    CHECK(series.stop == StopReason::reached_end);
    for (const auto& r : series.records) {
        CHECK(r.resolved);
        CHECK(r.max_grad <= series.max_grad0 * 1.01);
    }
}

TEST_CASE("inviscid run converges under grid refinement") {
    auto c = base_config(Model::hilbert_transport, 4096);
    c.t_end = 2.0;
    auto coarse = run_with_monitors(c, gaussian(1.0));
    c.grid = simulation_grid(8192);
    auto fine = run_with_monitors(c, gaussian(1.0));
    const std::size_t m = std::min(coarse.records.size(), fine.records.size());
    int compared = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& a = coarse.records[i];
        const auto& b = fine.records[i];
        if (!(a.resolved && b.resolved)) break;
        CHECK(a.t == doctest::Approx(b.t));
        CHECK(a.max_grad == doctest::Approx(b.max_grad).epsilon(1e-3));
        CHECK(a.J == doctest::Approx(b.J).epsilon(1e-3));
        ++compared;
    }
    CHECK(compared >= 3);
}

TEST_CASE("alpha model at alpha = 1 is the reversed Hilbert model") {
    auto c = base_config(Model::reversed_hilbert, 2048);
    c.t_end = 0.1;
    c.output_interval = 0.02;
    c.stop_on_resolution_loss = false;
    auto a = run_with_monitors(c, gaussian(2.0));
    c.model = Model::alpha_model;
    c.alpha = 1.0;
    auto b = run_with_monitors(c, gaussian(2.0));
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) CHECK(a.records[i].J == doctest::Approx(b.records[i].J).epsilon(1e-12));
}

TEST_CASE("Riccati fit") {
    auto c = base_config(Model::reversed_hilbert, 1024);
    c.kappa = 1.0;
    c.gamma = 0.25;
    auto zero = run_with_monitors(c, [](double) { return 0.0; });
    CHECK(fit_riccati_constant(zero) == 0.0);
    auto rep = riccati_check(zero, zero);
    CHECK(rep.holds);
    TimeSeries tiny;
    tiny.records.push_back({0.0, 0.0, 0.0, 0.0, 0.0, true});
    CHECK_THROWS_AS(fit_riccati_constant(tiny), LabError);
}

TEST_CASE("Cauchy-Schwarz step along an alpha-model trajectory") {
    auto c = base_config(Model::alpha_model, 4096);
    c.alpha = 0.5;
    c.t_end = 0.2;
    auto s = initialize(c, gaussian(2.0));
    int checked = 0;
    while (s.t < c.t_end - 1e-12 && s.resolved) {
        const auto cs = cauchy_schwarz_check(s.theta, c.alpha);
        CHECK(cs.moment == doctest::Approx(boost::math::tgamma(1.5)).epsilon(1e-10));
        CHECK(cs.lhs <= cs.rhs * (1.0 + 1e-8));
        s = step(s, c);
        ++checked;
    }
    CHECK(checked > 3);
}

TEST_CASE("time series output") {
    auto c = base_config(Model::hilbert_transport);
    c.kappa = 1.0;
    c.t_end = 0.1;
    c.output_interval = 0.05;
    auto series = run_with_monitors(c, gaussian(1.0));
    std::ostringstream os;
    write_csv(os, series);
    const auto text = os.str();
    CHECK(text.rfind("t,J,dJdt,max_grad,sup,resolved\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
    auto meta = nlohmann::json::parse(metadata_json(c, series, 0.0));
    CHECK(meta["model"] == "hilbert_transport");
    CHECK(meta["grid_size"] == 4096);
    CHECK(model_from_string("section4") == Model::reversed_hilbert);
    CHECK_THROWS_AS(model_from_string("burgers"), LabError);
}
