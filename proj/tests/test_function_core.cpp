#include <cmath>
#include <numbers>

#include "doctest.h"
#include "nonlocal/errors.hpp"
#include "nonlocal/quadrature.hpp"

using namespace nonlocal;

TEST_CASE("periodic grid spacing and origin") {
    const auto g = Grid1D::periodic(8, std::numbers::pi);
    CHECK(g.spacing() == doctest::Approx(std::numbers::pi / 4).epsilon(1e-15));
    CHECK(g.node(g.origin_index()) == 0.0);
    CHECK_THROWS_AS(Grid1D::periodic(12, 1.0), LabError);
}

TEST_CASE("graded grid reaches small scales") {
    const auto g = Grid1D::graded(64, 1.0, 0.5);
    CHECK(g.nodes().front() < 1e-9);
    CHECK(g.nodes().back() == 1.0);
    const auto d = Grid1D::graded();
    CHECK(d.size() == 2048);
    CHECK(d.nodes().front() < 1e-11);
}

TEST_CASE("integrate x over (0,1) on a graded grid") {
    auto g = share(Grid1D::graded(512, 1.0, std::pow(10.0, -1.0 / 30)));
    auto f = SampledFunction::sample(g, [](double x) { return x; });
    const auto r = integrate_samples(*g, f.values(), 0.0, 1.0);
    CHECK(std::abs(r.value - 0.5) < 1e-7);
    double by_weights = 0.0;
    for (std::size_t i = 0; i < g->size(); ++i) by_weights += g->weights()[i] * g->node(i);
    CHECK(std::abs(by_weights - 0.5) < 1e-8);
}

TEST_CASE("weighted integrals against power and exponential weights") {
    auto g = share(Grid1D::graded());
    auto sq = SampledFunction::sample(g, [](double x) { return x * x; });
    const auto a = weighted_integral(sq, WeightSpec::power(2.0), 0.0, 1.0);
    CHECK(std::abs(a.value - 1.0) < 1e-6);
    auto xe = SampledFunction::sample(g, [](double x) { return x * std::exp(-x); });
    const auto b = weighted_integral(xe, WeightSpec::exp_over_x(), 0.0, kInfinity);
    CHECK(std::abs(b.value - 0.5) < 1e-6);
}

TEST_CASE("non-integrable singularity is reported") {
    auto g = share(Grid1D::graded());
    auto one = SampledFunction::sample(g, [](double) { return 1.0; });
    CHECK_THROWS_AS(weighted_integral(one, WeightSpec::power(1.5), 0.0, 1.0), LabError);
    CHECK_THROWS_AS(weighted_integral(one, WeightSpec::unit(), 0.0, kInfinity), LabError);
}

TEST_CASE("cumulative primitive of cos is sin") {
    auto g = share(Grid1D::periodic(1024, std::numbers::pi));
    auto c = SampledFunction::sample(g, [](double x) { return std::cos(x); }, Parity::even);
    const auto F = cumulative_primitive(c);
    double worst = 0.0;
    for (std::size_t i = 0; i < g->size(); ++i) worst = std::max(worst, std::abs(F[i] - std::sin(g->node(i))));
    CHECK(worst < 1e-6);
    CHECK(F.parity() == Parity::odd);
}

TEST_CASE("primitive of nonnegative samples is nondecreasing") {
    auto g = share(Grid1D::graded());
    auto f = SampledFunction::sample(g, [](double x) { return std::exp(-x) * (1.0 + std::sin(3 * x)); });
    const auto F = cumulative_primitive(f);
    for (std::size_t i = 1; i < F.size(); ++i) CHECK(F[i] >= F[i - 1]);
    CHECK(std::abs(F[F.size() - 1] - 1.3) < 1e-5);
}

TEST_CASE("finite-difference derivatives") {
    auto p = share(Grid1D::periodic(256, std::numbers::pi));
    auto s = SampledFunction::sample(p, [](double x) { return std::cos(3 * x); }, Parity::even);
    const auto ds = fd_derivative(s);
    double worst = 0.0;
    for (std::size_t i = 0; i < p->size(); ++i) worst = std::max(worst, std::abs(ds[i] + 3 * std::sin(3 * p->node(i))));
    CHECK(worst < 1e-7);

    auto g = share(Grid1D::graded());
    auto e = SampledFunction::sample(g, [](double x) { return std::exp(-x * x); }, Parity::even);
    const auto de = fd_derivative(e);
    double rel = 0.0;
    for (std::size_t i = 0; i < g->size(); ++i) {
        const double x = g->node(i);
        if (x > 5.0) break;
        rel = std::max(rel, std::abs(de[i] + 2 * x * std::exp(-x * x)) / std::max(x, 1e-300));
    }
    CHECK(rel < 1e-5);
}

TEST_CASE("Fornberg weights reproduce central differences") {
    const std::vector<double> nodes{-1.0, 0.0, 1.0};
    const auto w = fd_weights(0.0, nodes, 2);
    CHECK(w[0] == doctest::Approx(1.0));
    CHECK(w[1] == doctest::Approx(-2.0));
    CHECK(w[2] == doctest::Approx(1.0));
}
