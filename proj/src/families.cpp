#include "nonlocal/families.hpp"

#include <cmath>
#include <cstdio>

namespace nonlocal {
namespace {

std::string label(const char* kind, double a, double b = 0.0) {
    char buf[96];
    if (b == 0.0) {
        std::snprintf(buf, sizeof buf, "%s(w=%.4g)", kind, a);
    } else {
        std::snprintf(buf, sizeof buf, "%s(%.4g,%.4g)", kind, a, b);
    }
    return buf;
}

// exp(-1/(1-u^2)) on |u| < 1
double bump(double u) {
    const double s = 1.0 - u * u;
    return s > 0.0 ? std::exp(-1.0 / s) : 0.0;
}

}  // namespace

std::vector<double> log_spaced(double lo, double hi, int count) {
    std::vector<double> out(count);
    for (int k = 0; k < count; ++k) out[k] = lo * std::pow(hi / lo, count == 1 ? 0.0 : double(k) / (count - 1));
    return out;
}

TestFunction TestFunction::dilated(double L) const {
    auto f = value;
    char buf[32];
    std::snprintf(buf, sizeof buf, "[x/%g]", L);
    return {name + buf, [f, L](double x) { return f(x / L); }};
}

std::vector<TestFunction> monotone_family() {
    std::vector<TestFunction> out;
    const auto widths = log_spaced(0.25, 4.0, 8);
    for (double w : widths) {
        out.push_back({label("gauss", w), [w](double x) { return std::exp(-(x / w) * (x / w)); }});
    }
    for (int m = 1; m <= 3; ++m) {
        for (double w : widths) {
            out.push_back({label("rational", w, m), [w, m](double x) { return std::pow(1.0 + (x / w) * (x / w), -m); }});
        }
    }
    for (double a : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
        for (double rel : {0.2, 0.4, 0.8}) {
            const double b = rel * a;
            out.push_back({label("plateau", a, b), [a, b](double x) {
                               return 0.5 * (std::erf((x + a) / b) - std::erf((x - a) / b));
                           }});
        }
    }
    return out;
}

std::vector<TestFunction> increasing_family() {
    std::vector<TestFunction> out;
    for (const auto& g : monotone_family()) {
        const double g0 = g.value(0.0);
        auto v = g.value;
        out.push_back({"rise-" + g.name, [v, g0](double x) { return g0 - v(x); }});
    }
    return out;
}

std::vector<TestFunction> nonnegative_family() {
    std::vector<TestFunction> out;
    const auto widths = log_spaced(0.25, 4.0, 8);
    for (int m = 1; m <= 3; ++m) {
        for (double w : widths) {
            out.push_back({label("powexp", w, m), [w, m](double t) {
                               const double s = std::abs(t) / w;
                               return std::pow(s, m) * std::exp(-s);
                           }});
        }
    }
    for (double c : widths) {
        out.push_back({label("bump", c), [c](double t) { return bump((std::abs(t) - c) / (0.5 * c)); }});
    }
    return out;
}

SampledFunction sample_even(const GridPtr& grid, const TestFunction& f, Monotonicity monotone) {
    return SampledFunction::sample(grid, f.value, Parity::even, monotone);
}

}  // namespace nonlocal
