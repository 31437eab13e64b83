#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "nonlocal/report.hpp"
#include "nonlocal/sampled_function.hpp"

namespace nonlocal {

// Radial profile g(|x|) in R^n. Closed forms are used for quadrature when
// present; otherwise the samples are interpolated (modified Akima).
struct RadialProfile {
    int dimension = 2;
    std::vector<double> radii;
    std::vector<double> values;
    std::vector<double> derivative;
    Monotonicity monotone = Monotonicity::unknown;
    std::function<double(double)> value_fn;
    std::function<double(double)> derivative_fn;

    static RadialProfile from_function(int n, std::function<double(double)> g, std::function<double(double)> dg,
                                       Monotonicity monotone = Monotonicity::nonincreasing, double r_max = 20.0,
                                       std::size_t count = 2048);
    static RadialProfile from_samples(int n, std::vector<double> radii, std::vector<double> values,
                                      std::vector<double> derivative, Monotonicity monotone);

    double r_max() const { return radii.back(); }
    double value(double r) const;
    double slope(double r) const;  // zero beyond r_max
};

// Quadrature resolution: panels are split `refine` times and the adaptive
// radial rule runs to `tolerance`.
struct RadialResolution {
    int refine = 1;
    double tolerance = 1e-9;
};

// int over the unit sphere of omega_n / |e_n - eps omega|^(n - alpha), eps in [0, 1).
// Throws NonIntegrable when two angular resolutions disagree.
double sphere_kernel_integral(double epsilon, int n, double alpha, RadialResolution res = {});

// -(Lambda^-alpha grad g)(x) . x/|x| at |x| = r, with the dimensional constant set to 1.
double radial_fractional_gradient(const RadialProfile& g, double r, double alpha, RadialResolution res = {});

// 1 > n (n+2-alpha+delta) (2/(2n+2-alpha+delta))^2: the Hardy step of the
// weighted radial bound. Returns the right-hand side.
double hardy_step_value(int n, double alpha, double delta);
bool hardy_step_condition(int n, double alpha, double delta);

struct HardyStepPoint {
    int n;
    double alpha;
    double delta;
    double value;
    bool holds;
};

// n in {2,3,4}, alpha in {0.5,1,1.5}, delta in {-0.5,0,0.5}.
std::vector<HardyStepPoint> hardy_step_sweep();

// Pointwise radial lower bound ("radial_pointwise", fitted inf ratio over an
// r-grid) and the weighted integral bound ("radial_weighted", global ratio).
// Both run with unnormalized constants.
std::pair<InequalityReport, InequalityReport> verify_radial_bounds(const RadialProfile& g, double alpha, double delta,
                                                                   RadialResolution res = {});

}  // namespace nonlocal
