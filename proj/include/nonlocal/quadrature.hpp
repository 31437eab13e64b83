#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "nonlocal/sampled_function.hpp"

namespace nonlocal {

enum class WeightFamily { power, power_exp, exp_over_x };

/**
 * Integration weight on (0, inf).
 *   power       x^(-exponent)
 *   power_exp   x^(-exponent) * e^(-x)
 *   exp_over_x  e^(-x) / x          (exponent ignored)
 */
struct WeightSpec {
    WeightFamily family = WeightFamily::power;
    double exponent = 0.0;

    static WeightSpec power(double e) { return {WeightFamily::power, e}; }
    static WeightSpec power_exp(double e) { return {WeightFamily::power_exp, e}; }
    static WeightSpec exp_over_x() { return {WeightFamily::exp_over_x, 1.0}; }
    static WeightSpec unit() { return {WeightFamily::power, 0.0}; }

    double operator()(double x) const;
    // Order of the singularity at 0 (w ~ x^-order).
    double singularity_order() const { return family == WeightFamily::exp_over_x ? 1.0 : exponent; }
    bool decays_exponentially() const { return family != WeightFamily::power; }
    std::string describe() const;
};

struct QuadResult {
    double value = 0.0;
    // |fine - coarse| over two grid resolutions (plus end-model terms).
    double error = 0.0;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/**
 * Integrates node samples of an integrand over [lower, upper] on the grid.
 *
 * Graded grids: trapezoid in u = log x, Richardson-combined with the rule on
 * every other node; the cell (0, x_0) uses a power-law model c*x^k fitted
 * through the two smallest nodes; upper = inf adds a power-law tail fitted
 * through the two largest nodes. Periodic grids: composite trapezoid in x,
 * with the same two-level Richardson combination.
 *
 * Throws DomainError if lower >= upper, NonIntegrable if an end model is not
 * integrable or the two resolutions disagree by more than 1e-3 relative.
 */
QuadResult integrate_samples(const Grid1D& grid, std::span<const double> integrand, double lower,
                             double upper);

QuadResult weighted_integral(const SampledFunction& f, const WeightSpec& w, double lower,
                             double upper);

// F(x) = int_0^x f. Graded grids: cubic cell rule plus the power-law first
// cell. Periodic grids: integrates outward from x = 0 in both directions.
SampledFunction cumulative_primitive(const SampledFunction& f);

// Finite-difference derivative: 4th order on graded grids (parity ghosts at
// the origin, and the
// origin_increment model where differences are at rounding level), 6th order central on periodic grids.
SampledFunction fd_derivative(const SampledFunction& f);

// g(x) - g(0) at the nodes. For even samples on a graded grid the nodes where
// this difference is at rounding level use a fitted a*x^2 + b*x^4 instead.
std::vector<double> origin_increment(const SampledFunction& f);

// Finite-difference weights for derivative `order` at x0 (Fornberg).
std::vector<double> fd_weights(double x0, std::span<const double> nodes, int order);


}  // namespace nonlocal
