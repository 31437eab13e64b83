#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nonlocal/sampled_function.hpp"

namespace nonlocal {

// A named closed-form test function on the real line.
struct TestFunction {
    std::string name;
    std::function<double(double)> value;
    // Rescaled copy x -> f(x / L).
    TestFunction dilated(double L) const;
};

// 50 even functions, nonincreasing on x > 0: Gaussians, rational decays and
// mollified plateaus, 8 log-spaced widths in [1/4, 4] for the first two kinds.
std::vector<TestFunction> monotone_family();

// Nonnegative functions on (0, inf) vanishing at 0: t^m e^(-t/w) and smooth
// compactly supported bumps.
std::vector<TestFunction> nonnegative_family();

// g(0) - g(x) for each member of monotone_family(): even, nondecreasing, zero at 0.
std::vector<TestFunction> increasing_family();

// Samples of an even test function on a grid, with parity and monotonicity recorded.
SampledFunction sample_even(const GridPtr& grid, const TestFunction& f,
                            Monotonicity monotone = Monotonicity::unknown);

// log-spaced values lo * (hi/lo)^(k/(count-1))
std::vector<double> log_spaced(double lo, double hi, int count);

}  // namespace nonlocal
