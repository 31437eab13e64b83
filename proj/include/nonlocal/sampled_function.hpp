#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "nonlocal/grid.hpp"

namespace nonlocal {

enum class Parity { even, odd, none };
enum class Monotonicity { nonincreasing, nondecreasing, unknown };

using GridPtr = std::shared_ptr<const Grid1D>;

inline GridPtr share(Grid1D grid) { return std::make_shared<const Grid1D>(std::move(grid)); }

/**
 * Samples of a real function on a Grid1D plus the symmetry metadata the
 * operators rely on. Values on a half-line grid are the restriction of the
 * (even or odd) whole-line function to x > 0.
 *
 * Parity and monotonicity are caller assertions; they are not re-derived from
 * the samples, except that a declared parity on a periodic grid is checked
 * by reflection.
 */
class SampledFunction {
public:
    SampledFunction(GridPtr grid, std::vector<double> values, Parity parity = Parity::none,
                    Monotonicity monotone = Monotonicity::unknown);

    static SampledFunction sample(GridPtr grid, const std::function<double(double)>& f,
                                  Parity parity = Parity::none,
                                  Monotonicity monotone = Monotonicity::unknown);

    const Grid1D& grid() const noexcept { return *grid_; }
    const GridPtr& grid_ptr() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const noexcept { return values_.size(); }
    Parity parity() const noexcept { return parity_; }
    Monotonicity monotone() const noexcept { return monotone_; }
    double sup_norm() const noexcept { return sup_norm_; }

    // Same grid, new samples.
    SampledFunction with_values(std::vector<double> values, Parity parity,
                                Monotonicity monotone = Monotonicity::unknown) const {
        return SampledFunction(grid_, std::move(values), parity, monotone);
    }

    // Value at x = 0: exact node on periodic grids, otherwise extrapolated
    // from the smallest nodes (quadratic in x for even functions).
    double value_at_origin() const;

private:
    GridPtr grid_;
    std::vector<double> values_;
    Parity parity_;
    Monotonicity monotone_;
    double sup_norm_;
};

// Makes periodic samples exactly even or odd by averaging mirrored pairs.
void enforce_parity(const Grid1D& grid, std::vector<double>& values, Parity parity);

// max_j |f(x_j) - s*f(-x_j)| / sup|f| on a periodic grid (s = +1 even, -1 odd).
double reflection_defect(const SampledFunction& f, Parity parity);

}  // namespace nonlocal
