#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nonlocal {

enum class GridKind { half_line_graded, periodic_uniform };

/**
 * Immutable 1D grid.
 *
 * periodic_uniform: nodes -L + j*h, h = 2L/n, j = 0..n-1 (x = 0 is node n/2).
 * half_line_graded: geometric nodes L*q^(n-1-k), k = 0..n-1, so the last node
 * is L and consecutive nodes have ratio q. Weights are the composite
 * trapezoid rule on [x_0, L]; the cell (0, x_0) is handled by the integrators.
 */
class Grid1D {
public:
    static constexpr std::size_t kDefaultPeriodicPoints = 4096;
    static constexpr std::size_t kDefaultGradedPoints = 2048;

    static Grid1D periodic(std::size_t n_points, double half_length);
    static Grid1D graded(std::size_t n_points, double half_length, double grading_ratio);
    // Graded grid with a whole number of nodes per decade spanning ~16 decades.
    static Grid1D graded(std::size_t n_points = kDefaultGradedPoints, double half_length = 1e4);

    GridKind kind() const noexcept { return kind_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    double half_length() const noexcept { return half_length_; }
    std::span<const double> nodes() const noexcept { return nodes_; }
    std::span<const double> weights() const noexcept { return weights_; }
    double node(std::size_t i) const { return nodes_[i]; }

    // periodic: spacing h; graded: ratio q between consecutive nodes.
    double spacing() const noexcept { return spacing_; }
    bool is_periodic() const noexcept { return kind_ == GridKind::periodic_uniform; }
    // Index of x = 0 on a periodic grid.
    std::size_t origin_index() const noexcept { return nodes_.size() / 2; }

    bool operator==(const Grid1D& other) const noexcept {
        return kind_ == other.kind_ && half_length_ == other.half_length_ &&
               spacing_ == other.spacing_ && nodes_.size() == other.nodes_.size();
    }

private:
    Grid1D(GridKind kind, double half_length, double spacing, std::vector<double> nodes,
           std::vector<double> weights)
        : kind_(kind), half_length_(half_length), spacing_(spacing), nodes_(std::move(nodes)),
          weights_(std::move(weights)) {}

    GridKind kind_;
    double half_length_;
    double spacing_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

Grid1D build_grid(GridKind kind, std::size_t n_points, double half_length, double grading_ratio = 0.0);

}  // namespace nonlocal
