#include "nonlocal/grid.hpp"

#include <cmath>
#include <string>

#include "nonlocal/errors.hpp"

namespace nonlocal {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid1D Grid1D::periodic(std::size_t n_points, double half_length) {
    if (!(half_length > 0.0) || !std::isfinite(half_length)) {
        throw LabError(ErrorKind::InvalidArgument, "grid half-length must be positive");
    }
    // 8 is the smallest size the spectral operators accept.
    if (n_points < 8 || !is_power_of_two(n_points)) {
        throw LabError(ErrorKind::InvalidArgument,
                       "periodic grid needs a power-of-two size >= 8, got " + std::to_string(n_points));
    }
    const double h = 2.0 * half_length / static_cast<double>(n_points);
    std::vector<double> nodes(n_points);
    const std::size_t mid = n_points / 2;
    for (std::size_t j = 0; j < n_points; ++j) {
        // Built from the origin so that x_{mid+m} == -x_{mid-m} bit for bit.
        const double m = static_cast<double>(j) - static_cast<double>(mid);
        nodes[j] = m * h;
    }
    return Grid1D(GridKind::periodic_uniform, half_length, h, std::move(nodes),
                  std::vector<double>(n_points, h));
}

Grid1D Grid1D::graded(std::size_t n_points, double half_length, double grading_ratio) {
    if (!(half_length > 0.0) || !std::isfinite(half_length)) {
        throw LabError(ErrorKind::InvalidArgument, "grid half-length must be positive");
    }
    if (n_points < 16) {
        throw LabError(ErrorKind::InvalidArgument, "graded grid needs at least 16 points");
    }
    if (!(grading_ratio > 0.0 && grading_ratio < 1.0)) {
        throw LabError(ErrorKind::InvalidArgument, "grading ratio must lie in (0,1)");
    }
    const double log_q = std::log(grading_ratio);
    std::vector<double> nodes(n_points);
    for (std::size_t k = 0; k < n_points; ++k) {
        nodes[k] = half_length * std::exp(log_q * static_cast<double>(n_points - 1 - k));
    }
    // Snap nodes that are meant to be powers of ten (relative error ~1e-15).
    for (double& x : nodes) {
        const double decade = std::round(std::log10(x));
        const double snapped = std::pow(10.0, decade);
        if (std::abs(x - snapped) <= 1e-13 * snapped) x = snapped;
    }
    nodes.back() = half_length;
    std::vector<double> weights(n_points, 0.0);
    for (std::size_t k = 0; k + 1 < n_points; ++k) {
        const double half_cell = 0.5 * (nodes[k + 1] - nodes[k]);
        weights[k] += half_cell;
        weights[k + 1] += half_cell;
    }
    return Grid1D(GridKind::half_line_graded, half_length, grading_ratio, std::move(nodes),
                  std::move(weights));
}

Grid1D Grid1D::graded(std::size_t n_points, double half_length) {
    if (n_points < 16) {
        throw LabError(ErrorKind::InvalidArgument, "graded grid needs at least 16 points");
    }
    // Whole number of nodes per decade so every power of ten times L is a node.
    const double per_decade = std::floor(static_cast<double>(n_points - 1) / 16.0);
    const double ratio = std::pow(10.0, -1.0 / per_decade);
    return graded(n_points, half_length, ratio);
}

Grid1D build_grid(GridKind kind, std::size_t n_points, double half_length, double grading_ratio) {
    if (kind == GridKind::periodic_uniform) {
        return Grid1D::periodic(n_points, half_length);
    }
    if (grading_ratio <= 0.0) {
        return Grid1D::graded(n_points, half_length);
    }
    return Grid1D::graded(n_points, half_length, grading_ratio);
}

}  // namespace nonlocal
