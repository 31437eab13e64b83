#include "nonlocal/sampled_function.hpp"

#include <algorithm>
#include <cmath>

#include "nonlocal/errors.hpp"

namespace nonlocal {

namespace {

std::size_t mirror_index(std::size_t j, std::size_t n) { return (n - j) % n; }

}  // namespace

SampledFunction::SampledFunction(GridPtr grid, std::vector<double> values, Parity parity,
                                 Monotonicity monotone)
    : grid_(std::move(grid)), values_(std::move(values)), parity_(parity), monotone_(monotone) {
    if (!grid_) throw LabError(ErrorKind::InvalidArgument, "null grid");
    if (values_.size() != grid_->size()) {
        throw LabError(ErrorKind::GridMismatch, "sample count does not match grid size");
    }
    sup_norm_ = 0.0;
    for (double v : values_) sup_norm_ = std::max(sup_norm_, std::abs(v));
    if (grid_->is_periodic() && parity_ != Parity::none) {
        if (reflection_defect(*this, parity_) > 1e-12) {
            throw LabError(ErrorKind::ParityError, "samples do not have the declared parity");
        }
    }
}

SampledFunction SampledFunction::sample(GridPtr grid, const std::function<double(double)>& f,
                                        Parity parity, Monotonicity monotone) {
    const auto x = grid->nodes();
    std::vector<double> v(x.size());
    if (grid->is_periodic() && parity != Parity::none) {
        // Evaluate on x >= 0 and mirror, so reflection holds bit for bit.
        const std::size_t n = x.size();
        const std::size_t mid = grid->origin_index();
        const double sign = parity == Parity::even ? 1.0 : -1.0;
        for (std::size_t j = mid; j < n; ++j) v[j] = f(x[j]);
        for (std::size_t j = 1; j < mid; ++j) v[j] = sign * v[mirror_index(j, n)];
        v[0] = parity == Parity::even ? f(x[0]) : 0.0;
        if (parity == Parity::odd) v[mid] = 0.0;
    } else {
        for (std::size_t j = 0; j < x.size(); ++j) v[j] = f(x[j]);
    }
    return SampledFunction(std::move(grid), std::move(v), parity, monotone);
}

double SampledFunction::value_at_origin() const {
    const auto x = grid_->nodes();
    if (grid_->is_periodic()) return values_[grid_->origin_index()];
    if (parity_ == Parity::odd) return 0.0;
    if (parity_ == Parity::even) {
        // f ~ a + b x^2 through the two smallest nodes.
        const double x0 = x[0] * x[0], x1 = x[1] * x[1];
        return (values_[0] * x1 - values_[1] * x0) / (x1 - x0);
    }
    const double slope = (values_[1] - values_[0]) / (x[1] - x[0]);
    return values_[0] - slope * x[0];
}

void enforce_parity(const Grid1D& grid, std::vector<double>& values, Parity parity) {
    if (!grid.is_periodic() || parity == Parity::none) return;
    const std::size_t n = values.size();
    const std::size_t mid = grid.origin_index();
    const double sign = parity == Parity::even ? 1.0 : -1.0;
    for (std::size_t j = mid + 1; j < n; ++j) {
        const std::size_t m = mirror_index(j, n);
        const double avg = 0.5 * (values[j] + sign * values[m]);
        values[j] = avg;
        values[m] = sign * avg;
    }
    if (parity == Parity::odd) {
        values[mid] = 0.0;
        values[0] = 0.0;
    }
}

double reflection_defect(const SampledFunction& f, Parity parity) {
    if (!f.grid().is_periodic()) {
        throw LabError(ErrorKind::MethodDomainMismatch, "reflection test needs a periodic grid");
    }
    if (parity == Parity::none) return 0.0;
    const double sign = parity == Parity::even ? 1.0 : -1.0;
    const std::size_t n = f.size();
    double defect = 0.0;
    for (std::size_t j = 1; j < n; ++j) {
        defect = std::max(defect, std::abs(f[j] - sign * f[mirror_index(j, n)]));
    }
    if (parity == Parity::odd) defect = std::max(defect, std::abs(f[f.grid().origin_index()]));
    return f.sup_norm() > 0.0 ? defect / f.sup_norm() : defect;
}

}  // namespace nonlocal
