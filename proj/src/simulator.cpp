#include "nonlocal/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "json.hpp"
#include "nonlocal/errors.hpp"
#include "nonlocal/spectral.hpp"

namespace nonlocal {
namespace {

constexpr double kPi = std::numbers::pi;

std::size_t retained_modes(std::size_t n, bool dealias) { return dealias ? n / 3 : n / 2 - 1; }

// Trapezoid on [0, L] over the x >= 0 half of a periodic grid with two
// Richardson levels; `f` is sampled at x_j = j h, j = 0..n/2.
double half_box_integral(const std::vector<double>& f, double h) {
    const std::size_t m = f.size() - 1;
    auto trap = [&](std::size_t s) {
        double acc = 0.5 * (f[0] + f[m]);
        for (std::size_t j = s; j < m; j += s) acc += f[j];
        return acc * h * static_cast<double>(s);
    };
    const double t1 = trap(1), t2 = trap(2), t4 = trap(4);
    const double r1 = (4.0 * t1 - t2) / 3.0, r2 = (4.0 * t2 - t4) / 3.0;
    return (16.0 * r1 - r2) / 15.0;
}

// Samples g(x_j) = theta(0) - theta(x_j) on x_j = j h, j = 0..n/2 (the last one is x = L).
std::vector<double> origin_gap(const SampledFunction& theta) {
    const std::size_t n = theta.size();
    const std::size_t mid = theta.grid().origin_index();
    std::vector<double> g(n / 2 + 1);
    for (std::size_t j = 0; j <= n / 2; ++j) g[j] = theta[mid] - theta[(mid + j) % n];
    return g;
}

class Spectral {
public:
    Spectral(const SimulationConfig& c) : config_(c), n_(c.grid->size()), k_(wavenumbers(*c.grid)) {
        keep_ = retained_modes(n_, c.dealias);
    }

    std::vector<Complex> forward(std::span<const double> v) const {
        auto c = forward_fft(v);
        mask(c);
        return c;
    }

    std::vector<double> inverse(std::span<const Complex> c) const { return inverse_fft(c, n_); }

    Complex velocity_symbol(double k) const {
        if (config_.zero_velocity || k == 0.0) return 0.0;
        switch (config_.model) {
            case Model::hilbert_transport: return Complex(0.0, -1.0);
            case Model::reversed_hilbert: return Complex(0.0, 1.0);
            case Model::alpha_model: return Complex(0.0, std::pow(k, 1.0 - config_.alpha));
        }
        return 0.0;
    }

    double decay(double k, double dt) const {
        return config_.kappa == 0.0 ? 1.0 : std::exp(-config_.kappa * std::pow(k, config_.gamma) * dt);
    }

    std::vector<double> velocity(std::span<const Complex> c) const {
        std::vector<Complex> u(c.size());
        for (std::size_t j = 0; j < c.size(); ++j) u[j] = velocity_symbol(k_[j]) * c[j];
        return inverse(u);
    }

    std::vector<double> derivative(std::span<const Complex> c) const {
        std::vector<Complex> d(c.size());
        for (std::size_t j = 0; j < c.size(); ++j) d[j] = Complex(0.0, k_[j]) * c[j];
        return inverse(d);
    }

    // theta_x by trigonometric interpolation onto a grid `pad` times finer.
    std::vector<double> fine_derivative(std::span<const Complex> c, std::size_t pad) const {
        const std::size_t m = n_ * pad;
        std::vector<Complex> d(m / 2 + 1, 0.0);
        for (std::size_t j = 0; j + 1 < c.size(); ++j) d[j] = Complex(0.0, k_[j]) * c[j] * static_cast<double>(pad);
        return inverse_fft(d, m);
    }

    // -u theta_x, dealiased.
    std::vector<Complex> nonlinear(std::span<const Complex> c) const {
        if (config_.zero_velocity) return std::vector<Complex>(c.size(), 0.0);
        const auto u = velocity(c);
        const auto dx = derivative(c);
        std::vector<double> prod(n_);
        for (std::size_t j = 0; j < n_; ++j) prod[j] = -u[j] * dx[j];
        return forward(prod);
    }

    const std::vector<double>& k() const { return k_; }

private:
    void mask(std::vector<Complex>& c) const {
        for (std::size_t j = keep_ + 1; j < c.size(); ++j) c[j] = 0.0;
    }

    const SimulationConfig& config_;
    std::size_t n_;
    std::vector<double> k_;
    std::size_t keep_;
};

// max |v| refined by a parabola through the largest sample and its neighbours.
// Applied to a padded derivative so the monitor does not jitter with the node positions.
double peak_abs(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::size_t i = 0;
    for (std::size_t j = 1; j < n; ++j) {
        if (std::abs(v[j]) > std::abs(v[i])) i = j;
    }
    const double a = std::abs(v[(i + n - 1) % n]), b = std::abs(v[i]), c = std::abs(v[(i + 1) % n]);
    const double curv = a - 2.0 * b + c;
    if (curv >= 0.0) return b;
    return b - 0.125 * (c - a) * (c - a) / curv;
}

void evaluate_monitors(SimulationState& s, const SimulationConfig& config) {
    const Spectral sp(config);
    const auto c = sp.forward(s.theta.values());
    s.max_grad = peak_abs(sp.fine_derivative(c, 4));
    s.sup = s.theta.sup_norm();
    s.J = config.monitors.J_functional ? blowup_functional(s.theta) : 0.0;
    s.tail_fraction = spectral_tail_fraction(s.theta, config.dealias);
    s.resolved = s.tail_fraction <= config.resolution_tol;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

const char* to_string(Model m) noexcept {
    switch (m) {
        case Model::hilbert_transport: return "hilbert_transport";
        case Model::reversed_hilbert: return "reversed_hilbert";
        case Model::alpha_model: return "alpha_model";
    }
    return "unknown";
}

Model model_from_string(const std::string& name) {
    if (name == "hilbert_transport" || name == "ccf" || name == "ccf_eq11") return Model::hilbert_transport;
    if (name == "reversed_hilbert" || name == "section4" || name == "section4_hilbert") return Model::reversed_hilbert;
    if (name == "alpha_model" || name == "alpha") return Model::alpha_model;
    throw LabError(ErrorKind::InvalidArgument, "unknown model: " + name);
}

GridPtr simulation_grid(std::size_t n, double half_length) { return share(Grid1D::periodic(n, half_length)); }

double blowup_functional(const SampledFunction& theta) {
    if (!theta.grid().is_periodic()) throw LabError(ErrorKind::MethodDomainMismatch, "needs a periodic grid");
    const double h = theta.grid().spacing();
    auto g = origin_gap(theta);
    for (std::size_t j = 1; j < g.size(); ++j) {
        const double x = h * static_cast<double>(j);
        g[j] *= std::exp(-x) / x;
    }
    g[0] = 0.0;  // (theta(0) - theta(x))/x -> 0 for even theta
    return half_box_integral(g, h);
}

double spectral_tail_fraction(const SampledFunction& theta, bool dealias) {
    const auto c = forward_fft(theta.values());
    const std::size_t keep = retained_modes(theta.size(), dealias);
    const std::size_t top = (2 * keep) / 3;
    double total = 0.0, tail = 0.0;
    for (std::size_t j = 0; j <= keep; ++j) {
        const double e = (j == 0 ? 1.0 : 2.0) * std::norm(c[j]);
        total += e;
        if (j > top) tail += e;
    }
    return total > 0.0 ? tail / total : 0.0;
}

SimulationState initialize(const SimulationConfig& config, SampledFunction theta0) {
    if (!config.grid || !config.grid->is_periodic()) {
        throw LabError(ErrorKind::MethodDomainMismatch, "simulations need a periodic grid");
    }
    if (config.kappa == 0.0 && !(config.monitors.J_functional || config.monitors.max_gradient)) {
        throw LabError(ErrorKind::InvalidArgument, "inviscid runs need blow-up monitors");
    }
    if (config.model == Model::alpha_model && !(config.alpha > 0.0 && config.alpha < 2.0)) {
        throw LabError(ErrorKind::AlphaOutOfRange, "alpha must lie in (0, 2)");
    }
    if (!(config.gamma >= 0.0 && config.gamma <= 2.0)) throw LabError(ErrorKind::GammaOutOfRange, "gamma must lie in [0, 2]");
    if (theta0.parity() != Parity::even) throw LabError(ErrorKind::ParityError, "initial data must be even");
    const bool whole_line = config.monitors.J_functional || config.monitors.riccati;
    if (whole_line && std::max(std::abs(theta0[0]), std::abs(theta0[1])) > 1e-12) {
        throw LabError(ErrorKind::InsufficientDecay, "initial data does not decay inside the box");
    }
    SimulationState s(std::move(theta0));
    s.dt = config.dt_initial;
    evaluate_monitors(s, config);
    return s;
}

SimulationState initialize(const SimulationConfig& config, const std::function<double(double)>& theta0) {
    if (!config.grid) throw LabError(ErrorKind::InvalidArgument, "missing grid");
    return initialize(config, SampledFunction::sample(config.grid, theta0, Parity::even));
}

SimulationState step(const SimulationState& state, const SimulationConfig& config, double max_dt) {
    const Spectral sp(config);
    const Grid1D& grid = *config.grid;
    const auto c0 = sp.forward(state.theta.values());
    const double umax = max_abs(sp.velocity(c0));
    double dt = std::min({config.dt_initial, max_dt});
    if (umax > 0.0) dt = std::min(dt, config.cfl_safety * grid.spacing() / umax);
    if (!(dt > 1e-12 * config.t_end)) throw LabError(ErrorKind::CFLCollapse, "time step collapsed");

    // Lawson RK4: exact exponential for the dissipation, RK4 for -u theta_x.
    const auto& k = sp.k();
    const std::size_t m = c0.size();
    std::vector<double> eh(m), ef(m);
    for (std::size_t j = 0; j < m; ++j) {
        eh[j] = sp.decay(k[j], 0.5 * dt);
        ef[j] = sp.decay(k[j], dt);
    }
    const auto k1 = sp.nonlinear(c0);
    std::vector<Complex> a(m), b(m), c(m), out(m);
    for (std::size_t j = 0; j < m; ++j) a[j] = eh[j] * (c0[j] + 0.5 * dt * k1[j]);
    const auto k2 = sp.nonlinear(a);
    for (std::size_t j = 0; j < m; ++j) b[j] = eh[j] * c0[j] + 0.5 * dt * k2[j];
    const auto k3 = sp.nonlinear(b);
    for (std::size_t j = 0; j < m; ++j) c[j] = ef[j] * c0[j] + dt * eh[j] * k3[j];
    const auto k4 = sp.nonlinear(c);
    for (std::size_t j = 0; j < m; ++j) {
        out[j] = ef[j] * c0[j] + dt / 6.0 * (ef[j] * k1[j] + 2.0 * eh[j] * (k2[j] + k3[j]) + k4[j]);
    }
    auto v = sp.inverse(out);
    const std::size_t n = v.size();
    double odd = 0.0;
    for (std::size_t j = 1; j < n; ++j) odd = std::max(odd, 0.5 * std::abs(v[j] - v[n - j]));
    enforce_parity(grid, v, Parity::even);
    SimulationState next(state.theta.with_values(std::move(v), Parity::even));
    next.t = state.t + dt;
    next.dt = dt;
    next.odd_part = odd;
    evaluate_monitors(next, config);
    return next;
}

SimulationState step(const SimulationState& state, const SimulationConfig& config) {
    return step(state, config, config.t_end - state.t);
}

TimeSeries run_with_monitors(const SimulationConfig& config, const std::function<double(double)>& theta0) {
    TimeSeries series;
    SimulationState s = initialize(config, theta0);
    series.sup0 = s.sup;
    series.max_grad0 = s.max_grad;
    auto record = [&](const SimulationState& st) {
        series.records.push_back({st.t, st.J, 0.0, st.max_grad, st.sup, st.resolved});
    };
    record(s);
    const int outputs = static_cast<int>(std::ceil(config.t_end / config.output_interval - 1e-9));
    try {
        for (int k = 1; k <= outputs; ++k) {
            const double target = std::min(config.t_end, k * config.output_interval);
            while (s.t < target - 1e-12 * config.t_end) {
                s = step(s, config, target - s.t);
                series.odd_part_max = std::max(series.odd_part_max, s.odd_part);
            }
            s.t = target;
            record(s);
            if (!s.resolved && config.stop_on_resolution_loss) {
                series.stop = StopReason::resolution_loss;
                break;
            }
        }
    } catch (const LabError& e) {
        if (e.kind() != ErrorKind::CFLCollapse) throw;
        series.stop = StopReason::cfl_collapse;
    }
    auto& r = series.records;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r.size() < 2) break;
        const std::size_t lo = i == 0 ? 0 : i - 1;
        const std::size_t hi = i + 1 < r.size() ? i + 1 : i;
        r[i].dJdt = (r[hi].J - r[lo].J) / (r[hi].t - r[lo].t);
    }
    series.final_state = s;
    return series;
}

double fit_riccati_constant(const TimeSeries& series) {
    const double scale = (series.sup0 + 1.0) * (series.sup0 + 1.0);
    std::size_t used = 0;
    double c2 = 0.0;
    for (const auto& r : series.records) {
        if (!r.resolved) continue;
        ++used;
        c2 = std::max(c2, (r.J * r.J / (2.0 * kPi) - r.dJdt) / scale);
    }
    if (used < 3) throw LabError(ErrorKind::InsufficientSamples, "need at least three resolved samples");
    return c2;
}

RiccatiReport riccati_check(const TimeSeries& coarse, const TimeSeries& fine) {
    RiccatiReport rep;
    rep.c2_coarse = fit_riccati_constant(coarse);
    rep.c2_fine = fit_riccati_constant(fine);
    rep.a_gamma = std::sqrt(2.0 * kPi * rep.c2_fine);
    rep.j_increasing = true;
    for (std::size_t i = 1; i < fine.records.size(); ++i) {
        if (fine.records[i].resolved && fine.records[i].J < fine.records[i - 1].J) rep.j_increasing = false;
    }
    const double hi = std::max(rep.c2_coarse, rep.c2_fine), lo = std::min(rep.c2_coarse, rep.c2_fine);
    const bool stable = hi == 0.0 || (hi - lo) <= 0.2 * hi;
    rep.holds = std::isfinite(hi) && stable;
    return rep;
}

CauchySchwarzCheck cauchy_schwarz_check(const SampledFunction& theta, double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw LabError(ErrorKind::AlphaOutOfRange, "alpha must lie in (0, 2)");
    const double h = theta.grid().spacing();
    const auto g = origin_gap(theta);
    std::vector<double> left(g.size(), 0.0), right(g.size(), 0.0);
    for (std::size_t j = 1; j < g.size(); ++j) {
        const double x = h * static_cast<double>(j);
        left[j] = std::abs(g[j]) / x * std::exp(-x);
        right[j] = g[j] * g[j] * std::pow(x, alpha - 3.0) * std::exp(-x);
    }
    boost::math::quadrature::exp_sinh<double> es;
    CauchySchwarzCheck out;
    out.moment = es.integrate([alpha](double x) { return std::pow(x, 1.0 - alpha) * std::exp(-x); });
    out.lhs = half_box_integral(left, h);
    out.rhs = std::sqrt(half_box_integral(right, h) * out.moment);
    return out;
}

void write_csv(std::ostream& os, const TimeSeries& series) {
    os << "t,J,dJdt,max_grad,sup,resolved\n";
    char buf[160];
    for (const auto& r : series.records) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", r.t, r.J, r.dJdt, r.max_grad, r.sup,
                      r.resolved ? 1 : 0);
        os << buf;
    }
}

std::string metadata_json(const SimulationConfig& config, const TimeSeries& series, double fitted_c2) {
    nlohmann::ordered_json j;
    j["model"] = to_string(config.model);
    j["kappa"] = config.kappa;
    j["gamma"] = config.gamma;
    j["alpha"] = config.alpha;
    j["grid_size"] = config.grid->size();
    j["box_half_length"] = config.grid->half_length();
    j["dt_initial"] = config.dt_initial;
    j["t_end"] = config.t_end;
    j["cfl_safety"] = config.cfl_safety;
    j["dealias"] = config.dealias;
    j["output_interval"] = config.output_interval;
    j["resolution_tol"] = config.resolution_tol;
    j["zero_velocity"] = config.zero_velocity;
    j["monitors"] = {{"J_functional", config.monitors.J_functional},
                     {"max_gradient", config.monitors.max_gradient},
                     {"max_principle", config.monitors.max_principle},
                     {"riccati", config.monitors.riccati}};
    const char* stop = series.stop == StopReason::reached_end       ? "reached_end"
                       : series.stop == StopReason::resolution_loss ? "resolution_loss"
                                                                    : "cfl_collapse";
    j["stop_reason"] = stop;
    j["records"] = series.records.size();
    j["sup0"] = series.sup0;
    j["max_grad0"] = series.max_grad0;
    if (std::isfinite(fitted_c2)) {
        j["fitted_C2"] = fitted_c2;
        j["implied_A"] = std::sqrt(2.0 * kPi * fitted_c2);
    } else {
        j["fitted_C2"] = nullptr;
        j["implied_A"] = nullptr;
    }
    return j.dump(2);
}

}  // namespace nonlocal
