#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nonlocal/grid.hpp"
#include "nonlocal/sampled_function.hpp"

namespace nonlocal {

// hilbert_transport: theta_t + (H theta) theta_x = -kappa Lambda^gamma theta
// reversed_hilbert:  theta_t - (H theta) theta_x = -kappa Lambda^gamma theta
// alpha_model:       theta_t + (Lambda^-alpha d_x theta) theta_x = -kappa Lambda^gamma theta
enum class Model { hilbert_transport, reversed_hilbert, alpha_model };

const char* to_string(Model m) noexcept;
Model model_from_string(const std::string& name);

struct Monitors {
    bool J_functional = true;
    bool max_gradient = true;
    bool max_principle = true;
    bool riccati = true;
};

struct SimulationConfig {
    Model model = Model::hilbert_transport;
    double kappa = 0.0;
    double gamma = 1.0;
    double alpha = 0.5;
    GridPtr grid;
    double dt_initial = 1e-2;  // also the largest step taken
    double t_end = 1.0;
    double cfl_safety = 0.5;
    bool dealias = true;
    Monitors monitors;
    double output_interval = 0.01;
    bool zero_velocity = false;  // test hook: pure dissipation
    bool stop_on_resolution_loss = true;
    double resolution_tol = 1e-9;   // max energy fraction in the top third of the retained band
};

// Periodic grid of half-length 40 pi.
GridPtr simulation_grid(std::size_t n = 4096, double half_length = 125.66370614359172);

struct SimulationState {
    explicit SimulationState(SampledFunction initial) : theta(std::move(initial)) {}
    double t = 0.0;
    SampledFunction theta;
    double J = 0.0;
    double max_grad = 0.0;
    double sup = 0.0;
    double tail_fraction = 0.0;
    bool resolved = true;
    double dt = 0.0;
    double odd_part = 0.0;  // odd component removed by the last reprojection
};

struct TimeRecord {
    double t;
    double J;
    double dJdt;
    double max_grad;
    double sup;
    bool resolved;
};

enum class StopReason { reached_end, resolution_loss, cfl_collapse };

struct TimeSeries {
    std::vector<TimeRecord> records;
    StopReason stop = StopReason::reached_end;
    double sup0 = 0.0;
    double max_grad0 = 0.0;
    double odd_part_max = 0.0;  // largest odd component seen before reprojection
    std::optional<SimulationState> final_state;
};

// int_0^inf (theta(0) - theta(x))/x e^-x dx on the periodic grid.
double blowup_functional(const SampledFunction& theta);

// Energy fraction in the top third of the retained spectrum.
double spectral_tail_fraction(const SampledFunction& theta, bool dealias);

SimulationState initialize(const SimulationConfig& config, const std::function<double(double)>& theta0);
SimulationState initialize(const SimulationConfig& config, SampledFunction theta0);

// One integrating-factor RK4 step of size state.dt (clipped to `max_dt`).
SimulationState step(const SimulationState& state, const SimulationConfig& config, double max_dt);
SimulationState step(const SimulationState& state, const SimulationConfig& config);

TimeSeries run_with_monitors(const SimulationConfig& config, const std::function<double(double)>& theta0);

// Smallest C2 >= 0 with dJ/dt >= J^2/(2 pi) - C2 (sup0 + 1)^2 on resolved samples.
double fit_riccati_constant(const TimeSeries& series);

struct RiccatiReport {
    double c2_coarse = 0.0;
    double c2_fine = 0.0;
    double a_gamma = 0.0;  // sqrt(2 pi C2) from the fine run
    bool j_increasing = false;
    bool holds = false;  // finite and within 20% across resolutions
};

RiccatiReport riccati_check(const TimeSeries& coarse, const TimeSeries& fine);

// int |g|/x e^-x <= (int g^2 x^(alpha-3) e^-x)^(1/2) Gamma(2-alpha)^(1/2), g = theta(0) - theta.
struct CauchySchwarzCheck {
    double lhs;
    double rhs;
    double moment;  // int x^(1-alpha) e^-x dx by quadrature
};
CauchySchwarzCheck cauchy_schwarz_check(const SampledFunction& theta, double alpha);

void write_csv(std::ostream& os, const TimeSeries& series);
std::string metadata_json(const SimulationConfig& config, const TimeSeries& series, double fitted_c2);

}  // namespace nonlocal
