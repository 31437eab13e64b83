#pragma once

#include <functional>
#include <span>

#include "nonlocal/sampled_function.hpp"

namespace nonlocal {

enum class HilbertMethod { spectral, pv_quadrature, logkernel_even };
enum class LaplacianMethod { spectral, singular_integral };

// Whether the velocity in the transport models is +H(theta) or -H(theta).
enum class SignConvention { plus_hilbert, minus_hilbert };

enum class OperatorKind { hilbert, fractional_laplacian, drift };

struct OperatorSpec {
    OperatorKind kind = OperatorKind::hilbert;
    double gamma = 1.0;  // fractional_laplacian
    double alpha = 1.0;  // drift
    SignConvention sign = SignConvention::plus_hilbert;
};

// Spectral application of the operator described by `spec` (periodic grids).
SampledFunction apply_operator(const OperatorSpec& spec, const SampledFunction& f);

/**
 * H f = (1/pi) PV int f(y)/(x-y) dy.
 *
 * spectral        periodic grids, multiplier -i sgn(k).
 * pv_quadrature   periodic grids: trapezoid over the whole box treating f as
 *                 decaying (not periodized), singular node replaced by -f'(x).
 *                 Graded grids (even f only): (2x/pi) int_0^inf (g(y)-g(x))/(x^2-y^2) dy.
 * logkernel_even  graded grids, even f: (1/pi) int_0^inf log|(x-y)/(x+y)| g'(y) dy.
 */
SampledFunction hilbert_transform(const SampledFunction& f, HilbertMethod method = HilbertMethod::spectral);

// Whole-line PV quadrature at selected node indices of a periodic grid.
std::vector<double> hilbert_pv_at(const SampledFunction& f, std::span<const std::size_t> indices);

// Spectral Hilbert transform after zero-padding the box by `pad` (a power of
// two); for decaying functions this removes most of the periodization error.
SampledFunction hilbert_zero_padded(const SampledFunction& f, std::size_t pad = 8);

struct SingularConstant {
    double gamma = 0.0;
    double value = 0.0;
    double calibration_residual = 0.0;
};

/**
 * Lambda^gamma f. singular_integral evaluates
 * C_gamma * PV int (f(x)-f(y))/|x-y|^(1+gamma) dy on the periodic extension
 * with C_gamma from calibrate_singular_constant.
 */
SampledFunction fractional_laplacian(const SampledFunction& f, double gamma,
                                     LaplacianMethod method = LaplacianMethod::spectral);

// Unnormalized PV int (f(x)-f(y))/|x-y|^(1+gamma) dy over the periodic extension.
std::vector<double> singular_integral(const SampledFunction& f, double gamma);

// Least-squares ratio between spectral Lambda^gamma and the unnormalized
// singular integral of a Gaussian, over 100 sample points.
SingularConstant calibrate_singular_constant(double gamma, std::size_t n = 4096, double half_length = 16.0);

// d/dx Lambda^(-alpha) f: multiplier i k |k|^(-alpha), zero mode to 0.
SampledFunction drift_velocity(const SampledFunction& f, double alpha);

/**
 * Kernel of the drift operator on even functions restricted to x, y > 0.
 *   0 < alpha < 1:  -(1-alpha) (|x-y|^-(2-alpha) sgn(x-y) + (x+y)^-(2-alpha))
 *   1 < alpha < 2:  -(|x-y|^eps/(x-y) + (x+y)^(eps-1)),  eps = alpha - 1
 */
double alpha_kernel_h(double x, double y, double alpha);

// Normalization with drift(g)(x) = c * int_0^inf h(x,y) (g(y) - g(x)) dy for even g.
double alpha_kernel_constant(double alpha);

// Drift of an even function at x > 0 by adaptive quadrature of the kernel.
double drift_by_kernel(const std::function<double(double)>& g, const std::function<double(double)>& dg,
                       double x, double alpha);

}  // namespace nonlocal
