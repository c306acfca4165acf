#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "soliton/core.hpp"

namespace soliton::numerics {

struct QuadratureResult {
  Complex value;
  double error_estimate = 0.0;
  long evaluations = 0;
};

using ComplexIntegrand = std::function<Complex(double)>;
using RealIntegrand = std::function<double(double)>;

/// Error target is tol * max(1, |I|); success means error_estimate <= target.
struct QuadOptions {
  double tol = 1e-10;
  long max_evaluations = 1'000'000;
};

/// Adaptive Gauss-Kronrod (10/21) on a finite interval. Throws
/// QuadratureFailure when the target is out of reach within the budget.
QuadratureResult quad_interval(const ComplexIntegrand& f, double lo, double hi,
                               const QuadOptions& options = {});

/// Integral over the real line for integrands that decay at least
/// exponentially beyond +-halfwidth around `center`. The window doubles
/// until the outer slabs contribute less than the target.
QuadratureResult quad_real_line(const ComplexIntegrand& f, double tol, double halfwidth,
                                double center = 0.0, long max_evaluations = 1'000'000);

double quad_real_line_value(const RealIntegrand& f, double tol, double halfwidth,
                            double center = 0.0);

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz) for any complex z.
Complex faddeeva(Complex z);

/// Scaled complementary error function exp(w^2) erfc(w); requires Re w >= 0.
Complex complex_erfcx(Complex w);

/// erfc at complex argument, |Im w| <= 30.
Complex complex_erfc(Complex w);

/// Physicists' Hermite polynomial H_n(y) and its derivative.
std::pair<double, double> hermite_eval(int n, double y);

/// H_0(y) .. H_n(y).
std::vector<double> hermite_table(int n, double y);

/// Normalized Hermite functions (2^k k! sqrt(pi))^{-1/2} e^{-u^2/2} H_k(u), k = 0..n.
std::vector<double> hermite_functions(int n, double u);

struct ScatterResult {
  double p = 0.0;
  Complex reflection;
  Complex transmission;
};

/// Stationary scattering at energy p^2 off a potential supported (to
/// 1e-12) inside [x_left, x_right]: a pure transmitted wave e^{ipx} is
/// integrated leftwards and decomposed into incident and reflected waves.
/// `breakpoints` are discontinuities of the potential.
ScatterResult scatter_potential(const RealIntegrand& potential, double p, double x_left,
                                double x_right, std::span<const double> breakpoints = {},
                                double tolerance = 1e-11);

/// Scattering off the N-soliton potential on [-x_range, x_range];
/// x_range <= 0 selects 30 / a_1 (plus the shift scale).
ScatterResult scatter(const SolitonParams& params, double p, double x_range = 0.0);

/// 4th-order central difference from a 5-point stencil f(x-2h) .. f(x+2h).
Complex finite_diff(std::span<const Complex, 5> stencil, int order, double spacing);
double finite_diff(std::span<const double, 5> stencil, int order, double spacing);

/// Binomial coefficients C(n, 0..n).
std::vector<double> binomial_row(int n);

}  // namespace soliton::numerics
