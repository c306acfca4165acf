#pragma once

// Resolution-of-identity measures for the eta and phi coherent-state
// families. Both are fixed by moment equations in the momentum p:
//   eta: (2 pi)^{1/2} int dx w(x) F_p(x) = N_p^2 exp(2 p^2)
//   phi: pi int dt rho(t) exp(-t^2/8 + i p t) = N_p^{-2}
// with F_p(x) = exp(4 p x - 2 x^2).

#include <vector>

#include "soliton/core.hpp"

namespace soliton::measures {

/// N_p^{-2} = sum_k A_k / (p^2 + a_k^2).
struct PartialFractions {
  std::vector<double> a;
  std::vector<double> residues;

  double evaluate(double p) const;
};

PartialFractions partial_fractions(const SolitonParams& params);

/// Coefficients (ascending powers of p) of prod_k (p^2 + a_k^2).
std::vector<double> norm_polynomial(const SolitonParams& params);

/// Q_m(p) with int x^m F_p(x) dx = sqrt(pi/2) e^{2p^2} Q_m(p), i.e. the
/// moments of a normal law with mean p and variance 1/4. Ascending
/// coefficients; Q_{m+1} = p Q_m + (m/4) Q_{m-1}.
std::vector<std::vector<double>> moment_polynomials(int max_degree);

/// Density w_eta(x) = sum_m c_m x^m of the eta measure d mu = w dx dy.
struct MeasureEta {
  std::vector<double> coefficients;

  double evaluate(double x) const;
  int degree() const noexcept { return int(coefficients.size()) - 1; }
};

MeasureEta eta_measure(const SolitonParams& params);

/// rho_phi(t) = (2 pi)^{-1} sum_k (A_k / a_k) exp(t^2/8 - a_k |t|). Grows
/// like exp(t^2/8); only meaningful against test functions carrying
/// the matching exp(-t^2/8).
struct MeasurePhi {
  PartialFractions fractions;

  double evaluate(double t) const;
  /// rho_phi(t) exp(-t^2/8), the part that is integrable.
  double damped(double t) const;
};

MeasurePhi phi_measure(const SolitonParams& params);

/// Residual of the eta moment equation at kappa = (p + q)/2, which is what
/// the delta-normalized resolution of identity reduces to after the
/// y-integration and smearing.
VerificationReport verify_eta_resolution(const SolitonParams& params, double p, double q,
                                         double tolerance = 1e-9);

/// Relative residual |LHS - RHS| / RHS of the eta moment equation at p,
/// LHS by quadrature.
double eta_moment_residual(const MeasureEta& measure, const SolitonParams& params, double p);

/// Relative residual of pi int rho(t) e^{-t^2/8 + ipt} dt = N_p^{-2}.
double phi_fourier_residual(const MeasurePhi& measure, const SolitonParams& params, double p);

/// Fourier image of F_p with the convention F~(t) = int dx e^{itx} F(x):
/// sqrt(pi/2) exp(2 p^2 + i p t - t^2/8).
Complex fourier_fp(double p, double t);

}  // namespace soliton::measures
