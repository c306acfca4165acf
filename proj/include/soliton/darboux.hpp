#pragma once

#include <memory>
#include <span>
#include <vector>

#include "soliton/core.hpp"
#include "soliton/wronskian.hpp"

namespace soliton::darboux {

/// The N-th order Darboux operator as a product of first-order factors
///   L = (d - sigma_N) ... (d - sigma_1),  sigma_j = (log W_j / W_{j-1})'
/// where W_j = W(u_1..u_j). The adjoint is the reversed product of
/// (-d - sigma_j).
class DarbouxChain {
 public:
  const SolitonParams& params() const noexcept { return params_; }
  std::size_t stage_count() const noexcept { return prefixes_.size(); }
  const wronskian::CoshExpansion& prefix(std::size_t j) const { return prefixes_.at(j); }

  /// sigma_j^{(i)}(x) for stages j = 0..N-1 and i = 0..order.
  std::vector<std::vector<double>> sigma_derivatives(double x, int order) const;

  /// Maps the derivative stack psi^{(0..M)} at x to (L psi)^{(0..M-N)}.
  std::vector<Complex> forward(double x, std::span<const Complex> stack) const;

  /// Maps phi^{(0..M)} at x to (L^+ phi)^{(0..M-N)}.
  std::vector<Complex> adjoint(double x, std::span<const Complex> stack) const;

  /// Coefficients q_0..q_N with L e^{ikx} = e^{ikx} sum_m q_m(x) k^m.
  std::vector<double> plane_wave_symbol(double x) const;

 private:
  DarbouxChain(SolitonParams params, std::vector<wronskian::CoshExpansion> prefixes)
      : params_(std::move(params)), prefixes_(std::move(prefixes)) {}
  friend DarbouxChain build_chain(const SolitonParams& params);

  SolitonParams params_;
  std::vector<wronskian::CoshExpansion> prefixes_;
};

/// Probe grid used to confirm that every W(u_1..u_j) is nodeless.
inline constexpr std::size_t kProbePoints = 2001;

DarbouxChain build_chain(const SolitonParams& params);

Complex apply_L(const DarbouxChain& chain, const AnalyticState& state, double x, double t);
Complex apply_L_adjoint(const DarbouxChain& chain, const AnalyticState& state, double x, double t);

/// L psi (resp. L^+ psi) as a state of its own, carrying max_order - N
/// derivatives.
AnalyticState transformed(std::shared_ptr<const DarbouxChain> chain, AnalyticState state);
AnalyticState adjoint_transformed(std::shared_ptr<const DarbouxChain> chain, AnalyticState state);

/// N_p = sqrt(prod_k (p^2 + a_k^2)).
double continuum_norm(const SolitonParams& params, double p);

/// T(p) = prod_k (ip - a_k)/(ip + a_k), |T| = 1.
Complex transmission_coefficient(const SolitonParams& params, double p);

/// arg T(p) accumulated factor by factor (not reduced to (-pi, pi]).
double transmission_phase(const SolitonParams& params, double p);

}  // namespace soliton::darboux
