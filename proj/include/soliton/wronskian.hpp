#pragma once

// Wronskians of the alternating cosh/sinh transformation functions
//   u_{2k-1} = cosh(a x + b),  u_{2k} = sinh(a x + b)
// written as short sums of hyperbolic functions, and the N-soliton
// potential V_1 = -2 (log W)''.

#include <span>
#include <vector>

#include "soliton/core.hpp"

namespace soliton::wronskian {

enum class FunctionType { Cosh, Sinh };

/// Types of u_1..u_n: cosh at odd positions, sinh at even ones.
std::vector<FunctionType> transformation_types(std::size_t n);

struct HyperbolicTerm {
  double coefficient;
  double frequency;
  double phase;
};

/// W(x) = sum_i c_i cosh(f_i x + phi_i), or the same with sinh when the
/// expansion has odd parity. The full Wronskian of the alternating family
/// is always a cosh sum with 2^{n-1} terms; reduced sets may be sinh sums.
class CoshExpansion {
 public:
  CoshExpansion(std::vector<HyperbolicTerm> terms, bool odd);

  const std::vector<HyperbolicTerm>& terms() const noexcept { return terms_; }
  std::size_t count() const noexcept { return terms_.size(); }
  bool odd() const noexcept { return odd_; }

  /// W^{(m)}(x) = exp(log_scale) * values[m] for m = 0..order.
  struct Scaled {
    double log_scale;
    std::vector<double> values;
  };
  Scaled derivatives(double x, int order) const;

  /// Largest |f_i x + phi_i|, the exponent factored out in log-space.
  double dominant_exponent(double x) const;

 private:
  std::vector<HyperbolicTerm> terms_;
  bool odd_;
};

CoshExpansion build_expansion(std::span<const double> a, std::span<const double> b,
                              std::span<const FunctionType> types);
CoshExpansion build_cosh_expansion(const SolitonParams& params);

struct LogValue {
  double log_value;  // log |W|
  int sign;          // +1, -1, or 0 at an exact node
};

/// log W(x) of the full Wronskian; throws NonPositiveWronskian when the
/// sum is not positive.
LogValue eval_wronskian(const CoshExpansion& expansion, double x);

/// Same evaluation without the positivity requirement (reduced sets).
LogValue eval_signed(const CoshExpansion& expansion, double x);

/// (log W)^{(m)} for m = 1..order, returned at index m-1.
std::vector<double> log_derivatives(const CoshExpansion& expansion, double x, int order);

/// W(u_1..u_N) or W(u_1..u_N, psi) as a raw determinant of the derivative
/// matrix, LU with partial pivoting. Desk-scale only: throws OverflowRange
/// when cosh(a x + b) would overflow.
Complex wronskian_determinant_oracle(const SolitonParams& params, double x,
                                     const AnalyticState* extra = nullptr, double t = 0.0);

/// Determinant oracle for an arbitrary subset of the transformation
/// functions (0-based indices into params).
Complex wronskian_determinant_oracle(const SolitonParams& params,
                                     std::span<const std::size_t> subset, double x);

double potential(const CoshExpansion& expansion, double x);
double potential(const SolitonParams& params, double x);

/// Wronskian with u_k omitted, 1 <= k <= N (W^{(1)} = 1 for N = 1).
CoshExpansion reduced_expansion(const SolitonParams& params, std::size_t k);
LogValue reduced_wronskian(const SolitonParams& params, std::size_t k, double x);

}  // namespace soliton::wronskian
