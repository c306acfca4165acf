#include "soliton/wronskian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "soliton/numerics.hpp"

namespace soliton::wronskian {

namespace {

constexpr double kOracleExponentLimit = 600.0;

// e^{s-M} (+/-) e^{-s-M}, halved: cosh or sinh of s scaled by e^{-M}
double scaled_hyperbolic(double s, double m, bool sinh) {
  const double up = std::exp(s - m);
  const double down = std::exp(-s - m);
  return 0.5 * (sinh ? up - down : up + down);
}

}  // namespace

std::vector<FunctionType> transformation_types(std::size_t n) {
  std::vector<FunctionType> types(n);
  for (std::size_t k = 0; k < n; ++k) types[k] = (k % 2 == 0) ? FunctionType::Cosh : FunctionType::Sinh;
  return types;
}

CoshExpansion::CoshExpansion(std::vector<HyperbolicTerm> terms, bool odd)
    : terms_(std::move(terms)), odd_(odd) {}

double CoshExpansion::dominant_exponent(double x) const {
  double m = 0.0;
  for (const auto& term : terms_) m = std::max(m, std::abs(term.frequency * x + term.phase));
  return m;
}

CoshExpansion::Scaled CoshExpansion::derivatives(double x, int order) const {
  const double m = dominant_exponent(x);
  Scaled out{m, std::vector<double>(std::size_t(order) + 1, 0.0)};
  for (const auto& term : terms_) {
    const double s = term.frequency * x + term.phase;
    const double c = scaled_hyperbolic(s, m, false);
    const double sh = scaled_hyperbolic(s, m, true);
    double power = term.coefficient;
    for (int k = 0; k <= order; ++k) {
      // even parity: cosh at even orders; odd parity swaps the roles
      const bool use_sinh = ((k % 2) == 1) != odd_;
      out.values[k] += power * (use_sinh ? sh : c);
      power *= term.frequency;
    }
  }
  return out;
}

CoshExpansion build_expansion(std::span<const double> a, std::span<const double> b,
                              std::span<const FunctionType> types) {
  const std::size_t n = a.size();
  if (n == 0) return CoshExpansion({{1.0, 0.0, 0.0}}, false);

  std::size_t sinh_count = 0;
  for (auto type : types) sinh_count += (type == FunctionType::Sinh);
  const bool odd = ((sinh_count + n * (n - 1) / 2) % 2) == 1;

  const double prefactor = std::ldexp(1.0, 1 - int(n));
  std::vector<HyperbolicTerm> terms;
  terms.reserve(std::size_t(1) << (n - 1));
  std::vector<int> eps(n, 1);
  for (std::size_t bits = 0; bits < (std::size_t(1) << (n - 1)); ++bits) {
    // eps_1 = +1 fixed; the set and its global negation are the same term
    for (std::size_t l = 1; l < n; ++l) eps[l] = ((bits >> (l - 1)) & 1) ? -1 : 1;
    double sign = 1.0;
    for (std::size_t l = 0; l < n; ++l) {
      if (eps[l] < 0 && types[l] == FunctionType::Sinh) sign = -sign;
    }
    double vandermonde = 1.0;
    for (std::size_t j = 1; j < n; ++j) {
      for (std::size_t i = 0; i < j; ++i) vandermonde *= eps[j] * a[j] - eps[i] * a[i];
    }
    double frequency = 0.0;
    double phase = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
      frequency += eps[l] * a[l];
      phase += eps[l] * b[l];
    }
    terms.push_back({prefactor * sign * vandermonde, frequency, phase});
  }
  return CoshExpansion(std::move(terms), odd);
}

CoshExpansion build_cosh_expansion(const SolitonParams& params) {
  const auto types = transformation_types(params.n());
  return build_expansion(params.a(), params.b(), types);
}

LogValue eval_signed(const CoshExpansion& expansion, double x) {
  const auto scaled = expansion.derivatives(x, 0);
  const double v = scaled.values[0];
  if (v == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
  return {scaled.log_scale + std::log(std::abs(v)), v > 0.0 ? 1 : -1};
}

LogValue eval_wronskian(const CoshExpansion& expansion, double x) {
  const LogValue value = eval_signed(expansion, x);
  if (value.sign <= 0) {
    throw Error(ErrorCode::NonPositiveWronskian,
                "Wronskian is not positive at x = " + std::to_string(x));
  }
  return value;
}

std::vector<double> log_derivatives(const CoshExpansion& expansion, double x, int order) {
  const auto scaled = expansion.derivatives(x, order);
  const double w = scaled.values[0];
  if (w == 0.0) throw Error(ErrorCode::NonPositiveWronskian, "log-derivative at a node");
  std::vector<double> ratio(std::size_t(order) + 1);
  for (int m = 0; m <= order; ++m) ratio[m] = scaled.values[m] / w;

  // W^{(m+1)} = sum_k C(m,k) g^{(k+1)} W^{(m-k)} with g = log W
  std::vector<double> g(std::size_t(order) + 1, 0.0);  // g[k] = g^{(k)}, k >= 1
  for (int m = 0; m < order; ++m) {
    const auto binom = numerics::binomial_row(m);
    double acc = ratio[m + 1];
    for (int k = 0; k < m; ++k) acc -= binom[k] * g[k + 1] * ratio[m - k];
    g[m + 1] = acc;
  }
  return {g.begin() + 1, g.end()};
}

namespace {

double transformation_derivative(FunctionType type, double a, double b, double x, int order) {
  const double s = a * x + b;
  const bool even = (order % 2) == 0;
  const bool use_cosh = (type == FunctionType::Cosh) == even;
  return std::pow(a, order) * (use_cosh ? std::cosh(s) : std::sinh(s));
}

void check_oracle_range(double a, double b, double x) {
  if (std::abs(a * x + b) > kOracleExponentLimit) {
    throw Error(ErrorCode::OverflowRange,
                "determinant oracle outside its range at x = " + std::to_string(x));
  }
}

}  // namespace

Complex wronskian_determinant_oracle(const SolitonParams& params, double x,
                                     const AnalyticState* extra, double t) {
  const std::size_t n = params.n();
  const std::size_t size = n + (extra ? 1 : 0);
  const auto types = transformation_types(n);
  Eigen::MatrixXcd m(size, size);
  for (std::size_t k = 0; k < n; ++k) {
    check_oracle_range(params.a()[k], params.b()[k], x);
    for (std::size_t row = 0; row < size; ++row) {
      m(row, k) = transformation_derivative(types[k], params.a()[k], params.b()[k], x, int(row));
    }
  }
  if (extra) {
    const auto d = extra->derivatives(x, t, int(n));
    for (std::size_t row = 0; row < size; ++row) m(row, n) = d[row];
  }
  return m.partialPivLu().determinant();
}

Complex wronskian_determinant_oracle(const SolitonParams& params,
                                     std::span<const std::size_t> subset, double x) {
  const auto types = transformation_types(params.n());
  const std::size_t size = subset.size();
  if (size == 0) return 1.0;
  Eigen::MatrixXd m(size, size);
  for (std::size_t col = 0; col < size; ++col) {
    const std::size_t k = subset[col];
    if (k >= params.n()) throw Error(ErrorCode::IndexOutOfRange, "subset index");
    check_oracle_range(params.a()[k], params.b()[k], x);
    for (std::size_t row = 0; row < size; ++row) {
      m(row, col) = transformation_derivative(types[k], params.a()[k], params.b()[k], x, int(row));
    }
  }
  return m.partialPivLu().determinant();
}

double potential(const CoshExpansion& expansion, double x) {
  // V = -2 (W W'' - W'^2) / W^2, numerator summed pairwise so that no
  // cancellation occurs in the tails:
  // W W'' - W'^2 = 1/4 sum_ij c_i c_j [(f_i - f_j)^2 cosh(s_i + s_j)
  //                                    +- (f_i + f_j)^2 cosh(s_i - s_j)]
  const auto& terms = expansion.terms();
  const double m = expansion.dominant_exponent(x);
  const double cross_sign = expansion.odd() ? -1.0 : 1.0;
  double w = 0.0;
  double numerator = 0.0;
  for (const auto& ti : terms) {
    const double si = ti.frequency * x + ti.phase;
    w += ti.coefficient * scaled_hyperbolic(si, m, expansion.odd());
    for (const auto& tj : terms) {
      const double sj = tj.frequency * x + tj.phase;
      const double diff = ti.frequency - tj.frequency;
      const double sum = ti.frequency + tj.frequency;
      // both cosh factors scaled by e^{-2M}
      const double plus = scaled_hyperbolic(si + sj, 2.0 * m, false);
      const double minus = scaled_hyperbolic(si - sj, 2.0 * m, false);
      numerator += ti.coefficient * tj.coefficient *
                   (diff * diff * plus + cross_sign * sum * sum * minus);
    }
  }
  return -0.5 * numerator / (w * w);
}

double potential(const SolitonParams& params, double x) {
  return potential(build_cosh_expansion(params), x);
}

CoshExpansion reduced_expansion(const SolitonParams& params, std::size_t k) {
  if (k < 1 || k > params.n()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "level index " + std::to_string(k) + " outside 1.." + std::to_string(params.n()));
  }
  const auto all_types = transformation_types(params.n());
  std::vector<double> a;
  std::vector<double> b;
  std::vector<FunctionType> types;
  for (std::size_t j = 0; j < params.n(); ++j) {
    if (j + 1 == k) continue;
    a.push_back(params.a()[j]);
    b.push_back(params.b()[j]);
    types.push_back(all_types[j]);
  }
  return build_expansion(a, b, types);
}

LogValue reduced_wronskian(const SolitonParams& params, std::size_t k, double x) {
  return eval_signed(reduced_expansion(params, k), x);
}

}  // namespace soliton::wronskian
