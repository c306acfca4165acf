#include "soliton/measures.hpp"

#include <cmath>
#include <cstdio>

#include "soliton/darboux.hpp"
#include "soliton/numerics.hpp"

namespace soliton::measures {

double PartialFractions::evaluate(double p) const {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += residues[k] / (p * p + a[k] * a[k]);
  return sum;
}

PartialFractions partial_fractions(const SolitonParams& params) {
  PartialFractions pf{params.a(), {}};
  const auto& a = params.a();
  for (std::size_t k = 0; k < a.size(); ++k) {
    // A_k = 1 / (d N^2 / d tau) at tau = -a_k^2
    double derivative = 1.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (j != k) derivative *= a[j] * a[j] - a[k] * a[k];
    }
    pf.residues.push_back(1.0 / derivative);
  }
  return pf;
}

std::vector<double> norm_polynomial(const SolitonParams& params) {
  std::vector<double> poly{1.0};
  for (double a : params.a()) {
    std::vector<double> next(poly.size() + 2, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += a * a * poly[i];
      next[i + 2] += poly[i];
    }
    poly = std::move(next);
  }
  return poly;
}

std::vector<std::vector<double>> moment_polynomials(int max_degree) {
  std::vector<std::vector<double>> q(std::size_t(max_degree) + 1);
  q[0] = {1.0};
  if (max_degree >= 1) q[1] = {0.0, 1.0};
  for (int m = 1; m < max_degree; ++m) {
    std::vector<double> next(std::size_t(m) + 2, 0.0);
    for (std::size_t i = 0; i < q[m].size(); ++i) next[i + 1] += q[m][i];
    for (std::size_t i = 0; i < q[m - 1].size(); ++i) next[i] += 0.25 * m * q[m - 1][i];
    q[m + 1] = std::move(next);
  }
  return q;
}

double MeasureEta::evaluate(double x) const {
  double value = 0.0;
  for (std::size_t m = coefficients.size(); m-- > 0;) value = value * x + coefficients[m];
  return value;
}

MeasureEta eta_measure(const SolitonParams& params) {
  // pi sum_m c_m Q_m(p) = N_p^2(p); Q_m is monic of degree m, so the
  // system is triangular and solved from the top degree down.
  const auto target = norm_polynomial(params);
  const int degree = int(target.size()) - 1;
  const auto q = moment_polynomials(degree);
  std::vector<double> c(std::size_t(degree) + 1, 0.0);
  std::vector<double> remainder = target;
  for (int m = degree; m >= 0; --m) {
    const double lead = q[m][m];
    if (lead == 0.0) throw Error(ErrorCode::SingularMomentSystem, "vanishing moment pivot");
    const double coef = remainder[m] / lead;
    for (int i = 0; i <= m; ++i) remainder[i] -= coef * q[m][i];
    c[m] = coef / kPi;
  }
  return MeasureEta{std::move(c)};
}

double MeasurePhi::damped(double t) const {
  double sum = 0.0;
  for (std::size_t k = 0; k < fractions.a.size(); ++k) {
    sum += fractions.residues[k] / fractions.a[k] * std::exp(-fractions.a[k] * std::abs(t));
  }
  return sum / (2.0 * kPi);
}

double MeasurePhi::evaluate(double t) const { return damped(t) * std::exp(t * t / 8.0); }

MeasurePhi phi_measure(const SolitonParams& params) { return MeasurePhi{partial_fractions(params)}; }

double eta_moment_residual(const MeasureEta& measure, const SolitonParams& params, double p) {
  const double lhs = std::sqrt(2.0 * kPi) * numerics::quad_real_line_value(
                                                 [&](double x) {
                                                   return measure.evaluate(x) *
                                                          std::exp(4.0 * p * x - 2.0 * x * x);
                                                 },
                                                 1e-13, 6.0, p);
  const double np = darboux::continuum_norm(params, p);
  const double rhs = np * np * std::exp(2.0 * p * p);
  return std::abs(lhs - rhs) / rhs;
}

double phi_fourier_residual(const MeasurePhi& measure, const SolitonParams& params, double p) {
  // the t-integrand decays like exp(-a_1 |t|); the window is cut where
  // that envelope is below 1e-14
  const double t_max = std::log(1e14) / measure.fractions.a.front();
  const auto result = numerics::quad_interval(
      [&](double t) { return measure.damped(t) * std::exp(Complex(0.0, p * t)); }, -t_max, t_max,
      {1e-13, 2'000'000});
  const double lhs = kPi * result.value.real();
  const double np = darboux::continuum_norm(params, p);
  const double rhs = 1.0 / (np * np);
  return std::abs(lhs - rhs) / rhs;
}

VerificationReport verify_eta_resolution(const SolitonParams& params, double p, double q,
                                         double tolerance) {
  const double kappa = 0.5 * (p + q);
  const double residual = eta_moment_residual(eta_measure(params), params, kappa);
  char echo[96];
  std::snprintf(echo, sizeof echo, " kappa=%.17g", kappa);
  return make_report("eta_moment_equation", describe(params) + echo, residual, 0.0, tolerance);
}

Complex fourier_fp(double p, double t) {
  return std::sqrt(kPi / 2.0) * std::exp(Complex(2.0 * p * p - t * t / 8.0, p * t));
}

}  // namespace soliton::measures
