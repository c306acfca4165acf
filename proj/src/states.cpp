#include "soliton/states.hpp"

#include <cmath>

#include "soliton/measures.hpp"
#include "soliton/numerics.hpp"
#include "soliton/wronskian.hpp"

namespace soliton::states {

namespace {

constexpr Complex kI(0.0, 1.0);

// d^j/du^j exp(beta u^2) = exp(beta u^2) P_j(u),
// P_{j+1} = 2 beta u P_j + 2 beta j P_{j-1}
std::vector<Complex> gaussian_factors(Complex beta, Complex u, int order) {
  std::vector<Complex> p(std::size_t(order) + 1);
  p[0] = 1.0;
  if (order >= 1) p[1] = 2.0 * beta * u;
  for (int j = 1; j < order; ++j) p[j + 1] = 2.0 * beta * (u * p[j] + double(j) * p[j - 1]);
  return p;
}

// exp(-u^2 / (4 (1 + i t))) is the common Gaussian of psi_n and psi_z
Complex spreading_beta(double t) { return -0.25 / Complex(1.0, t); }

void fill_free_basis(int n, double x, double t, std::span<Complex> out) {
  const int order = int(out.size()) - 1;
  const Complex beta = spreading_beta(t);
  const double s = 1.0 / std::sqrt(2.0 + 2.0 * t * t);
  const double log_norm =
      -0.5 * (std::lgamma(n + 1.0) + n * std::log(2.0) + 0.5 * std::log(2.0 * kPi));
  const Complex phase = std::pow(-kI, n) * std::exp(Complex(0.0, -n * std::atan(t)));
  const Complex prefactor = std::exp(log_norm) * phase / std::sqrt(Complex(1.0, t)) *
                            std::exp(beta * x * x);
  const auto gauss = gaussian_factors(beta, x, order);
  const auto hermite = numerics::hermite_table(n, s * x);
  // d^k H_n(s x) = s^k 2^k n!/(n-k)! H_{n-k}(s x)
  std::vector<double> hermite_d(std::size_t(std::min(order, n)) + 1);
  double falling = 1.0;
  for (int k = 0; k <= std::min(order, n); ++k) {
    hermite_d[k] = falling * hermite[n - k];
    falling *= 2.0 * s * double(n - k);
  }
  for (int m = 0; m <= order; ++m) {
    const auto binom = numerics::binomial_row(m);
    Complex acc = 0.0;
    for (int k = 0; k <= std::min(m, n); ++k) acc += binom[k] * gauss[m - k] * hermite_d[k];
    out[m] = prefactor * acc;
  }
}

}  // namespace

Complex free_basis(int n, double x, double t) {
  Complex out[1];
  fill_free_basis(n, x, t, out);
  return out[0];
}

AnalyticState free_basis_state(int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "basis index must be nonnegative");
  return AnalyticState([n](double x, double t, std::span<Complex> out) { fill_free_basis(n, x, t, out); },
                       kUnboundedOrder, "psi_" + std::to_string(n));
}

Complex free_plane_wave(double p, double x, double t) {
  return std::exp(Complex(0.0, p * x - p * p * t)) / std::sqrt(2.0 * kPi);
}

AnalyticState free_plane_wave_state(double p) {
  return AnalyticState(
      [p](double x, double t, std::span<Complex> out) {
        Complex value = free_plane_wave(p, x, t);
        for (auto& o : out) {
          o = value;
          value *= Complex(0.0, p);
        }
      },
      kUnboundedOrder, "psi_p");
}

namespace {

void fill_free_cs(Complex z, double x, double t, std::span<Complex> out) {
  const int order = int(out.size()) - 1;
  const Complex beta = spreading_beta(t);
  const Complex u = x + 2.0 * kI * z;
  const double re2 = 2.0 * z.real();
  const Complex value = std::pow(2.0 * kPi, -0.25) / std::sqrt(Complex(1.0, t)) *
                        std::exp(-0.25 * re2 * re2 + beta * u * u);
  const auto gauss = gaussian_factors(beta, u, order);
  for (int m = 0; m <= order; ++m) out[m] = value * gauss[m];
}

}  // namespace

Complex free_cs(const ComplexLabel& z, double x, double t) {
  Complex out[1];
  fill_free_cs(z.z, x, t, out);
  return out[0];
}

AnalyticState free_cs_state(const ComplexLabel& z) {
  return AnalyticState(
      [z = z.z](double x, double t, std::span<Complex> out) { fill_free_cs(z, x, t, out); },
      kUnboundedOrder, "psi_z");
}

Complex momentum_overlap(double p, const ComplexLabel& label) {
  const Complex z = label.z;
  const double re2 = 2.0 * z.real();
  return std::pow(2.0 / kPi, 0.25) * std::exp(-0.25 * re2 * re2 - p * p - 2.0 * z * p);
}

double momentum_basis(int n, double p) {
  const auto h = numerics::hermite_functions(n, std::sqrt(2.0) * p);
  return ((n % 2) ? -1.0 : 1.0) * std::pow(2.0, 0.25) * h[n];
}

double bound_state_norm(const SolitonParams& params, std::size_t k) {
  if (k < 1 || k > params.n()) throw Error(ErrorCode::IndexOutOfRange, "bound state index");
  const double ak = params.a()[k - 1];
  double product = 0.5 * ak;
  for (std::size_t j = 0; j < params.n(); ++j) {
    if (j != k - 1) product *= std::abs(ak * ak - params.a()[j] * params.a()[j]);
  }
  return std::sqrt(product);
}

double bound_state(const SolitonParams& params, std::size_t k, double x) {
  const double norm = bound_state_norm(params, k);
  const auto reduced = wronskian::reduced_wronskian(params, k, x);
  if (reduced.sign == 0) return 0.0;
  const auto full = wronskian::eval_wronskian(wronskian::build_cosh_expansion(params), x);
  return reduced.sign * norm * std::exp(reduced.log_value - full.log_value);
}

AnalyticState bound_state_state(const SolitonParams& params, std::size_t k) {
  const double norm = bound_state_norm(params, k);
  const double energy = -params.a()[k - 1] * params.a()[k - 1];
  auto full = wronskian::build_cosh_expansion(params);
  auto reduced = wronskian::reduced_expansion(params, k);
  return AnalyticState(
      [norm, energy, full = std::move(full), reduced = std::move(reduced)](
          double x, double t, std::span<Complex> out) {
        const int order = int(out.size()) - 1;
        const auto w = full.derivatives(x, order);
        const auto r = reduced.derivatives(x, order);
        const double w0 = w.values[0];
        const double scale = std::exp(r.log_scale - w.log_scale);
        // ratio R = W^{(k)} / W by the Leibniz recurrence on R W = W^{(k)}
        std::vector<double> ratio(std::size_t(order) + 1);
        for (int m = 0; m <= order; ++m) {
          const auto binom = numerics::binomial_row(m);
          double acc = r.values[m] * scale / w0;
          for (int i = 0; i < m; ++i) acc -= binom[i] * ratio[i] * w.values[m - i] / w0;
          ratio[m] = acc;
        }
        const Complex phase = std::exp(Complex(0.0, -energy * t));
        for (int m = 0; m <= order; ++m) out[m] = norm * ratio[m] * phase;
      },
      kUnboundedOrder, "phi_" + std::to_string(k));
}

Complex continuum_state(const darboux::DarbouxChain& chain, double p, double x, double t) {
  const auto symbol = chain.plane_wave_symbol(x);
  const Complex k(0.0, p);
  Complex poly = 0.0;
  for (std::size_t m = symbol.size(); m-- > 0;) poly = poly * k + symbol[m];
  return poly * free_plane_wave(p, x, t) / darboux::continuum_norm(chain.params(), p);
}

Complex continuum_state(const SolitonParams& params, double p, double x, double t) {
  return continuum_state(darboux::build_chain(params), p, x, t);
}

Complex cs_phi(const darboux::DarbouxChain& chain, const ComplexLabel& z, double x, double t) {
  return darboux::apply_L(chain, free_cs_state(z), x, t);
}

Complex cs_phi_one_soliton(double a, double b, const ComplexLabel& label, double x, double t) {
  const Complex z = label.z;
  const Complex one_it(1.0, t);
  const Complex u = x + 2.0 * kI * z;
  const double re2 = 2.0 * z.real();
  return -0.5 * std::pow(2.0 * kPi, -0.25) * std::pow(one_it, -1.5) *
         (u + 2.0 * a * one_it * std::tanh(a * x + b)) *
         std::exp(-u * u / (4.0 * one_it) - 0.25 * re2 * re2);
}

namespace {

struct EtaPieces {
  Complex value;
  Complex gaussian;  // (2pi)^{-1/4} s^{-1} exp(-(z+zbar)^2/4 - u^2/s^2), i.e. psi_z
};

EtaPieces eta_pieces(double a, Complex z, double x, double t) {
  const Complex s = std::sqrt(Complex(1.0, t));
  const Complex u = 0.5 * x + kI * z;
  const double re2 = 2.0 * z.real();
  const Complex common = std::exp(-0.25 * re2 * re2);
  const Complex gauss = std::exp(-u * u / (s * s));
  const double ax = a * x;

  // sech(ax) e^{a^2 s^2 +- 2iaz} erfc(a s +- u/s), rearranged so that
  // neither factor overflows
  auto branch = [&](double sign) {
    const Complex w = a * s + sign * u / s;
    if (w.real() >= 0.0) {
      // e^{a^2 s^2 +- 2iaz - w^2} = e^{-+ a x - u^2/s^2}
      const double sech_shift = 2.0 / (1.0 + std::exp(2.0 * sign * ax));
      return gauss * sech_shift * numerics::complex_erfcx(w);
    }
    return std::exp(a * a * s * s + sign * 2.0 * kI * a * z) / std::cosh(ax) *
           numerics::complex_erfc(w);
  };
  const double prefactor = 0.5 * std::sqrt(kPi) * std::pow(2.0 * kPi, -0.25);
  const Complex value = prefactor * common * (branch(1.0) - branch(-1.0));
  const Complex psi = std::pow(2.0 * kPi, -0.25) / s * common * gauss;
  return {value, psi};
}

}  // namespace

Complex cs_eta_one_soliton(double a, const ComplexLabel& z, double x, double t) {
  return eta_pieces(a, z.z, x, t).value;
}

AnalyticState cs_eta_one_soliton_state(double a, const ComplexLabel& z) {
  return AnalyticState(
      [a, z = z.z](double x, double t, std::span<Complex> out) {
        const auto pieces = eta_pieces(a, z, x, t);
        out[0] = pieces.value;
        // eta' = -a tanh(ax) eta - psi_z: the erfc terms differentiate
        // into the Gaussian itself
        if (out.size() > 1) out[1] = -a * std::tanh(a * x) * pieces.value - pieces.gaussian;
      },
      1, "eta_z");
}

double synthesis_weight(SynthesisWeight weight, const SolitonParams& params, double p) {
  switch (weight) {
    case SynthesisWeight::Unit: return 1.0;
    case SynthesisWeight::Norm: return darboux::continuum_norm(params, p);
    case SynthesisWeight::InverseNorm: return 1.0 / darboux::continuum_norm(params, p);
  }
  return 1.0;
}

Complex synthesize(const darboux::DarbouxChain& chain, SynthesisWeight weight,
                   const std::function<Complex(double)>& amplitude, double center, double x,
                   double t, double tol) {
  const auto symbol = chain.plane_wave_symbol(x);
  const auto& params = chain.params();
  auto integrand = [&](double p) {
    const Complex k(0.0, p);
    Complex poly = 0.0;
    for (std::size_t m = symbol.size(); m-- > 0;) poly = poly * k + symbol[m];
    const double w = synthesis_weight(weight, params, p) / darboux::continuum_norm(params, p);
    return w * poly * free_plane_wave(p, x, t) * amplitude(p);
  };
  return numerics::quad_real_line(integrand, tol, 8.0, center).value;
}

Complex synth_state(const darboux::DarbouxChain& chain, SynthesisWeight weight,
                    const ComplexLabel& z, double x, double t, double tol) {
  // |<psi_p|psi_z>| is a Gaussian centred at p = -Re z
  return synthesize(
      chain, weight, [&z](double p) { return momentum_overlap(p, z); }, -z.re(), x, t, tol);
}

OverlapMatrix overlap_s0(double a, int n_max) {
  if (n_max < 0) throw Error(ErrorCode::InvalidArgument, "n_max must be nonnegative");
  const int size = n_max + 1;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);
  for (int n = 0; n < size; ++n) {
    m(n, n) = 0.5 * n + 0.25 + a * a;
    if (n + 2 < size) {
      m(n, n + 2) = 0.25 * std::sqrt(double(n + 1) * double(n + 2));
      m(n + 2, n) = m(n, n + 2);
    }
  }
  return {OverlapKind::S0, std::move(m)};
}

OverlapMatrix overlap_s(const SolitonParams& params, int n_max) {
  if (n_max < 0) throw Error(ErrorCode::InvalidArgument, "n_max must be nonnegative");
  const int guarded = n_max + 2 * int(params.n());
  Eigen::MatrixXd product = Eigen::MatrixXd::Identity(guarded + 1, guarded + 1);
  for (double a : params.a()) product = product * overlap_s0(a, guarded).entries;
  return {OverlapKind::S, product.topLeftCorner(n_max + 1, n_max + 1)};
}

OverlapMatrix overlap_s_inverse(const SolitonParams& params, int n_max, double tol) {
  if (n_max < 0) throw Error(ErrorCode::InvalidArgument, "n_max must be nonnegative");
  const int size = n_max + 1;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);
  for (int n = 0; n < size; ++n) {
    for (int k = n; k < size; k += 2) {
      // entries with n + k odd vanish by parity
      const double halfwidth = 6.0 + std::sqrt(double(k) + 1.0);
      const double value = numerics::quad_real_line_value(
          [&](double p) {
            const double np = darboux::continuum_norm(params, p);
            return momentum_basis(n, p) * momentum_basis(k, p) / (np * np);
          },
          tol, halfwidth);
      m(n, k) = value;
      m(k, n) = value;
    }
  }
  return {OverlapKind::SInverse, std::move(m)};
}

double norm_eta(const SolitonParams& params, const ComplexLabel& z) {
  const auto fractions = measures::partial_fractions(params);
  const double x = z.re();
  double sum = 0.0;
  for (std::size_t k = 0; k < params.n(); ++k) {
    const double a = params.a()[k];
    // e^{2(a^2 - x^2)} Re[e^{4iax} erfc(sqrt2 (a + ix))] = Re erfcx(sqrt2 (a + ix))
    const Complex w = std::sqrt(2.0) * Complex(a, x);
    const double f = std::sqrt(2.0 * kPi) / a * numerics::complex_erfcx(w).real();
    sum += fractions.residues[k] * f;
  }
  return sum;
}

double norm_phi(const SolitonParams& params, const ComplexLabel& z) {
  return numerics::quad_real_line_value(
      [&](double p) {
        const double np = darboux::continuum_norm(params, p);
        return np * np * std::norm(momentum_overlap(p, z));
      },
      1e-14, 8.0, -z.re());
}

}  // namespace soliton::states
