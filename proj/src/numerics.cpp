#include "soliton/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>

#include <boost/numeric/odeint.hpp>

#include "soliton/wronskian.hpp"

namespace soliton::numerics {

namespace {

// 21-point Kronrod abscissae; odd entries are the 10-point Gauss nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double lo, hi;
  Complex value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(const ComplexIntegrand& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const Complex fc = f(center);
  Complex kronrod = fc * kWgk[10];
  Complex gauss = 0.0;
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const Complex pair = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * pair;
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

constexpr long kPanelEvaluations = 21;

}  // namespace

QuadratureResult quad_interval(const ComplexIntegrand& f, double lo, double hi,
                               const QuadOptions& options) {
  std::priority_queue<Panel> panels;
  Panel first = gauss_kronrod(f, lo, hi);
  Complex total = first.value;
  double error = first.error;
  long evaluations = kPanelEvaluations;
  panels.push(first);
  const double min_width = 1e-13 * std::abs(hi - lo);

  while (error > options.tol * std::max(1.0, std::abs(total))) {
    if (evaluations + 2 * kPanelEvaluations > options.max_evaluations) {
      throw Error(ErrorCode::QuadratureFailure,
                  "tolerance " + std::to_string(options.tol) + " not reached, error estimate " +
                      std::to_string(error));
    }
    Panel worst = panels.top();
    if (worst.hi - worst.lo < min_width) {
      // the worst panel cannot be split further; what is left is rounding
      if (worst.error <= 1e-14 * std::max(1.0, std::abs(total))) break;
      throw Error(ErrorCode::QuadratureFailure, "panel width underflow");
    }
    panels.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    Panel left = gauss_kronrod(f, worst.lo, mid);
    Panel right = gauss_kronrod(f, mid, worst.hi);
    evaluations += 2 * kPanelEvaluations;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    if (panels.size() % 64 == 0) {
      // re-sum to keep the running totals free of drift
      auto copy = panels;
      total = 0.0;
      error = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        error += copy.top().error;
        copy.pop();
      }
    }
  }
  return {total, error, evaluations};
}

QuadratureResult quad_real_line(const ComplexIntegrand& f, double tol, double halfwidth,
                                double center, long max_evaluations) {
  if (!(halfwidth > 0.0)) throw Error(ErrorCode::InvalidArgument, "halfwidth must be positive");
  QuadOptions options{tol, max_evaluations};
  QuadratureResult result = quad_interval(f, center - halfwidth, center + halfwidth, options);
  double inner = halfwidth;
  for (int doubling = 0; doubling < 12; ++doubling) {
    const long budget = max_evaluations - result.evaluations;
    if (budget <= 0) throw Error(ErrorCode::QuadratureFailure, "evaluation budget exhausted");
    QuadOptions slab{tol, budget / 2};
    QuadratureResult lower = quad_interval(f, center - 2 * inner, center - inner, slab);
    QuadratureResult upper = quad_interval(f, center + inner, center + 2 * inner, slab);
    result.value += lower.value + upper.value;
    result.error_estimate += lower.error_estimate + upper.error_estimate;
    result.evaluations += lower.evaluations + upper.evaluations;
    const double outer = std::abs(lower.value) + std::abs(upper.value);
    inner *= 2.0;
    if (outer <= 0.1 * tol * std::max(1.0, std::abs(result.value))) {
      result.error_estimate += outer;
      return result;
    }
  }
  throw Error(ErrorCode::QuadratureFailure, "integrand does not decay within the window");
}

double quad_real_line_value(const RealIntegrand& f, double tol, double halfwidth, double center) {
  return quad_real_line([&f](double x) { return Complex(f(x), 0.0); }, tol, halfwidth, center)
      .value.real();
}

// Poppe & Wijers: truncated Taylor series inside a small ellipse around
// the origin, Laplace continued fraction (with Taylor-assisted
// convergence acceleration in the intermediate zone) elsewhere.
Complex faddeeva(Complex z) {
  constexpr double kFactor = 1.12837916709551257388;  // 2 / sqrt(pi)
  const double xi = z.real();
  const double yi = z.imag();
  const double xabs = std::abs(xi);
  const double yabs = std::abs(yi);
  const double xs = xabs / 6.3;
  const double ys = yabs / 4.4;
  double qrho = xs * xs + ys * ys;
  const double xquad = xabs * xabs - yabs * yabs;
  const double yquad = 2.0 * xabs * yabs;

  double u = 0.0;
  double v = 0.0;
  double u2 = 0.0;
  double v2 = 0.0;
  const bool inner = qrho < 0.085264;
  if (inner) {
    qrho = (1.0 - 0.85 * ys) * std::sqrt(qrho);
    const int n = int(std::lround(6.0 + 72.0 * qrho));
    int j = 2 * n + 1;
    double xsum = 1.0 / j;
    double ysum = 0.0;
    for (int i = n; i >= 1; --i) {
      j -= 2;
      const double xaux = (xsum * xquad - ysum * yquad) / i;
      ysum = (xsum * yquad + ysum * xquad) / i;
      xsum = xaux + 1.0 / j;
    }
    const double u1 = -kFactor * (xsum * yabs + ysum * xabs) + 1.0;
    const double v1 = kFactor * (xsum * xabs - ysum * yabs);
    const double daux = std::exp(-xquad);
    u2 = daux * std::cos(yquad);
    v2 = -daux * std::sin(yquad);
    u = u1 * u2 - v1 * v2;
    v = u1 * v2 + v1 * u2;
  } else {
    double h = 0.0;
    double h2 = 0.0;
    int kapn = 0;
    int nu = 0;
    if (qrho > 1.0) {
      qrho = std::sqrt(qrho);
      nu = int(3.0 + 1442.0 / (26.0 * qrho + 77.0));
    } else {
      qrho = (1.0 - ys) * std::sqrt(1.0 - qrho);
      h = 1.88 * qrho;
      h2 = 2.0 * h;
      kapn = int(std::lround(7.0 + 34.0 * qrho));
      nu = int(std::lround(16.0 + 26.0 * qrho));
    }
    const bool accelerate = h > 0.0;
    double qlambda = accelerate ? std::pow(h2, kapn) : 0.0;
    double rx = 0.0, ry = 0.0, sx = 0.0, sy = 0.0;
    for (int n = nu; n >= 0; --n) {
      const double np1 = n + 1;
      double tx = yabs + h + np1 * rx;
      const double ty = xabs - np1 * ry;
      const double c = 0.5 / (tx * tx + ty * ty);
      rx = c * tx;
      ry = c * ty;
      if (accelerate && n <= kapn) {
        tx = qlambda + sx;
        sx = rx * tx - ry * sy;
        sy = ry * tx + rx * sy;
        qlambda /= h2;
      }
    }
    if (accelerate) {
      u = kFactor * sx;
      v = kFactor * sy;
    } else {
      u = kFactor * rx;
      v = kFactor * ry;
    }
    if (yabs == 0.0) u = std::exp(-xabs * xabs);
  }

  if (yi < 0.0) {
    if (inner) {
      u2 *= 2.0;
      v2 *= 2.0;
    } else {
      const double w1 = 2.0 * std::exp(-xquad);
      u2 = w1 * std::cos(yquad);
      v2 = -w1 * std::sin(yquad);
    }
    u = u2 - u;
    v = v2 - v;
    if (xi > 0.0) v = -v;
  } else if (xi < 0.0) {
    v = -v;
  }
  return {u, v};
}

Complex complex_erfcx(Complex w) {
  if (w.real() < 0.0) throw Error(ErrorCode::InvalidArgument, "complex_erfcx needs Re w >= 0");
  // erfc(w) = exp(-w^2) w(i w)
  return faddeeva(Complex(-w.imag(), w.real()));
}

Complex complex_erfc(Complex w) {
  if (!(std::abs(w.imag()) <= 30.0)) {
    throw Error(ErrorCode::RangeExceeded, "|Im w| must not exceed 30");
  }
  if (w.real() < 0.0) return 2.0 - complex_erfc(-w);
  if (w == Complex(0.0)) return 1.0;
  return std::exp(-w * w) * complex_erfcx(w);
}

std::pair<double, double> hermite_eval(int n, double y) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "Hermite degree must be nonnegative");
  if (n == 0) return {1.0, 0.0};
  double prev = 1.0;
  double cur = 2.0 * y;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * y * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return {cur, 2.0 * n * prev};
}

std::vector<double> hermite_table(int n, double y) {
  std::vector<double> h(std::size_t(n) + 1);
  h[0] = 1.0;
  if (n >= 1) h[1] = 2.0 * y;
  for (int k = 1; k < n; ++k) h[k + 1] = 2.0 * y * h[k] - 2.0 * k * h[k - 1];
  return h;
}

std::vector<double> hermite_functions(int n, double u) {
  std::vector<double> h(std::size_t(n) + 1);
  h[0] = std::pow(kPi, -0.25) * std::exp(-0.5 * u * u);
  if (n >= 1) h[1] = std::sqrt(2.0) * u * h[0];
  for (int k = 1; k < n; ++k) {
    h[k + 1] = std::sqrt(2.0 / (k + 1)) * u * h[k] - std::sqrt(double(k) / (k + 1)) * h[k - 1];
  }
  return h;
}

ScatterResult scatter_potential(const RealIntegrand& potential, double p, double x_left,
                                double x_right, std::span<const double> breakpoints,
                                double tolerance) {
  using namespace boost::numeric::odeint;
  using State = std::array<double, 4>;  // Re phi, Im phi, Re phi', Im phi'
  if (!(p > 0.0)) throw Error(ErrorCode::InvalidArgument, "scattering momentum must be positive");
  if (!(x_left < x_right)) throw Error(ErrorCode::RangeTooSmall, "empty scattering window");

  const double energy = p * p;
  auto rhs = [&](const State& s, State& ds, double x) {
    const double k = potential(x) - energy;
    ds[0] = s[2];
    ds[1] = s[3];
    ds[2] = k * s[0];
    ds[3] = k * s[1];
  };

  const Complex start = std::exp(Complex(0.0, p * x_right));
  const Complex start_d = Complex(0.0, p) * start;
  State state = {start.real(), start.imag(), start_d.real(), start_d.imag()};

  std::vector<double> stops;
  for (double b : breakpoints) {
    if (b > x_left && b < x_right) stops.push_back(b);
  }
  std::sort(stops.begin(), stops.end(), std::greater<>());
  stops.push_back(x_left);

  auto stepper = make_controlled(tolerance, tolerance, runge_kutta_dopri5<State>());
  double x = x_right;
  const double initial_step = -std::min(0.01, 0.1 / p);
  try {
    for (double target : stops) {
      integrate_adaptive(stepper, rhs, state, x, target, initial_step);
      x = target;
    }
  } catch (const std::exception& e) {
    throw Error(ErrorCode::StepperFailure, e.what());
  }
  for (double c : state) {
    if (!std::isfinite(c)) throw Error(ErrorCode::StepperFailure, "solution diverged");
  }

  const Complex phi(state[0], state[1]);
  const Complex dphi(state[2], state[3]);
  const Complex ik(0.0, p);
  const Complex incident = (ik * phi + dphi) / (2.0 * ik) * std::exp(-ik * x_left);
  const Complex reflected = (ik * phi - dphi) / (2.0 * ik) * std::exp(ik * x_left);
  return {p, reflected / incident, 1.0 / incident};
}

ScatterResult scatter(const SolitonParams& params, double p, double x_range) {
  double shift = 0.0;
  for (std::size_t k = 0; k < params.n(); ++k) {
    shift = std::max(shift, std::abs(params.b()[k]) / params.a()[k]);
  }
  if (x_range <= 0.0) x_range = 30.0 / params.a_min() + shift;
  const double tail = std::max(std::abs(wronskian::potential(params, x_range)),
                               std::abs(wronskian::potential(params, -x_range)));
  if (tail >= 1e-12) {
    throw Error(ErrorCode::RangeTooSmall,
                "potential is " + std::to_string(tail) + " at the window edge");
  }
  return scatter_potential([&params](double x) { return wronskian::potential(params, x); }, p,
                           -x_range, x_range);
}

Complex finite_diff(std::span<const Complex, 5> s, int order, double h) {
  if (order == 1) return (s[0] - 8.0 * s[1] + 8.0 * s[3] - s[4]) / (12.0 * h);
  if (order == 2) return (-s[0] + 16.0 * s[1] - 30.0 * s[2] + 16.0 * s[3] - s[4]) / (12.0 * h * h);
  throw Error(ErrorCode::InvalidArgument, "finite_diff supports orders 1 and 2");
}

double finite_diff(std::span<const double, 5> s, int order, double h) {
  const std::array<Complex, 5> c = {s[0], s[1], s[2], s[3], s[4]};
  return finite_diff(std::span<const Complex, 5>(c), order, h).real();
}

std::vector<double> binomial_row(int n) {
  std::vector<double> row(std::size_t(n) + 1, 1.0);
  for (int k = 1; k < n; ++k) row[k] = row[k - 1] * double(n - k + 1) / double(k);
  return row;
}

}  // namespace soliton::numerics
