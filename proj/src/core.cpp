#include "soliton/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace soliton {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonIncreasingA: return "NonIncreasingA";
    case ErrorCode::NonPositiveA: return "NonPositiveA";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NonPositiveWronskian: return "NonPositiveWronskian";
    case ErrorCode::OverflowRange: return "OverflowRange";
    case ErrorCode::NodefulIntermediate: return "NodefulIntermediate";
    case ErrorCode::InsufficientDerivatives: return "InsufficientDerivatives";
    case ErrorCode::ZeroMomentum: return "ZeroMomentum";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::SingularMomentSystem: return "SingularMomentSystem";
    case ErrorCode::RangeExceeded: return "RangeExceeded";
    case ErrorCode::StepperFailure: return "StepperFailure";
    case ErrorCode::RangeTooSmall: return "RangeTooSmall";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonIncreasingA:
    case ErrorCode::NonPositiveA:
    case ErrorCode::LengthMismatch:
    case ErrorCode::InvalidGrid:
    case ErrorCode::IndexOutOfRange:
    case ErrorCode::ZeroMomentum:
    case ErrorCode::InvalidArgument:
    case ErrorCode::RangeTooSmall:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

SolitonParams validate_params(std::size_t n, std::vector<double> a, std::vector<double> b) {
  if (n == 0) throw Error(ErrorCode::LengthMismatch, "n must be positive");
  if (a.size() != n || b.size() != n) {
    throw Error(ErrorCode::LengthMismatch,
                "expected " + std::to_string(n) + " values of a and b, got " +
                    std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(a[k]) || !std::isfinite(b[k])) {
      throw Error(ErrorCode::InvalidArgument, "parameters must be finite");
    }
    if (a[k] <= 0.0) throw Error(ErrorCode::NonPositiveA, "a must be positive");
  }
  const double scale = *std::max_element(a.begin(), a.end());
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k + 1] - a[k] <= kDegenerateSpacing * scale) {
      throw Error(ErrorCode::NonIncreasingA,
                  "a must be strictly increasing (a[" + std::to_string(k + 1) + "] <= a[" +
                      std::to_string(k) + "])");
    }
  }
  return SolitonParams(std::move(a), std::move(b));
}

SolitonParams validate_params(const SolitonParams& params) {
  return validate_params(params.n(), params.a(), params.b());
}

Grid::Grid(double x_min, double x_max, std::size_t count)
    : x_min_(x_min), x_max_(x_max), count_(count) {
  if (!(x_min < x_max) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
    throw Error(ErrorCode::InvalidGrid, "x_min must be below x_max");
  }
  if (count < 2) throw Error(ErrorCode::InvalidGrid, "grid needs at least two points");
}

double Grid::point(std::size_t i) const noexcept {
  // the last point is pinned exactly to x_max
  if (i + 1 == count_) return x_max_;
  return x_min_ + double(i) * spacing();
}

std::vector<double> Grid::points() const {
  std::vector<double> xs(count_);
  for (std::size_t i = 0; i < count_; ++i) xs[i] = point(i);
  return xs;
}

ComplexLabel::ComplexLabel(Complex value) : z(value) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw Error(ErrorCode::InvalidArgument, "label must be finite");
  }
}

AnalyticState::AnalyticState(Evaluator evaluator, int max_order, std::string label)
    : evaluator_(std::move(evaluator)), max_order_(max_order), label_(std::move(label)) {}

std::vector<Complex> AnalyticState::derivatives(double x, double t, int order) const {
  if (order < 0 || order > max_order_) {
    throw Error(ErrorCode::InsufficientDerivatives,
                "state '" + label_ + "' supplies derivatives up to order " +
                    std::to_string(max_order_) + ", requested " + std::to_string(order));
  }
  std::vector<Complex> out(std::size_t(order) + 1);
  evaluator_(x, t, out);
  return out;
}

Complex AnalyticState::value(double x, double t) const {
  Complex out[1];
  evaluator_(x, t, out);
  return out[0];
}

SampledState sample(const AnalyticState& state, const Grid& grid, double t) {
  SampledState s{grid, {}, t, state.label()};
  s.values.reserve(grid.count());
  for (std::size_t i = 0; i < grid.count(); ++i) s.values.push_back(state.value(grid.point(i), t));
  return s;
}

SampledState sample(const std::function<Complex(double)>& f, const Grid& grid, double t,
                    std::string label) {
  SampledState s{grid, {}, t, std::move(label)};
  s.values.reserve(grid.count());
  for (std::size_t i = 0; i < grid.count(); ++i) s.values.push_back(f(grid.point(i)));
  return s;
}

VerificationReport make_report(std::string name, std::string params_echo, double observed,
                               double expected, double tolerance) {
  VerificationReport r;
  r.check_name = std::move(name);
  r.params_echo = std::move(params_echo);
  r.observed = observed;
  r.expected = expected;
  r.tolerance = tolerance;
  r.passed = std::isfinite(observed) &&
             std::abs(observed - expected) <= tolerance * std::max(1.0, std::abs(expected));
  return r;
}

std::string describe(const SolitonParams& params) {
  std::string out = "a=[";
  char buf[32];
  for (std::size_t k = 0; k < params.n(); ++k) {
    std::snprintf(buf, sizeof buf, "%s%.17g", k ? "," : "", params.a()[k]);
    out += buf;
  }
  out += "] b=[";
  for (std::size_t k = 0; k < params.n(); ++k) {
    std::snprintf(buf, sizeof buf, "%s%.17g", k ? "," : "", params.b()[k]);
    out += buf;
  }
  return out + "]";
}

}  // namespace soliton
