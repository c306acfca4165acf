#pragma once

// Shared domain types for the multisoliton toolkit: transformation
// parameters, sampling grids, analytic states and error reporting.

#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace soliton {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

enum class ErrorCode {
  NonIncreasingA,
  NonPositiveA,
  LengthMismatch,
  InvalidGrid,
  IndexOutOfRange,
  NonPositiveWronskian,
  OverflowRange,
  NodefulIntermediate,
  InsufficientDerivatives,
  ZeroMomentum,
  QuadratureFailure,
  SingularMomentSystem,
  RangeExceeded,
  StepperFailure,
  RangeTooSmall,
  InvalidArgument,
};

std::string_view error_name(ErrorCode code);

/// True for codes that signal a bad input rather than a numerical failure.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Transformation data of one N-soliton potential. Only obtainable through
/// validate_params, so every instance satisfies 0 < a_1 < ... < a_N.
class SolitonParams {
 public:
  std::size_t n() const noexcept { return a_.size(); }
  const std::vector<double>& a() const noexcept { return a_; }
  const std::vector<double>& b() const noexcept { return b_; }
  double a_max() const noexcept { return a_.back(); }
  double a_min() const noexcept { return a_.front(); }

  friend bool operator==(const SolitonParams&, const SolitonParams&) = default;

 private:
  SolitonParams(std::vector<double> a, std::vector<double> b)
      : a_(std::move(a)), b_(std::move(b)) {}
  friend SolitonParams validate_params(std::size_t n, std::vector<double> a,
                                       std::vector<double> b);

  std::vector<double> a_;
  std::vector<double> b_;
};

/// Relative spacing below which neighbouring a_k are treated as equal.
inline constexpr double kDegenerateSpacing = 1e-9;

SolitonParams validate_params(std::size_t n, std::vector<double> a,
                              std::vector<double> b);
SolitonParams validate_params(const SolitonParams& params);

class Grid {
 public:
  Grid(double x_min, double x_max, std::size_t count);

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  std::size_t count() const noexcept { return count_; }
  double spacing() const noexcept { return (x_max_ - x_min_) / double(count_ - 1); }
  double point(std::size_t i) const noexcept;
  std::vector<double> points() const;

 private:
  double x_min_;
  double x_max_;
  std::size_t count_;
};

struct ComplexLabel {
  Complex z;

  explicit ComplexLabel(Complex value);
  ComplexLabel(double re, double im) : ComplexLabel(Complex(re, im)) {}
  double re() const noexcept { return z.real(); }
  double im() const noexcept { return z.imag(); }
};

/// A state known in closed form: evaluates the value and x-derivatives
/// 0..order at (x, t) in one call.
class AnalyticState {
 public:
  using Evaluator = std::function<void(double x, double t, std::span<Complex> out)>;

  AnalyticState(Evaluator evaluator, int max_order, std::string label = {});

  int max_order() const noexcept { return max_order_; }
  const std::string& label() const noexcept { return label_; }

  /// Values d^m/dx^m psi(x, t) for m = 0..order.
  std::vector<Complex> derivatives(double x, double t, int order) const;
  Complex value(double x, double t) const;

 private:
  Evaluator evaluator_;
  int max_order_;
  std::string label_;
};

/// Derivative order available from states whose derivative stacks come
/// from recurrences (plane waves, Hermite functions, Gaussians).
inline constexpr int kUnboundedOrder = 48;

struct SampledState {
  Grid grid;
  std::vector<Complex> values;
  double time = 0.0;
  std::string label;
};

SampledState sample(const AnalyticState& state, const Grid& grid, double t);
SampledState sample(const std::function<Complex(double)>& f, const Grid& grid,
                    double t, std::string label);

/// Outcome of one identity check.
struct VerificationReport {
  std::string check_name;
  std::string params_echo;
  double observed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  long runtime_ms = 0;
};

/// Builds a report with passed = |observed - expected| <= tol * max(1, |expected|).
VerificationReport make_report(std::string name, std::string params_echo,
                               double observed, double expected, double tolerance);

std::string describe(const SolitonParams& params);

}  // namespace soliton
