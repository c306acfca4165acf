#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "reference_values.hpp"
#include "soliton/core.hpp"
#include "soliton/numerics.hpp"

using namespace soliton;
using namespace soliton::numerics;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("quadrature") {
  CHECK(rel(quad_real_line([](double x) { return std::exp(-x * x); }, 1e-13, 6.0).value,
            std::sqrt(kPi)) < 1e-12);
  CHECK(std::abs(quad_real_line_value(
                     [](double x) {
                       const double s = 1.0 / std::cosh(x);
                       return s * s;
                     },
                     1e-13, 10.0) -
                 2.0) < 2e-12);
  // int e^{-2p^2}/(p^2+1) dp = pi e^2 erfc(sqrt 2)
  const double closed = kPi * std::exp(2.0) * std::erfc(std::sqrt(2.0));
  const double quad = quad_real_line_value(
      [](double p) { return std::exp(-2.0 * p * p) / (p * p + 1.0); }, 1e-13, 6.0);
  CHECK(std::abs(quad - closed) / closed < 1e-12);
  CHECK(std::abs(quad - reference::kGaussLorentz) / closed < 1e-12);

  const auto r = quad_interval([](double x) { return Complex(std::cos(x), std::sin(x)); }, 0.0, kPi);
  CHECK(std::abs(r.value - Complex(0.0, 2.0)) < 1e-12);
  CHECK(r.evaluations > 0);
}

TEST_CASE("quadrature budget") {
  QuadOptions tight{1e-15, 200};
  CHECK_THROWS_AS(quad_interval([](double x) { return Complex(std::sqrt(std::abs(x - 0.3))); },
                                0.0, 1.0, tight),
                  Error);
}

TEST_CASE("complex erfc against mpmath") {
  const Complex args[] = {reference::kErfcArg0, reference::kErfcArg1, reference::kErfcArg2,
                          reference::kErfcArg3, reference::kErfcArg4, reference::kErfcArg5,
                          reference::kErfcArg6, reference::kErfcArg7};
  const Complex values[] = {reference::kErfc0, reference::kErfc1, reference::kErfc2,
                            reference::kErfc3, reference::kErfc4, reference::kErfc5,
                            reference::kErfc6, reference::kErfc7};
  for (int i = 0; i < 8; ++i) {
    CAPTURE(i);
    CHECK(rel(complex_erfc(args[i]), values[i]) < 1e-13);
  }
  CHECK(complex_erfc(0.0) == Complex(1.0));
  for (double x : {-3.0, -0.7, 0.0, 0.4, 1.9, 5.0}) {
    CHECK(rel(complex_erfc(x), std::erfc(x)) < 1e-13);
  }
  CHECK_THROWS_AS(complex_erfc(Complex(0.0, 31.0)), Error);
}

TEST_CASE("erfc reflection and erfcx") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  for (int i = 0; i < 10; ++i) {
    const Complex w(d(rng), d(rng));
    CHECK(rel(complex_erfc(-w), 2.0 - complex_erfc(w)) < 1e-12);
  }
  const Complex w(1.3, -0.8);
  CHECK(rel(complex_erfcx(w), std::exp(w * w) * complex_erfc(w)) < 1e-13);
  // deep in the tail erfcx ~ 1/(sqrt(pi) w)
  const Complex far(200.0, 50.0);
  CHECK(rel(complex_erfcx(far), 1.0 / (std::sqrt(kPi) * far) * (1.0 - 0.5 / (far * far))) < 1e-8);
}

TEST_CASE("Faddeeva against mpmath") {
  const Complex args[] = {reference::kFaddeevaArg0, reference::kFaddeevaArg1,
                          reference::kFaddeevaArg2, reference::kFaddeevaArg3};
  const Complex values[] = {reference::kFaddeeva0, reference::kFaddeeva1, reference::kFaddeeva2,
                            reference::kFaddeeva3};
  for (int i = 0; i < 4; ++i) CHECK(rel(faddeeva(args[i]), values[i]) < 1e-13);
}

TEST_CASE("Hermite") {
  CHECK(hermite_eval(4, 0.0).first == 12.0);
  const auto [h3, dh3] = hermite_eval(3, 0.5);
  CHECK(h3 == doctest::Approx(8 * 0.125 - 12 * 0.5));
  CHECK(dh3 == doctest::Approx(6 * hermite_table(2, 0.5)[2]));
  // normalized functions integrate to one
  for (int n : {0, 3, 7}) {
    const double norm = quad_real_line_value(
        [n](double u) {
          const double h = hermite_functions(n, u)[n];
          return h * h;
        },
        1e-13, 10.0);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
  }
  // no overflow far out for large n
  CHECK(std::isfinite(hermite_functions(60, 12.0)[60]));
}

TEST_CASE("finite differences") {
  auto stencil = [](auto f, double x, double h) {
    return std::array<double, 5>{f(x - 2 * h), f(x - h), f(x), f(x + h), f(x + 2 * h)};
  };
  auto e = [](double x) { return std::exp(x); };
  CHECK(std::abs(finite_diff(std::span<const double, 5>(stencil(e, 0.0, 1e-3)), 1, 1e-3) - 1.0) < 1e-11);
  auto s = [](double x) { return std::sin(x); };
  CHECK(std::abs(finite_diff(std::span<const double, 5>(stencil(s, 0.0, 1e-3)), 2, 1e-3)) < 1e-10);
  // fourth-order convergence
  auto err = [&](double h) {
    return std::abs(finite_diff(std::span<const double, 5>(stencil(e, 0.3, h)), 2, h) - std::exp(0.3));
  };
  const double ratio = err(0.1) / err(0.05);
  CHECK(ratio == doctest::Approx(16.0).epsilon(0.05));
  CHECK(binomial_row(4) == std::vector<double>{1, 4, 6, 4, 1});
}

TEST_CASE("scattering oracle") {
  const auto free = scatter_potential([](double) { return 0.0; }, 1.0, -5.0, 5.0);
  CHECK(std::abs(free.reflection) < 1e-12);
  CHECK(std::abs(free.transmission - 1.0) < 1e-10);

  const auto params = validate_params(1, {1.0}, {0.0});
  const auto r = scatter(params, 1.0);
  CHECK(std::abs(r.reflection) < 1e-6);
  // T = (i - 1)/(i + 1) = i
  CHECK(std::abs(r.transmission - Complex(0.0, 1.0)) < 1e-8);

  // square well V = -1 on [-1, 1]: textbook reflection amplitude
  const double p = 1.0, q = std::sqrt(2.0), L = 2.0;
  const double breaks[] = {-1.0, 1.0};
  const auto well =
      scatter_potential([](double x) { return std::abs(x) < 1.0 ? -1.0 : 0.0; }, p, -3.0, 3.0, breaks);
  const double s = std::sin(q * L);
  const double expected_r2 = 1.0 / (1.0 + 4.0 * p * p * q * q / ((q * q - p * p) * (q * q - p * p) * s * s));
  CHECK(std::abs(well.reflection) > 1e-3);
  CHECK(std::norm(well.reflection) == doctest::Approx(expected_r2).epsilon(1e-8));
  CHECK(std::norm(well.reflection) + std::norm(well.transmission) == doctest::Approx(1.0).epsilon(1e-9));

  CHECK_THROWS_AS(scatter(params, 1.0, 3.0), Error);  // window too small
}
