#include "soliton/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <random>
#include <thread>

#include "soliton/darboux.hpp"
#include "soliton/measures.hpp"
#include "soliton/numerics.hpp"
#include "soliton/states.hpp"
#include "soliton/wronskian.hpp"

namespace soliton::verify {

namespace {

using Task = std::function<VerificationReport()>;

double rel_error(Complex observed, Complex expected) {
  const double scale = std::abs(expected);
  return std::abs(observed - expected) / (scale > 0.0 ? scale : 1.0);
}

double shift_scale(const SolitonParams& params) {
  double shift = 0.0;
  for (std::size_t k = 0; k < params.n(); ++k) {
    shift = std::max(shift, std::abs(params.b()[k]) / params.a()[k]);
  }
  return shift;
}

struct Context {
  const SolitonParams& params;
  const SuiteOptions& options;
  std::mt19937_64& rng;
  std::vector<Task>& tasks;

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  double tol(double fallback) const { return options.tolerance.value_or(fallback); }
  void add(std::string name, double tolerance, std::function<double()> observed,
           double expected = 0.0) {
    tasks.push_back([p = &params, name = std::move(name), tolerance, observed = std::move(observed),
                     expected] {
      return make_report(name, describe(*p), observed(), expected, tolerance);
    });
  }
};

void wronskian_suite(Context& c) {
  const SolitonParams params = c.params;
  const double reach = 5.0 / params.a_max() + shift_scale(params);
  std::vector<double> xs(20);
  for (auto& x : xs) x = c.uniform(-reach, reach);

  c.add("expansion_vs_determinant", c.tol(1e-10), [params, xs] {
    const auto expansion = wronskian::build_cosh_expansion(params);
    double worst = 0.0;
    for (double x : xs) {
      const auto w = wronskian::eval_wronskian(expansion, x);
      const Complex det = wronskian::wronskian_determinant_oracle(params, x);
      worst = std::max(worst, rel_error(w.sign * std::exp(w.log_value), det));
    }
    return worst;
  });

  c.add("potential_vs_log_derivative", c.tol(1e-10), [params, xs] {
    const auto expansion = wronskian::build_cosh_expansion(params);
    double worst = 0.0;
    for (double x : xs) {
      const double direct = -2.0 * wronskian::log_derivatives(expansion, x, 2)[1];
      worst = std::max(worst, rel_error(wronskian::potential(expansion, x), direct));
    }
    return worst;
  });

  double area = 0.0;
  for (double a : params.a()) area -= 4.0 * a;
  c.add(
      "potential_integral", c.tol(1e-9),
      [params] {
        const auto expansion = wronskian::build_cosh_expansion(params);
        return numerics::quad_real_line_value(
            [&](double x) { return wronskian::potential(expansion, x); }, 1e-13,
            10.0 / params.a_min() + shift_scale(params));
      },
      area);
}

void darboux_suite(Context& c) {
  const SolitonParams params = c.params;
  std::vector<std::pair<double, double>> draws(20);
  for (auto& [p, x] : draws) {
    p = c.uniform(-3.0, 3.0);
    x = c.uniform(-5.0, 5.0);
  }

  c.add("factorization", c.tol(1e-8), [params, draws] {
    auto chain = std::make_shared<const darboux::DarbouxChain>(darboux::build_chain(params));
    double worst = 0.0;
    for (auto [p, x] : draws) {
      const auto forward = darboux::transformed(chain, states::free_plane_wave_state(p));
      const Complex lhs = darboux::apply_L_adjoint(*chain, forward, x, 0.0);
      const double np = darboux::continuum_norm(params, p);
      worst = std::max(worst, rel_error(lhs, np * np * states::free_plane_wave(p, x, 0.0)));
    }
    return worst;
  });

  c.add("intertwining", c.tol(1e-8), [params, draws] {
    auto chain = std::make_shared<const darboux::DarbouxChain>(darboux::build_chain(params));
    double worst = 0.0;
    for (auto [p, x] : draws) {
      const auto image = darboux::transformed(chain, states::free_plane_wave_state(p));
      const auto d = image.derivatives(x, 0.0, 2);
      const double v = wronskian::potential(params, x);
      // measured against the size of the two terms that cancel
      const double scale = std::abs(d[2]) + std::abs(v * d[0]);
      worst = std::max(worst, std::abs(-d[2] + v * d[0] - p * p * d[0]) / scale);
    }
    return worst;
  });

  std::vector<double> momenta(5);
  for (auto& p : momenta) p = c.uniform(0.1, 4.0);
  c.add("transmission_symbol", c.tol(1e-12), [params, momenta] {
    // asymptotically L e^{ipx} -> prod(ip -+ a_k) e^{ipx} as x -> +-inf,
    // whose ratio is T(p)
    const auto chain = darboux::build_chain(params);
    const double far = 40.0 / params.a_min() + shift_scale(params);
    double worst = 0.0;
    for (double p : momenta) {
      auto eval = [&](double x) {
        const auto q = chain.plane_wave_symbol(x);
        Complex acc = 0.0;
        for (std::size_t m = q.size(); m-- > 0;) acc = acc * Complex(0.0, p) + q[m];
        return acc;
      };
      worst = std::max(worst,
                       rel_error(eval(far) / eval(-far), darboux::transmission_coefficient(params, p)));
    }
    return worst;
  });
}

double bound_window(const SolitonParams& params) { return 20.0 / params.a_min() + shift_scale(params); }

void states_suite(Context& c) {
  const SolitonParams params = c.params;
  const std::size_t n = params.n();

  c.add("bound_orthonormality", c.tol(1e-8), [params, n] {
    double worst = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      for (std::size_t j = k; j <= n; ++j) {
        const double overlap = numerics::quad_real_line_value(
            [&](double x) {
              return states::bound_state(params, k, x) * states::bound_state(params, j, x);
            },
            1e-12, bound_window(params));
        worst = std::max(worst, std::abs(overlap - (k == j ? 1.0 : 0.0)));
      }
    }
    return worst;
  });

  std::vector<double> xs(10);
  const double reach = 4.0 / params.a_max() + shift_scale(params);
  for (auto& x : xs) x = c.uniform(-reach, reach);
  c.add("bound_eigenvalue", c.tol(1e-6), [params, n, xs] {
    double worst = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      const auto state = states::bound_state_state(params, k);
      const double e = -params.a()[k - 1] * params.a()[k - 1];
      for (double x : xs) {
        const auto d = state.derivatives(x, 0.0, 2);
        const Complex h1 = -d[2] + wronskian::potential(params, x) * d[0];
        worst = std::max(worst, rel_error(h1, e * d[0]));
      }
    }
    return worst;
  });

  std::vector<ComplexLabel> labels;
  for (int i = 0; i < 3; ++i) labels.emplace_back(c.uniform(-1.5, 1.5), c.uniform(-1.5, 1.5));

  c.add("phi_norm", c.tol(1e-8), [params, labels] {
    // <phi_z|phi_z> = E[N_p^2] under the normal law of mean -Re z and
    // variance 1/4, i.e. sum_m c_m Q_m(-Re z)
    const auto poly = measures::norm_polynomial(params);
    const auto q = measures::moment_polynomials(int(poly.size()) - 1);
    double worst = 0.0;
    for (const auto& z : labels) {
      double expected = 0.0;
      for (std::size_t m = 0; m < poly.size(); ++m) {
        double qm = 0.0;
        for (std::size_t i = q[m].size(); i-- > 0;) qm = qm * (-z.re()) + q[m][i];
        expected += poly[m] * qm;
      }
      worst = std::max(worst, rel_error(states::norm_phi(params, z), expected));
    }
    return worst;
  });

  c.add("eta_norm", c.tol(1e-8), [params, labels] {
    double worst = 0.0;
    for (const auto& z : labels) {
      const double quad = numerics::quad_real_line_value(
          [&](double p) {
            const double np = darboux::continuum_norm(params, p);
            return std::norm(states::momentum_overlap(p, z)) / (np * np);
          },
          1e-14, 8.0, -z.re());
      worst = std::max(worst, rel_error(states::norm_eta(params, z), quad));
    }
    return worst;
  });

  if (n == 1) {
    std::vector<std::pair<double, double>> points(10);
    for (auto& [x, t] : points) {
      x = c.uniform(-4.0, 4.0);
      t = c.uniform(-2.0, 2.0);
    }
    c.add("phi_closed_form", c.tol(1e-10), [params, labels, points] {
      const auto chain = darboux::build_chain(params);
      double worst = 0.0;
      for (const auto& z : labels) {
        for (auto [x, t] : points) {
          const Complex closed =
              states::cs_phi_one_soliton(params.a()[0], params.b()[0], z, x, t);
          worst = std::max(worst, rel_error(states::cs_phi(chain, z, x, t), closed));
        }
      }
      return worst;
    });
    if (params.b()[0] == 0.0) {
      c.add("eta_closed_form", c.tol(1e-7), [params, labels, points] {
        auto chain = std::make_shared<const darboux::DarbouxChain>(darboux::build_chain(params));
        double worst = 0.0;
        for (const auto& z : labels) {
          const auto eta = states::cs_eta_one_soliton_state(params.a()[0], z);
          for (auto [x, t] : points) {
            worst = std::max(worst, rel_error(darboux::apply_L_adjoint(*chain, eta, x, t),
                                              states::free_cs(z, x, t)));
          }
        }
        return worst;
      });
    }
  }
}

void measures_suite(Context& c) {
  const SolitonParams params = c.params;

  c.add("eta_moment_equation", c.tol(1e-9), [params] {
    const auto measure = measures::eta_measure(params);
    double worst = 0.0;
    for (int i = 0; i <= 10; ++i) {
      worst = std::max(worst, measures::eta_moment_residual(measure, params, -2.0 + 0.4 * i));
    }
    return worst;
  });

  c.add("phi_fourier_identity", c.tol(1e-8), [params] {
    const auto measure = measures::phi_measure(params);
    double worst = 0.0;
    for (double p : {0.0, 0.5, 1.0, 2.0, 3.0}) {
      worst = std::max(worst, measures::phi_fourier_residual(measure, params, p));
    }
    return worst;
  });

  std::vector<double> momenta(3);
  for (auto& p : momenta) p = c.uniform(-1.5, 1.5);
  c.add("moment_recurrence", c.tol(1e-10), [momenta] {
    const auto q = measures::moment_polynomials(4);
    double worst = 0.0;
    for (double p : momenta) {
      const double norm = std::sqrt(kPi / 2.0) * std::exp(2.0 * p * p);
      for (int m = 0; m <= 4; ++m) {
        const double direct = numerics::quad_real_line_value(
                                  [&](double x) {
                                    return std::pow(x, m) * std::exp(4.0 * p * x - 2.0 * x * x);
                                  },
                                  1e-14, 6.0, p) /
                              norm;
        double poly = 0.0;
        for (std::size_t i = q[m].size(); i-- > 0;) poly = poly * p + q[m][i];
        worst = std::max(worst, std::abs(direct - poly));
      }
    }
    return worst;
  });

  if (params.n() == 1) {
    c.add("eta_measure_closed_form", c.tol(1e-12), [params] {
      const double a = params.a()[0];
      const auto c = measures::eta_measure(params).coefficients;
      const double expected[3] = {(a * a - 0.25) / kPi, 0.0, 1.0 / kPi};
      double worst = 0.0;
      for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(c[i] - expected[i]));
      return worst;
    });
  }
}

void scattering_suite(Context& c) {
  const SolitonParams params = c.params;
  const std::vector<double> momenta = {0.5, 1.0, 2.0};
  // one integration per momentum shared by the three checks
  auto results = std::make_shared<std::vector<numerics::ScatterResult>>();
  auto once = std::make_shared<std::once_flag>();
  auto solve = [params, momenta, results, once] {
    std::call_once(*once, [&] {
      for (double p : momenta) results->push_back(numerics::scatter(params, p));
    });
    return results;
  };

  c.add("reflectionless", c.tol(1e-6), [solve] {
    double worst = 0.0;
    for (const auto& r : *solve()) worst = std::max(worst, std::abs(r.reflection));
    return worst;
  });
  c.add("transmission_phase", c.tol(1e-5), [solve, params] {
    double worst = 0.0;
    for (const auto& r : *solve()) {
      const Complex ratio = r.transmission / darboux::transmission_coefficient(params, r.p);
      worst = std::max(worst, std::abs(std::arg(ratio)));
    }
    return worst;
  });
  c.add("unitarity", c.tol(1e-8), [solve] {
    double worst = 0.0;
    for (const auto& r : *solve()) {
      worst = std::max(worst, std::abs(std::norm(r.reflection) + std::norm(r.transmission) - 1.0));
    }
    return worst;
  });
}

}  // namespace

Suite parse_suite(std::string_view name) {
  for (Suite s : {Suite::All, Suite::Wronskian, Suite::Darboux, Suite::States, Suite::Measures,
                  Suite::Scattering}) {
    if (suite_name(s) == name) return s;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown suite '" + std::string(name) + "'");
}

std::string_view suite_name(Suite suite) {
  switch (suite) {
    case Suite::All: return "all";
    case Suite::Wronskian: return "wronskian";
    case Suite::Darboux: return "darboux";
    case Suite::States: return "states";
    case Suite::Measures: return "measures";
    case Suite::Scattering: return "scattering";
  }
  return "all";
}

unsigned worker_count() {
  if (const char* env = std::getenv("SOLITON_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return unsigned(value);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<VerificationReport> run_suite(Suite suite, const SolitonParams& params,
                                          const SuiteOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::vector<Task> tasks;
  Context context{params, options, rng, tasks};
  const bool all = suite == Suite::All;
  if (all || suite == Suite::Wronskian) wronskian_suite(context);
  if (all || suite == Suite::Darboux) darboux_suite(context);
  if (all || suite == Suite::States) states_suite(context);
  if (all || suite == Suite::Measures) measures_suite(context);
  if (all || suite == Suite::Scattering) scattering_suite(context);

  std::vector<VerificationReport> reports(tasks.size());
  std::vector<std::exception_ptr> failures(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const auto start = std::chrono::steady_clock::now();
      try {
        reports[i] = tasks[i]();
      } catch (...) {
        failures[i] = std::current_exception();
      }
      if (options.timing) {
        reports[i].runtime_ms = long(std::chrono::duration_cast<std::chrono::milliseconds>(
                                         std::chrono::steady_clock::now() - start)
                                         .count());
      }
    }
  };
  const unsigned count = std::min<unsigned>(worker_count(), unsigned(tasks.size()));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < count; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return reports;
}

}  // namespace soliton::verify
