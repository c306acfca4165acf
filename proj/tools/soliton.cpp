// soliton: command-line front end for the multisoliton toolkit.
//
//   soliton potential --a 1,2 --xmin -10 --xmax 10 --count 1001
//   soliton spectrum  --a 1,2 [--levels]
//   soliton states    --a 1 --family phi --z 0.3,0.7 --t 0.5
//   soliton measures  --a 0.5
//   soliton scatter   --a 1,2 --p 0.5,1,2
//   soliton verify    --suite all --seed 42
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input,
// 3 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "soliton/core.hpp"
#include "soliton/darboux.hpp"
#include "soliton/measures.hpp"
#include "soliton/numerics.hpp"
#include "soliton/states.hpp"
#include "soliton/verify.hpp"
#include "soliton/wronskian.hpp"

namespace {

using soliton::Complex;
using soliton::Error;
using soliton::ErrorCode;
using Json = nlohmann::json;

enum class Format { Csv, Json };

struct Options {
  std::string a = "1";
  std::string b;
  std::string z = "0,0";
  std::string momenta = "0.5,1,2";
  std::string suite = "all";
  std::string family = "psi";
  double t = 0.0;
  double x_min = -10.0;
  double x_max = 10.0;
  std::size_t count = 1001;
  std::optional<double> tol;
  std::uint64_t seed = 0;
  Format format = Format::Csv;
  bool format_given = false;
  bool levels = false;
  bool timing = false;
};

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end == item.c_str() || *end != '\0') {
      throw Error(ErrorCode::InvalidArgument,
                  std::string("cannot parse '") + item + "' in " + flag);
    }
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, std::string(flag) + " is empty");
  return out;
}

soliton::SolitonParams params_of(const Options& o) {
  auto a = parse_list(o.a, "--a");
  std::vector<double> b = o.b.empty() ? std::vector<double>(a.size(), 0.0) : parse_list(o.b, "--b");
  const std::size_t n = a.size();
  return soliton::validate_params(n, std::move(a), std::move(b));
}

soliton::ComplexLabel label_of(const Options& o) {
  const auto parts = parse_list(o.z, "--z");
  if (parts.size() != 2) throw Error(ErrorCode::InvalidArgument, "--z expects re,im");
  return soliton::ComplexLabel(parts[0], parts[1]);
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void csv_row(std::ostream& out, const std::vector<double>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << num(row[i]);
  out << '\n';
}

Json params_json(const soliton::SolitonParams& p) { return Json{{"a", p.a()}, {"b", p.b()}}; }

Json grid_json(const soliton::Grid& g) {
  return Json{{"count", g.count()}, {"x_max", g.x_max()}, {"x_min", g.x_min()}};
}

void emit_json(Json doc) {
  doc["schema"] = 1;
  std::cout << doc.dump() << '\n';
}

int cmd_potential(const Options& o) {
  const auto params = params_of(o);
  const soliton::Grid grid(o.x_min, o.x_max, o.count);
  const auto expansion = soliton::wronskian::build_cosh_expansion(params);
  std::vector<std::vector<double>> rows;
  for (double x : grid.points()) rows.push_back({x, soliton::wronskian::potential(expansion, x)});
  if (o.format == Format::Json) {
    emit_json({{"params", params_json(params)}, {"grid", grid_json(grid)}, {"values", rows}});
  } else {
    std::cout << "x,V1\n";
    for (const auto& r : rows) csv_row(std::cout, r);
  }
  return 0;
}

int cmd_spectrum(const Options& o) {
  const auto params = params_of(o);
  const soliton::Grid grid(o.x_min, o.x_max, o.count);
  const std::size_t n = params.n();
  std::vector<std::vector<double>> levels;
  for (std::size_t k = 1; k <= n; ++k) {
    const double a = params.a()[k - 1];
    levels.push_back({double(k), a, -a * a});
  }
  std::vector<std::vector<double>> rows;
  if (!(o.levels && o.format == Format::Csv)) {
    for (double x : grid.points()) {
      std::vector<double> row{x};
      for (std::size_t k = 1; k <= n; ++k) row.push_back(soliton::states::bound_state(params, k, x));
      rows.push_back(std::move(row));
    }
  }
  if (o.format == Format::Json) {
    Json list = Json::array();
    for (const auto& l : levels) list.push_back({{"E", l[2]}, {"a", l[1]}, {"k", int(l[0])}});
    emit_json({{"params", params_json(params)},
               {"grid", grid_json(grid)},
               {"levels", list},
               {"values", rows}});
  } else if (o.levels) {
    std::cout << "k,a,E\n";
    for (const auto& l : levels) std::cout << int(l[0]) << ',' << num(l[1]) << ',' << num(l[2]) << '\n';
  } else {
    std::cout << "x";
    for (std::size_t k = 1; k <= n; ++k) std::cout << ",phi_" << k;
    std::cout << '\n';
    for (const auto& r : rows) csv_row(std::cout, r);
  }
  return 0;
}

int cmd_states(const Options& o) {
  const auto params = params_of(o);
  const soliton::Grid grid(o.x_min, o.x_max, o.count);
  const auto z = label_of(o);
  namespace st = soliton::states;
  std::function<Complex(double)> eval;
  std::optional<soliton::darboux::DarbouxChain> chain;
  if (o.family != "psi") chain = soliton::darboux::build_chain(params);
  const double t = o.t;
  if (o.family == "psi") {
    eval = [&](double x) { return st::free_cs(z, x, t); };
  } else if (o.family == "phi") {
    eval = [&](double x) { return st::cs_phi(*chain, z, x, t); };
  } else if (o.family == "eta") {
    if (params.n() == 1 && params.b()[0] == 0.0) {
      eval = [&](double x) { return st::cs_eta_one_soliton(params.a()[0], z, x, t); };
    } else {
      eval = [&](double x) {
        return st::synth_state(*chain, st::SynthesisWeight::InverseNorm, z, x, t);
      };
    }
  } else if (o.family == "zeta") {
    eval = [&](double x) { return st::synth_state(*chain, st::SynthesisWeight::Unit, z, x, t); };
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown family '" + o.family + "'");
  }
  std::vector<std::vector<double>> rows;
  for (double x : grid.points()) {
    const Complex v = eval(x);
    rows.push_back({x, v.real(), v.imag(), std::norm(v)});
  }
  if (o.format == Format::Json) {
    emit_json({{"params", params_json(params)},
               {"grid", grid_json(grid)},
               {"family", o.family},
               {"t", t},
               {"z", {z.re(), z.im()}},
               {"values", rows}});
  } else {
    std::cout << "x,re,im,density\n";
    for (const auto& r : rows) csv_row(std::cout, r);
  }
  return 0;
}

int cmd_measures(const Options& o) {
  const auto params = params_of(o);
  const soliton::Grid grid(o.x_min, o.x_max, o.count);
  const auto eta = soliton::measures::eta_measure(params);
  const auto phi = soliton::measures::phi_measure(params);
  std::vector<std::vector<double>> rows;
  for (double x : grid.points()) rows.push_back({x, eta.evaluate(x), phi.damped(x)});
  if (o.format == Format::Json) {
    emit_json({{"params", params_json(params)},
               {"grid", grid_json(grid)},
               {"eta_coefficients", eta.coefficients},
               {"phi_residues", phi.fractions.residues},
               {"values", rows}});
  } else {
    // the grid doubles as x for omega_eta and t for the damped rho_phi
    std::cout << "x,omega_eta,rho_phi_damped\n";
    for (const auto& r : rows) csv_row(std::cout, r);
  }
  return 0;
}

int cmd_scatter(const Options& o) {
  const auto params = params_of(o);
  const auto momenta = parse_list(o.momenta, "--p");
  std::vector<std::vector<double>> rows;
  for (double p : momenta) {
    if (!(p > 0.0)) throw Error(ErrorCode::ZeroMomentum, "momenta must be positive");
    const auto r = soliton::numerics::scatter(params, p);
    const Complex predicted = soliton::darboux::transmission_coefficient(params, p);
    rows.push_back({p, std::abs(r.reflection), std::abs(r.transmission), std::arg(r.transmission),
                    std::arg(predicted)});
  }
  if (o.format == Format::Json) {
    Json list = Json::array();
    for (const auto& r : rows) {
      list.push_back({{"abs_R", r[1]}, {"abs_T", r[2]}, {"arg_T", r[3]},
                      {"arg_T_predicted", r[4]}, {"p", r[0]}});
    }
    emit_json({{"params", params_json(params)}, {"values", list}});
  } else {
    std::cout << "p,abs_R,abs_T,arg_T,arg_T_predicted\n";
    for (const auto& r : rows) csv_row(std::cout, r);
  }
  return 0;
}

int cmd_verify(const Options& o) {
  const auto params = params_of(o);
  const auto suite = soliton::verify::parse_suite(o.suite);
  const auto reports = soliton::verify::run_suite(suite, params, {o.seed, o.tol, o.timing});
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.passed;
  if (o.format_given && o.format == Format::Csv) {
    std::cout << "check_name,params_echo,observed,expected,tolerance,passed,runtime_ms\n";
    for (const auto& r : reports) {
      std::cout << r.check_name << ",\"" << r.params_echo << "\"," << num(r.observed) << ','
                << num(r.expected) << ',' << num(r.tolerance) << ',' << (r.passed ? "true" : "false")
                << ',' << r.runtime_ms << '\n';
    }
  } else {
    Json list = Json::array();
    for (const auto& r : reports) {
      list.push_back({{"check_name", r.check_name},
                      {"expected", r.expected},
                      {"observed", r.observed},
                      {"params_echo", r.params_echo},
                      {"passed", r.passed},
                      {"runtime_ms", r.runtime_ms},
                      {"tolerance", r.tolerance}});
    }
    emit_json({{"params", params_json(params)},
               {"reports", list},
               {"seed", o.seed},
               {"suite", std::string(soliton::verify::suite_name(suite))}});
  }
  return ok ? 0 : 1;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--a", o.a, "comma-separated a_1 < ... < a_N");
  cmd->add_option("--b", o.b, "comma-separated shifts (default 0)");
  cmd->add_option("--xmin", o.x_min, "grid start");
  cmd->add_option("--xmax", o.x_max, "grid end");
  cmd->add_option("--count", o.count, "grid points");
  cmd->add_option("--tol", o.tol, "tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "seed for randomized suites");
  cmd->add_option("--format", o.format, "csv or json")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"csv", Format::Csv}, {"json", Format::Json}}))
      ->each([&o](const std::string&) { o.format_given = true; });
  cmd->add_flag("--timing", o.timing, "record runtime_ms");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"N-soliton potentials, Darboux chains and coherent states"};
  app.require_subcommand(1);
  Options o;
  auto* potential = app.add_subcommand("potential", "sample V1 on a grid");
  auto* spectrum = app.add_subcommand("spectrum", "bound-state levels and wavefunctions");
  auto* states = app.add_subcommand("states", "sample a coherent state");
  auto* measures = app.add_subcommand("measures", "resolution-of-identity measures");
  auto* scatter = app.add_subcommand("scatter", "numerical scattering off V1");
  auto* verify = app.add_subcommand("verify", "run property suites");
  for (auto* cmd : {potential, spectrum, states, measures, scatter, verify}) add_common(cmd, o);
  spectrum->add_flag("--levels", o.levels, "emit the k,a,E table instead of wavefunctions");
  states->add_option("--family", o.family, "psi, phi, eta or zeta");
  states->add_option("--z", o.z, "label as re,im");
  states->add_option("--t", o.t, "time");
  scatter->add_option("--p", o.momenta, "comma-separated momenta");
  verify->add_option("--suite", o.suite, "all, wronskian, darboux, states, measures, scattering");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: InvalidArgument: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*potential) return cmd_potential(o);
    if (*spectrum) return cmd_spectrum(o);
    if (*states) return cmd_states(o);
    if (*measures) return cmd_measures(o);
    if (*scatter) return cmd_scatter(o);
    return cmd_verify(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return soliton::is_input_error(e.code()) ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
