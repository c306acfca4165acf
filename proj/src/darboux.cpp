#include "soliton/darboux.hpp"

#include <cmath>

#include "soliton/numerics.hpp"

namespace soliton::darboux {

DarbouxChain build_chain(const SolitonParams& params) {
  const auto types = wronskian::transformation_types(params.n());
  std::vector<wronskian::CoshExpansion> prefixes;
  prefixes.reserve(params.n());
  const double reach = 30.0 / params.a_max();
  for (std::size_t j = 1; j <= params.n(); ++j) {
    const std::span<const double> a(params.a().data(), j);
    const std::span<const double> b(params.b().data(), j);
    const std::span<const wronskian::FunctionType> t(types.data(), j);
    auto expansion = wronskian::build_expansion(a, b, t);
    if (expansion.odd()) {
      throw Error(ErrorCode::NodefulIntermediate,
                  "W(u_1..u_" + std::to_string(j) + ") is a sinh sum");
    }
    for (std::size_t i = 0; i < kProbePoints; ++i) {
      const double x = -reach + 2.0 * reach * double(i) / double(kProbePoints - 1);
      if (wronskian::eval_signed(expansion, x).sign <= 0) {
        throw Error(ErrorCode::NodefulIntermediate,
                    "W(u_1..u_" + std::to_string(j) + ") changes sign near x = " +
                        std::to_string(x));
      }
    }
    prefixes.push_back(std::move(expansion));
  }
  return DarbouxChain(params, std::move(prefixes));
}

std::vector<std::vector<double>> DarbouxChain::sigma_derivatives(double x, int order) const {
  std::vector<std::vector<double>> sigma(prefixes_.size());
  std::vector<double> previous(std::size_t(order) + 1, 0.0);
  for (std::size_t j = 0; j < prefixes_.size(); ++j) {
    auto current = wronskian::log_derivatives(prefixes_[j], x, order + 1);
    sigma[j].resize(std::size_t(order) + 1);
    for (int i = 0; i <= order; ++i) sigma[j][i] = current[i] - previous[i];
    previous = std::move(current);
  }
  return sigma;
}

namespace {

// (s d - sigma) applied to a derivative stack; s = +1 for the forward
// factor, -1 for its adjoint. Result has one entry fewer.
std::vector<Complex> apply_stage(std::span<const Complex> stack, const std::vector<double>& sigma,
                                 double s) {
  const std::size_t out_size = stack.size() - 1;
  std::vector<Complex> out(out_size);
  for (std::size_t k = 0; k < out_size; ++k) {
    const auto binom = numerics::binomial_row(int(k));
    Complex acc = s * stack[k + 1];
    for (std::size_t i = 0; i <= k; ++i) acc -= binom[i] * sigma[i] * stack[k - i];
    out[k] = acc;
  }
  return out;
}

void require_depth(std::size_t stack_size, std::size_t stages) {
  if (stack_size < stages + 1) {
    throw Error(ErrorCode::InsufficientDerivatives,
                "need derivatives up to order " + std::to_string(stages));
  }
}

}  // namespace

std::vector<Complex> DarbouxChain::forward(double x, std::span<const Complex> stack) const {
  require_depth(stack.size(), prefixes_.size());
  const auto sigma = sigma_derivatives(x, int(stack.size()) - 2);
  std::vector<Complex> current(stack.begin(), stack.end());
  for (std::size_t j = 0; j < prefixes_.size(); ++j) current = apply_stage(current, sigma[j], 1.0);
  return current;
}

std::vector<Complex> DarbouxChain::adjoint(double x, std::span<const Complex> stack) const {
  require_depth(stack.size(), prefixes_.size());
  const auto sigma = sigma_derivatives(x, int(stack.size()) - 2);
  std::vector<Complex> current(stack.begin(), stack.end());
  for (std::size_t j = prefixes_.size(); j-- > 0;) current = apply_stage(current, sigma[j], -1.0);
  return current;
}

std::vector<double> DarbouxChain::plane_wave_symbol(double x) const {
  // the derivative stack of e^{ikx} is k^m e^{ikx}; carry each stack
  // entry as a polynomial in k through the stages
  const std::size_t n = prefixes_.size();
  const auto sigma = sigma_derivatives(x, int(n) - 1);
  std::vector<std::vector<double>> stack(n + 1);
  for (std::size_t m = 0; m <= n; ++m) {
    stack[m].assign(n + 1, 0.0);
    stack[m][m] = 1.0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<double>> next(stack.size() - 1, std::vector<double>(n + 1, 0.0));
    for (std::size_t k = 0; k < next.size(); ++k) {
      const auto binom = numerics::binomial_row(int(k));
      next[k] = stack[k + 1];
      for (std::size_t i = 0; i <= k; ++i) {
        const double f = binom[i] * sigma[j][i];
        for (std::size_t c = 0; c <= n; ++c) next[k][c] -= f * stack[k - i][c];
      }
    }
    stack = std::move(next);
  }
  return stack[0];
}

Complex apply_L(const DarbouxChain& chain, const AnalyticState& state, double x, double t) {
  const auto stack = state.derivatives(x, t, int(chain.stage_count()));
  return chain.forward(x, stack)[0];
}

Complex apply_L_adjoint(const DarbouxChain& chain, const AnalyticState& state, double x, double t) {
  const auto stack = state.derivatives(x, t, int(chain.stage_count()));
  return chain.adjoint(x, stack)[0];
}

AnalyticState transformed(std::shared_ptr<const DarbouxChain> chain, AnalyticState state) {
  const int n = int(chain->stage_count());
  const int max_order = state.max_order() - n;
  std::string label = "L " + state.label();
  return AnalyticState(
      [chain, state = std::move(state), n](double x, double t, std::span<Complex> out) {
        const int order = int(out.size()) - 1;
        const auto stack = state.derivatives(x, t, order + n);
        const auto result = chain->forward(x, stack);
        std::copy(result.begin(), result.end(), out.begin());
      },
      max_order, std::move(label));
}

AnalyticState adjoint_transformed(std::shared_ptr<const DarbouxChain> chain, AnalyticState state) {
  const int n = int(chain->stage_count());
  const int max_order = state.max_order() - n;
  std::string label = "L+ " + state.label();
  return AnalyticState(
      [chain, state = std::move(state), n](double x, double t, std::span<Complex> out) {
        const int order = int(out.size()) - 1;
        const auto stack = state.derivatives(x, t, order + n);
        const auto result = chain->adjoint(x, stack);
        std::copy(result.begin(), result.end(), out.begin());
      },
      max_order, std::move(label));
}

double continuum_norm(const SolitonParams& params, double p) {
  double product = 1.0;
  for (double a : params.a()) product *= p * p + a * a;
  return std::sqrt(product);
}

double transmission_phase(const SolitonParams& params, double p) {
  if (p == 0.0) throw Error(ErrorCode::ZeroMomentum, "transmission needs p != 0");
  double phase = 0.0;
  for (double a : params.a()) phase += std::atan2(p, -a) - std::atan2(p, a);
  return phase;
}

Complex transmission_coefficient(const SolitonParams& params, double p) {
  return std::polar(1.0, transmission_phase(params, p));
}

}  // namespace soliton::darboux
