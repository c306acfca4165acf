#pragma once

// Concrete state families.
//
// Free particle (h_0 = -d^2): oscillator-like basis psi_n, plane waves
// psi_p = (2 pi)^{-1/2} e^{ipx - ip^2 t}, coherent states psi_z.
// Soliton potential: bound states phi_k, continuum phi_p = N_p^{-1} L psi_p,
// and the coherent-state families
//   phi_z  = L psi_z               (weight N_p in the spectral synthesis)
//   zeta_z = U psi_z               (weight 1)
//   eta_z  = M psi_z               (weight 1/N_p)
// Spectral syntheses run over int dp weight(p) phi_p(x, t) <psi_p|psi>.

#include <Eigen/Dense>
#include <functional>
#include <memory>

#include "soliton/core.hpp"
#include "soliton/darboux.hpp"

namespace soliton::states {

// --- free particle ---------------------------------------------------------

Complex free_basis(int n, double x, double t);
AnalyticState free_basis_state(int n);

Complex free_plane_wave(double p, double x, double t);
AnalyticState free_plane_wave_state(double p);

Complex free_cs(const ComplexLabel& z, double x, double t);
AnalyticState free_cs_state(const ComplexLabel& z);

/// <psi_p | psi_z> at t = 0.
Complex momentum_overlap(double p, const ComplexLabel& z);

/// <psi_p | psi_n> at t = 0; real, equal to (-1)^n 2^{1/4} h_n(sqrt 2 p).
double momentum_basis(int n, double p);

// --- soliton potential -----------------------------------------------------

/// Normalization N_k of the k-th bound state (1-based).
double bound_state_norm(const SolitonParams& params, std::size_t k);

/// phi_k(x) = N_k W^{(k)} / W, 1 <= k <= N, energy -a_k^2.
double bound_state(const SolitonParams& params, std::size_t k, double x);

/// phi_k with derivatives, carrying the time factor e^{i a_k^2 t}.
AnalyticState bound_state_state(const SolitonParams& params, std::size_t k);

Complex continuum_state(const darboux::DarbouxChain& chain, double p, double x, double t = 0.0);
Complex continuum_state(const SolitonParams& params, double p, double x, double t = 0.0);

Complex cs_phi(const darboux::DarbouxChain& chain, const ComplexLabel& z, double x, double t);

/// One-soliton phi_z in closed form (shift b allowed).
Complex cs_phi_one_soliton(double a, double b, const ComplexLabel& z, double x, double t);

/// One-soliton eta_z = M psi_z (b = 0) in closed form via complex erfc.
Complex cs_eta_one_soliton(double a, const ComplexLabel& z, double x, double t);

/// The same closed form with its first x-derivative.
AnalyticState cs_eta_one_soliton_state(double a, const ComplexLabel& z);

enum class SynthesisWeight {
  Unit,         // zeta
  Norm,         // phi: N_p
  InverseNorm,  // eta: 1 / N_p
};

double synthesis_weight(SynthesisWeight weight, const SolitonParams& params, double p);

/// int dp weight(p) phi_p(x, t) amplitude(p); the amplitude must decay
/// like a Gaussian centred at `center`.
Complex synthesize(const darboux::DarbouxChain& chain, SynthesisWeight weight,
                   const std::function<Complex(double)>& amplitude, double center, double x,
                   double t, double tol = 1e-11);

/// Spectral synthesis of the coherent-state families from <psi_p|psi_z>.
Complex synth_state(const darboux::DarbouxChain& chain, SynthesisWeight weight,
                    const ComplexLabel& z, double x, double t, double tol = 1e-11);

// --- overlap matrices ------------------------------------------------------

enum class OverlapKind { S0, S, SInverse };

struct OverlapMatrix {
  OverlapKind kind;
  Eigen::MatrixXd entries;
};

/// Matrix of h_0 + a^2 in the psi_n basis, n = 0..n_max.
OverlapMatrix overlap_s0(double a, int n_max);

/// S = S0(a_1) ... S0(a_N), Gram matrix of L psi_n. Built with a guard band
/// of 2N extra rows so that all returned entries are exact.
OverlapMatrix overlap_s(const SolitonParams& params, int n_max);

/// S^{-1}_{nk} = int dp N_p^{-2} <psi_n|psi_p><psi_p|psi_k>, the Gram
/// matrix of eta_n = M psi_n.
OverlapMatrix overlap_s_inverse(const SolitonParams& params, int n_max, double tol = 1e-13);

// --- norms -----------------------------------------------------------------

/// <eta_z|eta_z> = sum_k A_k F_k, with
/// F_k = sqrt(2 pi)/a_k Re erfcx(sqrt 2 (a_k + i Re z)).
double norm_eta(const SolitonParams& params, const ComplexLabel& z);

/// <phi_z|phi_z> = int dp N_p^2 |<psi_p|psi_z>|^2 (quadrature).
double norm_phi(const SolitonParams& params, const ComplexLabel& z);

}  // namespace soliton::states
