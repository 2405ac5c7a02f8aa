#pragma once

// Rényi Araki-Lieb bounds, saturating states, Rényi entanglement of formation
// and entanglement fidelity.

#include <cstdint>
#include <vector>

#include "srd/channels.hpp"
#include "srd/conditional.hpp"
#include "srd/states.hpp"

namespace srd {

struct PureStateEnsemble {
  std::vector<double> weights;
  std::vector<PureState> states;

  /// sum_i q_i |psi_i><psi_i|.
  ComplexMatrix mixture() const;
};

struct ArakiLiebReport {
  double alpha = 0.0;
  double beta = 0.0;  // +inf for alpha = 1/2
  double lower = 0.0;  // -S_beta(A)
  double value = 0.0;  // S_alpha(A|B)
  double upper = 0.0;  // S_alpha(A)
  double saturation_residual = 0.0;  // value - lower
};

/// alpha in [1/2, inf).
ArakiLiebReport araki_lieb_renyi(const BipartiteState& rho, double alpha, const ConditionalOptions& options = {});

/// rho_AB = sum_i lambda_i |i><i| with |i> = sum_k sqrt(mu_k) |k>_A |k + i r_A>_B.
struct SaturatingSpec {
  Index r_a = 1;
  Index r_ab = 1;
  std::vector<double> lambda;         // length r_ab
  std::vector<double> rho_a_spectrum;  // mu, length r_a
};

/// Throws DimensionTooSmall if dim_a < r_a or dim_b < r_a * r_ab.
BipartiteState saturating_state(const SaturatingSpec& spec, Index dim_a, Index dim_b);

struct SaturationCheck {
  bool holds = false;
  bool rank_ok = false;         // r_B = r_A r_AB
  bool cross_terms_ok = false;  // tr_B |i><j| = delta_ij rho_A on an eigenbasis
  double max_cross_residual = 0.0;
};

/// The cross-term condition only depends on supp rho_AB (it is equivalent to
/// tr_B |u><v| = <v|u> rho_A for all u, v in the support), so any eigenbasis works.
SaturationCheck check_saturation_conditions(const BipartiteState& rho, double threshold = 1e-8);

/// max{-S_beta(A|B), -S_beta(B|A), 0} with beta = alpha / (2 alpha - 1); alpha > 1.
double reof_lower_bound(const BipartiteState& rho, double alpha, const ConditionalOptions& options = {});

/// max{-S(A|B), -S(B|A), 0}.
double eof_lower_bound(const BipartiteState& rho);

struct ReofOptions {
  Index ensemble_size = 0;  // 0 selects min(rank^2, 16), at least the rank
  int restarts = 4;
  int max_iterations = 2000;
  double gradient_tolerance = 1e-8;
  std::uint64_t seed = 0xe0f;
};

struct ReofResult {
  double value = 0.0;
  PureStateEnsemble ensemble;
  int iterations = 0;
  bool converged = false;
};

/// sum_i q_i S_alpha(tr_B psi_i).
double ensemble_renyi_entropy(const PureStateEnsemble& ensemble, Index dim_a, Index dim_b, double alpha);

/// Local minimum of sum_i p_i S_alpha(tr_B psi_i) over ensembles {p_i, psi_i} of rho,
/// parameterized by isometries acting on the eigen-ensemble. Restart 0 starts at the
/// eigen-ensemble itself. The value is an upper bound on the Rényi entanglement of formation.
ReofResult reof_minimize(const BipartiteState& rho, double alpha, const ReofOptions& options = {});

/// <psi|(N (x) id)(psi)|psi> for the canonical purification psi of rho.
double entanglement_fidelity(const DensityMatrix& rho, const QuantumChannel& channel);
/// sum_k |tr(rho K_k)|^2.
double entanglement_fidelity_kraus(const DensityMatrix& rho, const QuantumChannel& channel);

struct FeCheck {
  double bound_gap = 0.0;  // F(rho, N rho)^2 - F_e(rho, N)
  bool is_pure = false;
};

FeCheck fe_equality_check(const DensityMatrix& rho, const QuantumChannel& channel);

}  // namespace srd
