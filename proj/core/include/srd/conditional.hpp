#pragma once

// Sandwiched Rényi conditional entropy
//   S_alpha(A|B) = -min_{sigma_B} D_alpha(rho_AB || I_A (x) sigma_B).

#include <cstdint>

#include "srd/divergences.hpp"
#include "srd/states.hpp"

namespace srd {

struct ConditionalOptions {
  int restarts = 20;
  /// Bound on the sigma-weighted KKT residual ||sigma^1/2 (grad - c I) sigma^1/2||_max.
  double tolerance = 1e-7;
  int max_iterations = 5000;
  std::uint64_t seed = 0x5eed;
};

struct ConditionalResult {
  double value = 0.0;
  DensityMatrix optimizer;  // sigma_B on the full B space
  int iterations = 0;       // of the restart that won
  double stationarity = 0.0;
  bool converged = false;
};

/// Objective D_alpha(rho_AB || I_A (x) sigma_B).
DivergenceValue conditional_objective(const BipartiteState& rho, const PositiveOperator& sigma_b, double alpha);

/// Gradient of sigma_B -> D_alpha(rho_AB || I_A (x) sigma_B) w.r.t. the Hilbert-Schmidt pairing.
/// sigma_B must be invertible.
ComplexMatrix conditional_gradient(const BipartiteState& rho, const PositiveOperator& sigma_b, double alpha);

/// Mirror descent on the state space of supp(rho_B), started from rho_B, from the
/// maximally mixed state and from random states. alpha = 1 returns the von Neumann value.
/// Throws InvalidArgument for alpha < 1/2 and OptimizerNonConvergence when no restart
/// reaches the tolerance.
ConditionalResult conditional_renyi(const BipartiteState& rho, double alpha, const ConditionalOptions& options = {});

/// rho_AC of the canonical purification rho_ABC of rho_AB.
BipartiteState complementary_marginal(const BipartiteState& rho);

struct DualityReport {
  double alpha = 0.0;
  double beta = 0.0;
  double s_alpha_ab = 0.0;  // S_alpha(A|B)
  double s_beta_ac = 0.0;   // S_beta(A|C)
  double gap = 0.0;         // |S_alpha(A|B) + S_beta(A|C)|
};

/// Requires alpha > 1/2 so that beta = alpha / (2 alpha - 1) is finite.
DualityReport duality_gap(const BipartiteState& rho, double alpha, const ConditionalOptions& options = {});

}  // namespace srd
