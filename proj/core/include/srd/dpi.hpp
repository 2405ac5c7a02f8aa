#pragma once

// Data-processing inequality checks, the operator equality condition for
// equality in it, Petz recovery, and a search for violations below alpha = 1/2.

#include <cstdint>
#include <vector>

#include "srd/channels.hpp"
#include "srd/divergences.hpp"
#include "srd/states.hpp"

namespace srd {

namespace tol {
/// Relative residual below which the two operators count as equal.
inline constexpr double kEquality = 1e-7;
/// Divergence gap below which data processing counts as saturated.
inline constexpr double kCross = 1e-6;
}  // namespace tol

struct DpiReport {
  DivergenceValue lhs;  // D(rho || sigma)
  DivergenceValue rhs;  // D(N rho || N sigma)
  double gap = 0.0;     // lhs - rhs
  double alpha = 0.0;
};

/// Throws SupportViolation / DisjointSupports when either divergence is infinite.
/// alpha = 1 uses the relative entropy.
DpiReport dpi_check(const DensityMatrix& rho, const DensityMatrix& sigma, const QuantumChannel& channel,
                    double alpha);

enum class AdjointRoute { kraus, stinespring };

struct EqualityCertificate {
  double residual = 0.0;   // ||lhs - rhs||_max / max(1, ||lhs||_max)
  HermitianOperator lhs_operator;
  HermitianOperator rhs_operator;
  bool equal = false;
  double threshold = tol::kEquality;
};

const char* verdict_string(const EqualityCertificate& c);

/// Compares h_hat(rho, sigma) with N^dagger(h_hat(N rho, N sigma)), the latter
/// compressed onto supp sigma.
EqualityCertificate equality_residual(const DensityMatrix& rho, const DensityMatrix& sigma,
                                      const QuantumChannel& channel, const RenyiOrder& alpha,
                                      double eq_tol = tol::kEquality, AdjointRoute route = AdjointRoute::kraus);

/// Same condition for N = tr_B, written as h_hat(rho_AB, sigma_AB) vs h_hat(rho_A, sigma_A) (x) I_B.
EqualityCertificate equality_residual_partial_trace(const BipartiteState& rho, const BipartiteState& sigma,
                                                    const RenyiOrder& alpha, double eq_tol = tol::kEquality);

/// R(X) = sigma^1/2 N^dagger(N(sigma)^-1/2 X N(sigma)^-1/2) sigma^1/2, completed
/// outside supp N(sigma) by X -> tr(P_ker X) sigma / tr(sigma) so that it is a channel.
struct RecoveryMap {
  QuantumChannel channel;
  PositiveOperator anchor_sigma;
  QuantumChannel forward;
};

RecoveryMap petz_recovery(const PositiveOperator& sigma, const QuantumChannel& channel);

/// ||R(N rho) - rho||_max.
double recovery_error(const DensityMatrix& rho, const DensityMatrix& sigma, const QuantumChannel& channel);
bool sufficiency_test(const DensityMatrix& rho, const DensityMatrix& sigma, const QuantumChannel& channel,
                      double eq_tol = tol::kEquality);

struct ViolationSearchResult {
  DensityMatrix rho;    // two-qubit rho_AB
  DensityMatrix sigma;  // two-qubit sigma_AB
  double gap;           // D(rho_AB || sigma_AB) - D(rho_A || sigma_A); negative is a violation
  int trials_evaluated;
};

/// Random two-qubit pairs with ranks 1..4, then coordinate refinement of the best pair.
/// Requires 0 < alpha < 1.
ViolationSearchResult dpi_violation_search(double alpha, int trials, std::uint64_t seed,
                                           int refinement_steps = 200);

struct FidelityMeasurement {
  std::vector<PositiveOperator> povm;  // two rank-one projectors
  double classical_fidelity;           // sum_x sqrt(p_x q_x)
  double quantum_fidelity;             // F(rho, sigma)
};

/// Projective qubit measurement minimizing the classical fidelity of the outcome
/// distributions, found by a Bloch-sphere grid followed by pattern search.
FidelityMeasurement optimal_fidelity_measurement(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace srd
