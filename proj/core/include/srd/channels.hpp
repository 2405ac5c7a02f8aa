#pragma once

#include <cstdint>
#include <vector>

#include "srd/linalg.hpp"
#include "srd/random.hpp"
#include "srd/states.hpp"

namespace srd {

namespace tol {
/// Allowed deviation of sum_k K_k^dagger K_k from the identity.
inline constexpr double kTracePreserving = 1e-9;
}  // namespace tol

/// Completely positive trace-preserving map in Kraus form, K_k : dim_in -> dim_out.
class QuantumChannel {
 public:
  explicit QuantumChannel(std::vector<ComplexMatrix> kraus, double tp_tolerance = tol::kTracePreserving);

  Index dim_in() const { return dim_in_; }
  Index dim_out() const { return dim_out_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

  /// sum_k K_k X K_k^dagger for an arbitrary dim_in x dim_in matrix.
  ComplexMatrix apply(const ComplexMatrix& x) const;
  /// sum_k K_k^dagger Y K_k, the Hilbert-Schmidt adjoint.
  ComplexMatrix adjoint(const ComplexMatrix& y) const;

 private:
  std::vector<ComplexMatrix> kraus_;
  Index dim_in_ = 0;
  Index dim_out_ = 0;
};

PositiveOperator apply(const QuantumChannel& channel, const PositiveOperator& rho);
DensityMatrix apply(const QuantumChannel& channel, const DensityMatrix& rho);
HermitianOperator apply_adjoint(const QuantumChannel& channel, const HermitianOperator& y);

QuantumChannel identity_channel(Index dim);
QuantumChannel unitary_channel(const ComplexMatrix& u);
QuantumChannel amplitude_damping(double p);
/// rho -> (1 - p) rho + p tr(rho) I / d; p = 1 is completely depolarizing.
QuantumChannel depolarizing(Index dim, double p);
/// Qubit dephasing with Kraus {sqrt(1 - p) I, sqrt(p) Z}.
QuantumChannel dephasing(double p);
/// Channel (x) id_dim acting on the first factor.
QuantumChannel extend_with_identity(const QuantumChannel& channel, Index dim);
/// second o first.
QuantumChannel compose(const QuantumChannel& second, const QuantumChannel& first);

/// Partial trace as a channel with Kraus operators (I_A (x) <b|) when keeping A.
QuantumChannel partial_trace_channel(Index dim_a, Index dim_b, Subsystem keep);

/// rho -> sum_i P_i rho P_i. Throws IncompleteResolution unless sum_i P_i = I.
QuantumChannel pinching_channel(const std::vector<ComplexMatrix>& projectors);

/// omega -> sum_x tr(omega M_x) |x><x|. Throws IncompletePOVM unless sum_x M_x = I.
QuantumChannel measurement_channel(const std::vector<PositiveOperator>& povm);

/// Gaussian Kraus stack orthonormalized to an isometry. Needs kraus_count * dim_out >= dim_in.
QuantumChannel random_channel(Index dim_in, Index dim_out, Index kraus_count, Rng& rng);
QuantumChannel random_channel(Index dim_in, Index dim_out, Index kraus_count, std::uint64_t seed);

/// Lambda(rho) = tr_12( U (rho (x) tau) U^dagger ) on H (x) H' (x) K.
struct StinespringDilation {
  Index dim_in = 0;
  Index dim_aux = 0;  // H'
  Index dim_out = 0;  // K
  PureState ancilla;  // tau on H' (x) K
  ComplexMatrix unitary;
  ComplexMatrix isometry;  // V = U (I_H (x) |tau>)

  /// tr_12( U (rho (x) tau) U^dagger ).
  ComplexMatrix apply(const ComplexMatrix& rho) const;
  /// V^dagger (I_{H H'} (x) omega) V.
  ComplexMatrix adjoint(const ComplexMatrix& omega) const;
};

/// Isometry V = sum_k |k> (x) K_k completed to a unitary by Gram-Schmidt over
/// the standard basis.
StinespringDilation stinespring(const QuantumChannel& channel);

/// Clock-and-shift operators X^a Z^b, a, b = 0..d-1 (index a * d + b).
struct HeisenbergWeylSet {
  Index dim = 0;
  std::vector<ComplexMatrix> operators;
};

HeisenbergWeylSet heisenberg_weyl(Index dim);

/// Explicit average d^-2 sum_i (I (x) V_i) rho (I (x) V_i)^dagger, equal to rho_A (x) pi_B.
BipartiteState hw_twirl(const BipartiteState& rho);

}  // namespace srd
