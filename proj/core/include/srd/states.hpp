#pragma once

#include <cstdint>

#include "srd/linalg.hpp"
#include "srd/random.hpp"

namespace srd {

namespace tol {
inline constexpr double kUnitTrace = 1e-10;
inline constexpr double kUnitNorm = 1e-12;
}  // namespace tol

/// Unit-trace positive operator.
class DensityMatrix : public PositiveOperator {
 public:
  explicit DensityMatrix(const ComplexMatrix& m, double cutoff = tol::kSupportCutoff);
  explicit DensityMatrix(const PositiveOperator& p);

  /// Rescales a nonzero positive operator to unit trace.
  static DensityMatrix normalized(const ComplexMatrix& m);

  double purity() const { return (m_ * m_).trace().real(); }
};

/// Unit vector |psi>.
class PureState {
 public:
  explicit PureState(ComplexVector amplitudes);

  Index dim() const { return psi_.size(); }
  const ComplexVector& amplitudes() const { return psi_; }
  DensityMatrix density() const;

 private:
  ComplexVector psi_;
};

/// Density matrix on A (x) B with its factorization attached.
class BipartiteState {
 public:
  BipartiteState(DensityMatrix state, Index dim_a, Index dim_b);

  const DensityMatrix& state() const { return state_; }
  Index dim_a() const { return dim_a_; }
  Index dim_b() const { return dim_b_; }

  DensityMatrix marginal(Subsystem keep) const;
  DensityMatrix marginal_a() const { return marginal(Subsystem::A); }
  DensityMatrix marginal_b() const { return marginal(Subsystem::B); }
  /// Same state viewed on B (x) A.
  BipartiteState swapped() const;

 private:
  DensityMatrix state_;
  Index dim_a_;
  Index dim_b_;
};

struct RankProfile {
  Index r_ab = 0;
  Index r_a = 0;
  Index r_b = 0;

  friend bool operator==(const RankProfile&, const RankProfile&) = default;
};

/// |psi> on H (x) H' with dim H' = rank of the purified state.
struct Purification {
  PureState state;
  Index dim_system;
  Index dim_purifier;

  BipartiteState as_bipartite() const { return {state.density(), dim_system, dim_purifier}; }
};

/// Canonical purification sum_i sqrt(lambda_i) |i> (x) |i> over the eigenpairs
/// in the support, eigenvalues in descending order.
Purification purify(const DensityMatrix& rho);

DensityMatrix maximally_mixed(Index dim);
DensityMatrix basis_state(Index dim, Index k);

RankProfile rank_profile(const BipartiteState& rho);

/// G G^dagger / tr(G G^dagger) with G a dim x rank complex Gaussian matrix.
DensityMatrix random_density(Index dim, Index rank, Rng& rng);
DensityMatrix random_density(Index dim, Index rank, std::uint64_t seed);

PureState random_pure(Index dim, Rng& rng);
PureState random_pure(Index dim, std::uint64_t seed);

}  // namespace srd
