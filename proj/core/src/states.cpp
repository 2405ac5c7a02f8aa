#include "srd/states.hpp"

#include <cmath>
#include <sstream>

#include "srd/errors.hpp"

namespace srd {

namespace {

void check_unit_trace(const PositiveOperator& p) {
  const double tr = p.trace();
  if (std::abs(tr - 1.0) > tol::kUnitTrace) {
    std::ostringstream os;
    os << "density matrix must have unit trace, got " << tr;
    throw InvalidArgument(os.str());
  }
}

}  // namespace

DensityMatrix::DensityMatrix(const ComplexMatrix& m, double cutoff) : PositiveOperator(m, cutoff) {
  check_unit_trace(*this);
}

DensityMatrix::DensityMatrix(const PositiveOperator& p) : PositiveOperator(p) { check_unit_trace(*this); }

DensityMatrix DensityMatrix::normalized(const ComplexMatrix& m) {
  const PositiveOperator p(m);
  const double tr = p.trace();
  if (!(tr > 0.0)) throw InvalidArgument("cannot normalize an operator with zero trace");
  return DensityMatrix(PositiveOperator::from_hermitian_product(p.matrix() / tr));
}

PureState::PureState(ComplexVector amplitudes) : psi_(std::move(amplitudes)) {
  if (psi_.size() == 0) throw InvalidArgument("pure state must be non-empty");
  const double norm = psi_.norm();
  if (std::abs(norm - 1.0) > tol::kUnitNorm) {
    std::ostringstream os;
    os << "pure state must have unit norm, got " << norm;
    throw InvalidArgument(os.str());
  }
}

DensityMatrix PureState::density() const {
  return DensityMatrix(PositiveOperator::from_hermitian_product(psi_ * psi_.adjoint()));
}

BipartiteState::BipartiteState(DensityMatrix state, Index dim_a, Index dim_b)
    : state_(std::move(state)), dim_a_(dim_a), dim_b_(dim_b) {
  if (dim_a <= 0 || dim_b <= 0 || state_.dim() != dim_a * dim_b) {
    std::ostringstream os;
    os << "bipartite state of dimension " << state_.dim() << " does not factor as " << dim_a << " x " << dim_b;
    throw DimensionMismatch(os.str());
  }
}

DensityMatrix BipartiteState::marginal(Subsystem keep) const {
  return DensityMatrix(
      PositiveOperator::from_hermitian_product(partial_trace(state_.matrix(), dim_a_, dim_b_, keep)));
}

BipartiteState BipartiteState::swapped() const {
  return {DensityMatrix(PositiveOperator::from_hermitian_product(swap_factors(state_.matrix(), dim_a_, dim_b_))),
          dim_b_, dim_a_};
}

Purification purify(const DensityMatrix& rho) {
  const Spectrum& s = rho.spectrum();
  const double thr = rho.support().cutoff_used;
  const Index d = rho.dim();
  const Index r = rho.rank();
  ComplexVector psi = ComplexVector::Zero(d * r);
  Index slot = 0;
  for (Index k = d; k-- > 0;) {
    const double lambda = s.eigenvalues(k);
    if (lambda <= thr) continue;
    for (Index i = 0; i < d; ++i) psi(i * r + slot) = std::sqrt(lambda) * s.eigenvectors(i, k);
    ++slot;
  }
  // Dropped sub-cutoff weight is renormalized away.
  psi /= psi.norm();
  return {PureState(std::move(psi)), d, r};
}

DensityMatrix maximally_mixed(Index dim) {
  if (dim < 1) throw InvalidArgument("maximally_mixed: dimension must be >= 1");
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix basis_state(Index dim, Index k) {
  if (k < 0 || k >= dim) throw InvalidArgument("basis_state: index out of range");
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(k, k) = 1.0;
  return DensityMatrix(m);
}

RankProfile rank_profile(const BipartiteState& rho) {
  return {rho.state().rank(), rho.marginal_a().rank(), rho.marginal_b().rank()};
}

DensityMatrix random_density(Index dim, Index rank, Rng& rng) {
  if (dim < 1 || rank < 1 || rank > dim) throw InvalidArgument("random_density: need 1 <= rank <= dim");
  const ComplexMatrix g = gaussian_matrix(dim, rank, rng);
  const ComplexMatrix w = g * g.adjoint();
  return DensityMatrix(PositiveOperator::from_hermitian_product(w / w.trace().real()));
}

DensityMatrix random_density(Index dim, Index rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(dim, rank, rng);
}

PureState random_pure(Index dim, Rng& rng) {
  if (dim < 1) throw InvalidArgument("random_pure: dimension must be >= 1");
  ComplexVector v = gaussian_matrix(dim, 1, rng).col(0);
  return PureState(v / v.norm());
}

PureState random_pure(Index dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_pure(dim, rng);
}

}  // namespace srd
