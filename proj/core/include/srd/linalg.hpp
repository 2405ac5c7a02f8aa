#pragma once

// Dense complex Hermitian linear algebra used by every other module.
//
// Index convention: row-major entry order in files, and A-major Kronecker
// products, i.e. basis vector |a>|b> of A (x) B has index a * dimB + b.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace srd {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

namespace tol {
/// Max-entry asymmetry allowed, relative to the largest entry magnitude.
inline constexpr double kHermiticity = 1e-9;
/// Eigenvalues <= cutoff * max(1, lambda_max) are treated as zero.
inline constexpr double kSupportCutoff = 1e-10;
}  // namespace tol

enum class Subsystem { A, B };

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
struct Spectrum {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;  // orthonormal columns

  Index dim() const { return eigenvalues.size(); }
  double max_eigenvalue() const { return eigenvalues.size() ? eigenvalues(eigenvalues.size() - 1) : 0.0; }
  double min_eigenvalue() const { return eigenvalues.size() ? eigenvalues(0) : 0.0; }

  /// V f(diag) V^dagger for a scalar function applied eigenvalue-wise.
  ComplexMatrix apply(const std::function<double(double)>& f) const;
  ComplexMatrix reconstruct() const;
};

struct SupportInfo {
  Index rank = 0;
  ComplexMatrix projector;
  double cutoff_used = 0.0;  // absolute eigenvalue threshold that was applied
};

/// Square complex matrix with M = M^dagger (checked, then symmetrized).
class HermitianOperator {
 public:
  explicit HermitianOperator(const ComplexMatrix& m);

  static HermitianOperator identity(Index dim);
  /// Symmetrizes without the hermiticity check. For internal products whose
  /// hermiticity holds algebraically.
  static HermitianOperator from_hermitian_product(const ComplexMatrix& m);

  Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  double trace() const { return m_.trace().real(); }

 protected:
  struct Unchecked {};
  HermitianOperator(ComplexMatrix m, Unchecked) : m_(std::move(m)) {}

  ComplexMatrix m_;
};

/// Positive semidefinite operator. The spectrum and support are computed once
/// at construction; eigenvalues in [-cutoff, 0) are accepted as roundoff.
class PositiveOperator : public HermitianOperator {
 public:
  explicit PositiveOperator(const ComplexMatrix& m, double cutoff = tol::kSupportCutoff);
  explicit PositiveOperator(const HermitianOperator& h, double cutoff = tol::kSupportCutoff);

  static PositiveOperator identity(Index dim);
  static PositiveOperator from_hermitian_product(const ComplexMatrix& m);

  const Spectrum& spectrum() const { return spectrum_; }
  const SupportInfo& support() const { return support_; }
  Index rank() const { return support_.rank; }
  /// Relative support cutoff this operator was built with.
  double cutoff() const { return cutoff_; }

 private:
  void init(double cutoff);

  double cutoff_ = tol::kSupportCutoff;
  Spectrum spectrum_;
  SupportInfo support_;
};

/// Cyclic Jacobi eigensolver for complex Hermitian matrices. Eigenvectors are
/// phase-normalized so that their largest-magnitude entry is real positive.
/// Throws NonHermitianInput or NoConvergence.
Spectrum hermitian_eig(const HermitianOperator& h);
Spectrum hermitian_eig(const ComplexMatrix& h);

SupportInfo support_of(const HermitianOperator& a, double cutoff = tol::kSupportCutoff);
SupportInfo support_of(const Spectrum& s, double cutoff = tol::kSupportCutoff);

/// A^p on supp A; the kernel maps to zero, so p = 0 gives the support
/// projector and p < 0 is the pseudo-inverse power.
ComplexMatrix matrix_power_on_support(const PositiveOperator& a, double p);
ComplexMatrix matrix_power_on_support(const Spectrum& s, double p, double cutoff = tol::kSupportCutoff);

/// Eigenvalue-wise function restricted to the support (zero on the kernel).
ComplexMatrix function_on_support(const Spectrum& s, const std::function<double(double)>& f,
                                  double cutoff = tol::kSupportCutoff);

/// Symmetrize a matrix that is Hermitian up to roundoff and diagonalize it.
Spectrum eig_of_product(const ComplexMatrix& m);

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix partial_trace(const ComplexMatrix& m, Index dim_a, Index dim_b, Subsystem keep);
/// Multipartite partial trace; `keep` lists the retained factors (any order,
/// result ordered as in `dims`).
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const Index> dims,
                            std::span<const Index> keep);

/// Exchanges the factors of A (x) B.
ComplexMatrix swap_factors(const ComplexMatrix& m, Index dim_a, Index dim_b);

double trace_norm(const ComplexMatrix& a);

/// Uhlmann fidelity ||sqrt(w) sqrt(t)||_1 (not squared).
double fidelity(const PositiveOperator& omega, const PositiveOperator& tau);
double max_abs(const ComplexMatrix& a);
ComplexMatrix hermitian_part(const ComplexMatrix& a);

/// Hilbert-Schmidt inner product tr(A^dagger B).
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace srd
