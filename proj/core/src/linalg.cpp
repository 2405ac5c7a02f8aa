#include "srd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "srd/errors.hpp"

namespace srd {

namespace {

constexpr int kMaxSweeps = 100;
// Off-diagonal Frobenius mass, relative to the total, at which a sweep stops.
constexpr double kJacobiStop = 1e-15;
// Accepted as converged if the budget runs out below this level.
constexpr double kJacobiAccept = 1e-11;

void check_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    throw DimensionMismatch(os.str());
  }
}

void check_hermitian(const ComplexMatrix& m) {
  check_square(m, "hermitian check");
  const double scale = std::max(1e-300, max_abs(m));
  const double asym = max_abs(m - m.adjoint());
  if (!std::isfinite(asym) || asym > tol::kHermiticity * scale) {
    std::ostringstream os;
    os << "matrix is not Hermitian: max |M - M^dagger| = " << asym << " (scale " << scale << ")";
    throw NonHermitianInput(os.str());
  }
}

// Rotate columns p, q of `a` by the 2x2 block g = [[g_pp, g_pq], [g_qp, g_qq]].
void rotate_columns(ComplexMatrix& a, Index p, Index q, Complex g_pp, Complex g_pq, Complex g_qp,
                    Complex g_qq) {
  for (Index k = 0; k < a.rows(); ++k) {
    const Complex x = a(k, p);
    const Complex y = a(k, q);
    a(k, p) = x * g_pp + y * g_qp;
    a(k, q) = x * g_pq + y * g_qq;
  }
}

void rotate_rows_adjoint(ComplexMatrix& a, Index p, Index q, Complex g_pp, Complex g_pq,
                         Complex g_qp, Complex g_qq) {
  for (Index k = 0; k < a.cols(); ++k) {
    const Complex x = a(p, k);
    const Complex y = a(q, k);
    a(p, k) = std::conj(g_pp) * x + std::conj(g_qp) * y;
    a(q, k) = std::conj(g_pq) * x + std::conj(g_qq) * y;
  }
}

double off_diagonal_mass(const ComplexMatrix& a) {
  double off = 0.0;
  for (Index q = 0; q < a.cols(); ++q)
    for (Index p = 0; p < q; ++p) off += 2.0 * std::norm(a(p, q));
  return off;
}

Spectrum jacobi(ComplexMatrix a) {
  const Index n = a.rows();
  ComplexMatrix v = ComplexMatrix::Identity(n, n);
  const double total = a.squaredNorm();

  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    const double off = off_diagonal_mass(a);
    if (off <= kJacobiStop * kJacobiStop * total || off == 0.0) break;
    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const Complex b = a(p, q);
        const double abs_b = std::abs(b);
        if (abs_b == 0.0) continue;
        const Complex phase = b / abs_b;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Real Jacobi rotation on the phase-corrected block [[app, |b|], [|b|, aqq]].
        const double tau = (aqq - app) / (2.0 * abs_b);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // g = diag(1, conj(phase)) * [[c, s], [-s, c]]
        const Complex g_pp = c;
        const Complex g_pq = s;
        const Complex g_qp = -std::conj(phase) * s;
        const Complex g_qq = std::conj(phase) * c;
        rotate_columns(a, p, q, g_pp, g_pq, g_qp, g_qq);
        rotate_rows_adjoint(a, p, q, g_pp, g_pq, g_qp, g_qq);
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * abs_b;
        a(q, q) = aqq + t * abs_b;
        rotate_columns(v, p, q, g_pp, g_pq, g_qp, g_qq);
      }
    }
  }
  if (sweep == kMaxSweeps) {
    const double off = off_diagonal_mass(a);
    if (off > kJacobiAccept * kJacobiAccept * total) {
      std::ostringstream os;
      os << "Jacobi eigensolver did not converge in " << kMaxSweeps << " sweeps (relative off-diagonal "
         << std::sqrt(off / total) << ")";
      throw NoConvergence(os.str());
    }
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index i, Index j) { return a(i, i).real() < a(j, j).real(); });

  Spectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    const Index src = order[static_cast<std::size_t>(k)];
    out.eigenvalues(k) = a(src, src).real();
    ComplexVector col = v.col(src);
    Index arg = 0;
    double best = -1.0;
    for (Index i = 0; i < n; ++i) {
      if (std::abs(col(i)) > best * (1.0 + 1e-12)) {
        best = std::abs(col(i));
        arg = i;
      }
    }
    const Complex ph = col(arg) / std::abs(col(arg));
    col *= std::conj(ph);
    col(arg) = Complex(col(arg).real(), 0.0);
    out.eigenvectors.col(k) = col;
  }
  return out;
}

double support_threshold(const Spectrum& s, double cutoff) {
  return cutoff * std::max(1.0, s.max_eigenvalue());
}

}  // namespace

ComplexMatrix Spectrum::apply(const std::function<double(double)>& f) const {
  ComplexMatrix scaled = eigenvectors;
  for (Index k = 0; k < dim(); ++k) scaled.col(k) *= f(eigenvalues(k));
  return scaled * eigenvectors.adjoint();
}

ComplexMatrix Spectrum::reconstruct() const {
  return apply([](double x) { return x; });
}

HermitianOperator::HermitianOperator(const ComplexMatrix& m) {
  check_hermitian(m);
  m_ = hermitian_part(m);
}

HermitianOperator HermitianOperator::identity(Index dim) {
  return HermitianOperator(ComplexMatrix::Identity(dim, dim), Unchecked{});
}

HermitianOperator HermitianOperator::from_hermitian_product(const ComplexMatrix& m) {
  check_square(m, "from_hermitian_product");
  return HermitianOperator(hermitian_part(m), Unchecked{});
}

PositiveOperator::PositiveOperator(const ComplexMatrix& m, double cutoff) : HermitianOperator(m) {
  init(cutoff);
}

PositiveOperator::PositiveOperator(const HermitianOperator& h, double cutoff) : HermitianOperator(h) {
  init(cutoff);
}

PositiveOperator PositiveOperator::identity(Index dim) {
  return PositiveOperator(HermitianOperator::identity(dim));
}

PositiveOperator PositiveOperator::from_hermitian_product(const ComplexMatrix& m) {
  return PositiveOperator(HermitianOperator::from_hermitian_product(m));
}

void PositiveOperator::init(double cutoff) {
  cutoff_ = cutoff;
  spectrum_ = jacobi(m_);
  support_ = support_of(spectrum_, cutoff);
}

Spectrum hermitian_eig(const HermitianOperator& h) { return jacobi(h.matrix()); }

Spectrum hermitian_eig(const ComplexMatrix& h) {
  check_hermitian(h);
  return jacobi(hermitian_part(h));
}

Spectrum eig_of_product(const ComplexMatrix& m) {
  check_square(m, "eig_of_product");
  return jacobi(hermitian_part(m));
}

SupportInfo support_of(const Spectrum& s, double cutoff) {
  const double abs_max = std::max(std::abs(s.min_eigenvalue()), std::abs(s.max_eigenvalue()));
  if (s.min_eigenvalue() < -cutoff * std::max(1.0, abs_max)) {
    std::ostringstream os;
    os << "operator is not positive semidefinite: eigenvalue " << s.min_eigenvalue();
    throw NegativeEigenvalue(os.str());
  }
  SupportInfo info;
  info.cutoff_used = support_threshold(s, cutoff);
  info.projector = ComplexMatrix::Zero(s.dim(), s.dim());
  for (Index k = 0; k < s.dim(); ++k) {
    if (s.eigenvalues(k) > info.cutoff_used) {
      ++info.rank;
      info.projector += s.eigenvectors.col(k) * s.eigenvectors.col(k).adjoint();
    }
  }
  return info;
}

SupportInfo support_of(const HermitianOperator& a, double cutoff) {
  return support_of(hermitian_eig(a), cutoff);
}

ComplexMatrix function_on_support(const Spectrum& s, const std::function<double(double)>& f,
                                  double cutoff) {
  const double abs_max = std::max(std::abs(s.min_eigenvalue()), std::abs(s.max_eigenvalue()));
  if (s.min_eigenvalue() < -cutoff * std::max(1.0, abs_max)) {
    std::ostringstream os;
    os << "operator is not positive semidefinite: eigenvalue " << s.min_eigenvalue();
    throw NegativeEigenvalue(os.str());
  }
  const double thr = support_threshold(s, cutoff);
  return s.apply([&](double x) { return x > thr ? f(x) : 0.0; });
}

ComplexMatrix matrix_power_on_support(const Spectrum& s, double p, double cutoff) {
  if (p == 0.0) return function_on_support(s, [](double) { return 1.0; }, cutoff);
  if (p == 1.0) return function_on_support(s, [](double x) { return x; }, cutoff);
  return function_on_support(s, [p](double x) { return std::pow(x, p); }, cutoff);
}

ComplexMatrix matrix_power_on_support(const PositiveOperator& a, double p) {
  return matrix_power_on_support(a.spectrum(), p, a.cutoff());
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Index dim_a, Index dim_b, Subsystem keep) {
  if (dim_a <= 0 || dim_b <= 0 || m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b) {
    std::ostringstream os;
    os << "partial_trace: matrix " << m.rows() << "x" << m.cols() << " does not factor as " << dim_a
       << " x " << dim_b;
    throw DimensionMismatch(os.str());
  }
  if (keep == Subsystem::A) {
    ComplexMatrix out = ComplexMatrix::Zero(dim_a, dim_a);
    for (Index i = 0; i < dim_a; ++i)
      for (Index j = 0; j < dim_a; ++j)
        for (Index b = 0; b < dim_b; ++b) out(i, j) += m(i * dim_b + b, j * dim_b + b);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
  for (Index a = 0; a < dim_a; ++a) out += m.block(a * dim_b, a * dim_b, dim_b, dim_b);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const Index> dims,
                            std::span<const Index> keep) {
  const Index total = std::accumulate(dims.begin(), dims.end(), Index{1}, std::multiplies<>());
  if (m.rows() != total || m.cols() != total) throw DimensionMismatch("partial_trace: dims do not match matrix");
  std::vector<bool> kept(dims.size(), false);
  for (Index k : keep) {
    if (k < 0 || static_cast<std::size_t>(k) >= dims.size()) throw DimensionMismatch("partial_trace: bad factor index");
    kept[static_cast<std::size_t>(k)] = true;
  }
  Index d_keep = 1;
  for (std::size_t f = 0; f < dims.size(); ++f)
    if (kept[f]) d_keep *= dims[f];

  // Decompose each full index into per-factor digits (A-major).
  const std::size_t nf = dims.size();
  std::vector<std::vector<Index>> digits(static_cast<std::size_t>(total), std::vector<Index>(nf));
  std::vector<Index> kept_index(static_cast<std::size_t>(total));
  std::vector<Index> traced_index(static_cast<std::size_t>(total));
  for (Index i = 0; i < total; ++i) {
    Index rem = i;
    for (std::size_t f = nf; f-- > 0;) {
      digits[static_cast<std::size_t>(i)][f] = rem % dims[f];
      rem /= dims[f];
    }
    Index ki = 0, ti = 0;
    for (std::size_t f = 0; f < nf; ++f) {
      const Index dg = digits[static_cast<std::size_t>(i)][f];
      if (kept[f]) ki = ki * dims[f] + dg;
      else ti = ti * dims[f] + dg;
    }
    kept_index[static_cast<std::size_t>(i)] = ki;
    traced_index[static_cast<std::size_t>(i)] = ti;
  }
  ComplexMatrix out = ComplexMatrix::Zero(d_keep, d_keep);
  for (Index i = 0; i < total; ++i)
    for (Index j = 0; j < total; ++j)
      if (traced_index[static_cast<std::size_t>(i)] == traced_index[static_cast<std::size_t>(j)])
        out(kept_index[static_cast<std::size_t>(i)], kept_index[static_cast<std::size_t>(j)]) += m(i, j);
  return out;
}

ComplexMatrix swap_factors(const ComplexMatrix& m, Index dim_a, Index dim_b) {
  if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b) throw DimensionMismatch("swap_factors: bad dims");
  ComplexMatrix out(m.rows(), m.cols());
  auto swapped = [&](Index i) { return (i % dim_b) * dim_a + i / dim_b; };
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(swapped(i), swapped(j)) = m(i, j);
  return out;
}

double trace_norm(const ComplexMatrix& a) {
  if (a.rows() == a.cols() && max_abs(a - a.adjoint()) <= 1e-14 * std::max(1.0, max_abs(a))) {
    return jacobi(hermitian_part(a)).eigenvalues.cwiseAbs().sum();
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues().sum();
}

double fidelity(const PositiveOperator& omega, const PositiveOperator& tau) {
  if (omega.dim() != tau.dim()) throw DimensionMismatch("fidelity: operators have different dimensions");
  const ComplexMatrix product = matrix_power_on_support(omega, 0.5) * matrix_power_on_support(tau, 0.5);
  Eigen::JacobiSVD<ComplexMatrix> svd(product);
  return svd.singularValues().sum();
}

double max_abs(const ComplexMatrix& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

ComplexMatrix hermitian_part(const ComplexMatrix& a) { return 0.5 * (a + a.adjoint()); }

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) { return (a.adjoint() * b).trace(); }

}  // namespace srd
