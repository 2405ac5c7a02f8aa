#include "srd/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "srd/errors.hpp"

namespace srd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_same_dim(const PositiveOperator& a, const PositiveOperator& b, const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << what << ": dimensions " << a.dim() << " and " << b.dim() << " differ";
    throw DimensionMismatch(os.str());
  }
}

// Sum of f over eigenvalues above the relative support cutoff.
template <class F>
double spectral_sum(const Spectrum& s, F f) {
  const double thr = tol::kSupportCutoff * std::max(1.0, s.max_eigenvalue());
  double acc = 0.0;
  for (Index k = 0; k < s.dim(); ++k) {
    const double x = s.eigenvalues(k);
    if (x > thr) acc += f(x);
  }
  return acc;
}

// sigma^g and the spectrum of sigma^g rho sigma^g.
struct Sandwich {
  ComplexMatrix sigma_g;
  Spectrum inner;
};

Sandwich sandwich(const PositiveOperator& rho, const PositiveOperator& sigma, double g) {
  Sandwich s;
  s.sigma_g = matrix_power_on_support(sigma, g);
  s.inner = eig_of_product(s.sigma_g * rho.matrix() * s.sigma_g);
  return s;
}

void require_support(const PositiveOperator& rho, const PositiveOperator& sigma, const RenyiOrder& a,
                     const char* what) {
  const SupportCase c = classify_support(rho, sigma);
  if (a.alpha() > 1.0 && c != SupportCase::contained) {
    std::ostringstream os;
    os << what << ": alpha = " << a.alpha() << " > 1 requires supp rho inside supp sigma";
    throw SupportViolation(os.str());
  }
  if (a.alpha() < 1.0 && c == SupportCase::disjoint) {
    std::ostringstream os;
    os << what << ": rho and sigma have orthogonal supports";
    throw DisjointSupports(os.str());
  }
}

DivergenceValue from_trace_functional(double q, double alpha, SupportCase c) {
  if (!(q > 0.0)) return DivergenceValue::plus_infinity(c);
  return DivergenceValue::finite(std::log2(q) / (alpha - 1.0), c);
}

bool infinite_branch(const RenyiOrder& a, SupportCase c) {
  return (a.alpha() > 1.0 && c != SupportCase::contained) || (a.alpha() < 1.0 && c == SupportCase::disjoint);
}

}  // namespace

RenyiOrder::RenyiOrder(double alpha) : alpha_(alpha) {
  if (!std::isfinite(alpha) || alpha <= 0.0 || alpha == 1.0) {
    std::ostringstream os;
    os << "Renyi order must be finite, positive and different from 1, got " << alpha;
    throw InvalidArgument(os.str());
  }
}

std::optional<double> RenyiOrder::dual_beta() const {
  if (alpha_ <= 0.5) return std::nullopt;
  return alpha_ / (2.0 * alpha_ - 1.0);
}

const char* to_string(SupportCase c) {
  switch (c) {
    case SupportCase::contained:
      return "contained";
    case SupportCase::overlapping:
      return "overlapping";
    case SupportCase::disjoint:
      return "disjoint";
  }
  return "unknown";
}

SupportCase classify_support(const PositiveOperator& rho, const PositiveOperator& sigma) {
  check_same_dim(rho, sigma, "classify_support");
  const ComplexMatrix& p_rho = rho.support().projector;
  const ComplexMatrix& p_sigma = sigma.support().projector;
  const ComplexMatrix outside = p_rho - p_sigma * p_rho;
  if (max_abs(outside) <= tol::kSupportContainment) return SupportCase::contained;
  if (max_abs(p_sigma * p_rho) <= tol::kSupportContainment) return SupportCase::disjoint;
  return SupportCase::overlapping;
}

double q_tilde(const PositiveOperator& rho, const PositiveOperator& sigma, const RenyiOrder& alpha) {
  require_support(rho, sigma, alpha, "q_tilde");
  const double a = alpha.alpha();
  const Sandwich s = sandwich(rho, sigma, alpha.gamma());
  return spectral_sum(s.inner, [a](double x) { return std::pow(x, a); });
}

DivergenceValue srd(const DensityMatrix& rho, const PositiveOperator& sigma, const RenyiOrder& alpha) {
  const SupportCase c = classify_support(rho, sigma);
  if (infinite_branch(alpha, c)) return DivergenceValue::plus_infinity(c);
  return from_trace_functional(q_tilde(rho, sigma, alpha), alpha.alpha(), c);
}

DivergenceValue srd(const DensityMatrix& rho, const PositiveOperator& sigma, double alpha) {
  if (alpha == 1.0) return qre(rho, sigma);
  return srd(rho, sigma, RenyiOrder(alpha));
}

DivergenceValue rre(const DensityMatrix& rho, const PositiveOperator& sigma, const RenyiOrder& alpha) {
  const SupportCase c = classify_support(rho, sigma);
  if (infinite_branch(alpha, c)) return DivergenceValue::plus_infinity(c);
  const double a = alpha.alpha();
  const ComplexMatrix rho_a = matrix_power_on_support(rho, a);
  const ComplexMatrix sigma_1a = matrix_power_on_support(sigma, 1.0 - a);
  const double q = (rho_a * sigma_1a).trace().real();
  return from_trace_functional(q, a, c);
}

DivergenceValue rre(const DensityMatrix& rho, const PositiveOperator& sigma, double alpha) {
  if (alpha == 1.0) return qre(rho, sigma);
  return rre(rho, sigma, RenyiOrder(alpha));
}

DivergenceValue qre(const DensityMatrix& rho, const PositiveOperator& sigma) {
  const SupportCase c = classify_support(rho, sigma);
  if (c != SupportCase::contained) return DivergenceValue::plus_infinity(c);
  const ComplexMatrix log_rho = function_on_support(rho.spectrum(), [](double x) { return std::log2(x); });
  const ComplexMatrix log_sigma = function_on_support(sigma.spectrum(), [](double x) { return std::log2(x); });
  const double v = (rho.matrix() * (log_rho - log_sigma)).trace().real();
  return DivergenceValue::finite(v, c);
}

DivergenceValue d_max(const DensityMatrix& rho, const PositiveOperator& sigma) {
  const SupportCase c = classify_support(rho, sigma);
  if (c != SupportCase::contained) return DivergenceValue::plus_infinity(c);
  const Sandwich s = sandwich(rho, sigma, -0.5);
  return DivergenceValue::finite(std::log2(s.inner.max_eigenvalue()), c);
}

double kl(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw DimensionMismatch("kl: distributions have different lengths");
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0.0 || q[i] < 0.0) throw InvalidArgument("kl: negative probability");
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) throw AbsoluteContinuityViolation("kl: P is not absolutely continuous w.r.t. Q");
    acc += p[i] * std::log2(p[i] / q[i]);
  }
  return acc;
}

double classical_renyi(std::span<const double> p, std::span<const double> q, double alpha) {
  if (p.size() != q.size()) throw DimensionMismatch("classical_renyi: distributions have different lengths");
  if (alpha == 1.0) return kl(p, q);
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) {
      if (alpha > 1.0) return kInf;
      continue;
    }
    acc += std::pow(p[i], alpha) * std::pow(q[i], 1.0 - alpha);
  }
  if (acc <= 0.0) return kInf;
  return std::log2(acc) / (alpha - 1.0);
}

double f_alpha(const PositiveOperator& h, const PositiveOperator& rho, const PositiveOperator& sigma,
               const RenyiOrder& alpha) {
  check_same_dim(rho, sigma, "f_alpha");
  check_same_dim(h, sigma, "f_alpha");
  const double a = alpha.alpha();
  if (a > 1.0 && classify_support(rho, sigma) != SupportCase::contained)
    throw SupportViolation("f_alpha: alpha > 1 requires supp rho inside supp sigma");
  const ComplexMatrix s = matrix_power_on_support(sigma, -alpha.gamma());
  const Spectrum inner = eig_of_product(s * h.matrix() * s);
  const double p = a / (a - 1.0);
  const double tail = spectral_sum(inner, [p](double x) { return std::pow(x, p); });
  return a * (rho.matrix() * h.matrix()).trace().real() - (a - 1.0) * tail;
}

PositiveOperator h_hat(const PositiveOperator& rho, const PositiveOperator& sigma, const RenyiOrder& alpha) {
  require_support(rho, sigma, alpha, "h_hat");
  const Sandwich s = sandwich(rho, sigma, alpha.gamma());
  const ComplexMatrix middle = matrix_power_on_support(s.inner, alpha.alpha() - 1.0);
  return PositiveOperator::from_hermitian_product(s.sigma_g * middle * s.sigma_g);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return -spectral_sum(rho.spectrum(), [](double x) { return x * std::log2(x); });
}

double renyi_entropy(const DensityMatrix& rho, double alpha) {
  if (std::isnan(alpha) || alpha <= 0.0) throw InvalidArgument("renyi_entropy: alpha must be positive");
  if (alpha == 1.0) return von_neumann_entropy(rho);
  if (std::isinf(alpha)) return -std::log2(rho.spectrum().max_eigenvalue());
  const double q = spectral_sum(rho.spectrum(), [alpha](double x) { return std::pow(x, alpha); });
  return std::log2(q) / (1.0 - alpha);
}

double conditional_entropy(const BipartiteState& rho) {
  return von_neumann_entropy(rho.state()) - von_neumann_entropy(rho.marginal_b());
}

}  // namespace srd
