#pragma once

// Rényi-type divergences and entropies. All logarithms are base 2.

#include <optional>
#include <span>

#include "srd/linalg.hpp"
#include "srd/states.hpp"

namespace srd {

namespace tol {
/// ||(I - P_sigma) P_rho||_max above this means supp rho is not inside supp sigma.
inline constexpr double kSupportContainment = 1e-8;
}  // namespace tol

/// Validated Rényi parameter alpha > 0, alpha != 1.
class RenyiOrder {
 public:
  explicit RenyiOrder(double alpha);

  double alpha() const { return alpha_; }
  /// (1 - alpha) / (2 alpha).
  double gamma() const { return (1.0 - alpha_) / (2.0 * alpha_); }
  /// beta with 1/alpha + 1/beta = 2. Empty for alpha <= 1/2 (beta would be infinite or negative).
  std::optional<double> dual_beta() const;

 private:
  double alpha_;
};

enum class SupportCase { contained, overlapping, disjoint };

const char* to_string(SupportCase c);

struct DivergenceValue {
  double value = 0.0;  // meaningless when infinite
  bool infinite = false;
  SupportCase support_case = SupportCase::contained;

  static DivergenceValue finite(double v, SupportCase c) { return {v, false, c}; }
  static DivergenceValue plus_infinity(SupportCase c) { return {0.0, true, c}; }
  bool is_finite() const { return !infinite; }
};

/// Relation between supp rho and supp sigma: contained, orthogonal ("disjoint"), or neither.
SupportCase classify_support(const PositiveOperator& rho, const PositiveOperator& sigma);

/// tr[(sigma^g rho sigma^g)^alpha] with g = (1 - alpha)/(2 alpha), powers restricted to supports.
/// Throws SupportViolation (alpha > 1, supp rho not inside supp sigma) or
/// DisjointSupports (alpha < 1, orthogonal supports).
double q_tilde(const PositiveOperator& rho, const PositiveOperator& sigma, const RenyiOrder& alpha);

/// Sandwiched Rényi divergence.
DivergenceValue srd(const DensityMatrix& rho, const PositiveOperator& sigma, const RenyiOrder& alpha);
/// Same, with alpha = 1 routed to the relative entropy.
DivergenceValue srd(const DensityMatrix& rho, const PositiveOperator& sigma, double alpha);

/// Petz-type Rényi relative entropy (1/(alpha-1)) log tr(rho^alpha sigma^(1-alpha)).
DivergenceValue rre(const DensityMatrix& rho, const PositiveOperator& sigma, const RenyiOrder& alpha);
DivergenceValue rre(const DensityMatrix& rho, const PositiveOperator& sigma, double alpha);

/// Umegaki relative entropy tr rho (log rho - log sigma).
DivergenceValue qre(const DensityMatrix& rho, const PositiveOperator& sigma);

/// log lambda_max(sigma^-1/2 rho sigma^-1/2).
DivergenceValue d_max(const DensityMatrix& rho, const PositiveOperator& sigma);

/// Classical Kullback-Leibler divergence with 0 log 0 = 0.
/// Throws AbsoluteContinuityViolation if some P_i > 0 has Q_i = 0.
double kl(std::span<const double> p, std::span<const double> q);

/// Classical Rényi divergence (1/(alpha-1)) log sum p_i^alpha q_i^(1-alpha); +inf handled by the caller.
double classical_renyi(std::span<const double> p, std::span<const double> q, double alpha);

/// alpha tr(rho H) - (alpha - 1) tr[(sigma^-g H sigma^-g)^(alpha/(alpha-1))].
///
/// sigma^-g and the outer power act on supports (pseudo-inverse convention).
/// For alpha > 1 the supremum over H >= 0 is q_tilde; for alpha < 1 the
/// infimum is q_tilde over H whose sandwiched image is invertible on supp sigma.
double f_alpha(const PositiveOperator& h, const PositiveOperator& rho, const PositiveOperator& sigma,
               const RenyiOrder& alpha);

/// The optimizer sigma^g (sigma^g rho sigma^g)^(alpha-1) sigma^g of f_alpha.
PositiveOperator h_hat(const PositiveOperator& rho, const PositiveOperator& sigma, const RenyiOrder& alpha);

double von_neumann_entropy(const DensityMatrix& rho);
/// (1/(1-alpha)) log tr rho^alpha; alpha = 1 gives von Neumann, alpha = +inf the min-entropy.
double renyi_entropy(const DensityMatrix& rho, double alpha);
/// S(AB) - S(B).
double conditional_entropy(const BipartiteState& rho);

}  // namespace srd
