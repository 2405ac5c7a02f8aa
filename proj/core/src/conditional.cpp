#include "srd/conditional.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "srd/errors.hpp"

namespace srd {

namespace {

// x^2g has an unbounded derivative at 0 when 0 < 2g < 1.
constexpr double kEigenFloor = 1e-200;
constexpr double kLogSpread = 460.0;  // exp(-460) ~ kEigenFloor
constexpr double kMaxLogStep = 50.0;

// The problem restricted to H_A (x) supp(rho_B): rho' = (I (x) W^dagger) rho (I (x) W).
struct Reduced {
  Index dim_a = 0;
  Index dim_r = 0;
  ComplexMatrix basis;     // W, d_B x r
  ComplexMatrix rho_sqrt;  // rho'^1/2
};

Reduced reduce(const BipartiteState& rho) {
  const DensityMatrix rho_b = rho.marginal_b();
  const Spectrum& s = rho_b.spectrum();
  const double thr = rho_b.support().cutoff_used;
  Reduced r;
  r.dim_a = rho.dim_a();
  r.dim_r = rho_b.rank();
  r.basis = ComplexMatrix::Zero(rho.dim_b(), r.dim_r);
  Index col = 0;
  for (Index k = 0; k < s.dim(); ++k)
    if (s.eigenvalues(k) > thr) r.basis.col(col++) = s.eigenvectors.col(k);
  const ComplexMatrix lift = tensor(ComplexMatrix::Identity(r.dim_a, r.dim_a), r.basis);
  const ComplexMatrix rho_r = lift.adjoint() * rho.state().matrix() * lift;
  r.rho_sqrt = matrix_power_on_support(eig_of_product(rho_r), 0.5);
  return r;
}

// Evaluation of phi(sigma) = log2 Q(sigma) / (alpha - 1) with
// Q = tr[(rho^1/2 (I (x) sigma^2g) rho^1/2)^alpha].
struct Evaluation {
  double phi = std::numeric_limits<double>::infinity();
  double q = 0.0;
  Spectrum sigma;
  Spectrum z;
};

class Problem {
 public:
  Problem(const Reduced& red, double alpha) : red_(red), alpha_(alpha), g2_((1.0 - alpha) / alpha) {}

  // The argument is log(sigma) with tr exp(log_sigma) = 1.
  Evaluation evaluate(const ComplexMatrix& log_sigma) const {
    Evaluation e;
    const Spectrum l = eig_of_product(log_sigma);
    e.sigma.eigenvectors = l.eigenvectors;
    e.sigma.eigenvalues = l.eigenvalues.array().exp();
    if (g2_ * l.eigenvalues.minCoeff() > 600.0 || !l.eigenvalues.allFinite()) return e;  // sigma^2g overflows
    const ComplexMatrix s2g = l.apply([this](double x) { return std::exp(g2_ * x); });
    const ComplexMatrix z =
        red_.rho_sqrt * tensor(ComplexMatrix::Identity(red_.dim_a, red_.dim_a), s2g) * red_.rho_sqrt;
    e.z = eig_of_product(z);
    const double thr = tol::kSupportCutoff * std::max(1.0, e.z.max_eigenvalue());
    for (Index k = 0; k < e.z.dim(); ++k)
      if (e.z.eigenvalues(k) > thr) e.q += std::pow(e.z.eigenvalues(k), alpha_);
    if (e.q > 0.0 && std::isfinite(e.q)) e.phi = std::log2(e.q) / (alpha_ - 1.0);
    return e;
  }

  // d phi / d sigma via the Daleckii-Krein formula for x -> x^2g.
  ComplexMatrix gradient(const Evaluation& e) const {
    const ComplexMatrix z_pow = matrix_power_on_support(e.z, alpha_ - 1.0);
    const ComplexMatrix g =
        partial_trace(red_.rho_sqrt * z_pow * red_.rho_sqrt, red_.dim_a, red_.dim_r, Subsystem::B);
    const ComplexMatrix& v = e.sigma.eigenvectors;
    ComplexMatrix m = v.adjoint() * g * v;
    const Index n = red_.dim_r;
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        const double a = std::max(e.sigma.eigenvalues(i), kEigenFloor);
        const double b = std::max(e.sigma.eigenvalues(j), kEigenFloor);
        double dd;
        if (std::abs(a - b) > 1e-12 * std::max(a, b)) {
          dd = (std::pow(a, g2_) - std::pow(b, g2_)) / (a - b);
        } else {
          const double c = 0.5 * (a + b);
          dd = g2_ * std::pow(c, g2_ - 1.0);
        }
        m(i, j) *= dd;
      }
    }
    const double scale = alpha_ / ((alpha_ - 1.0) * e.q * std::numbers::ln2);
    return hermitian_part(scale * (v * m * v.adjoint()));
  }

  static double stationarity(const Evaluation& e, const ComplexMatrix& grad) {
    const ComplexMatrix sigma = e.sigma.reconstruct();
    const double c = (sigma * grad).trace().real();
    const ComplexMatrix root = e.sigma.apply([](double x) { return std::sqrt(std::max(x, 0.0)); });
    const ComplexMatrix centered = grad - c * ComplexMatrix::Identity(grad.rows(), grad.cols());
    return max_abs(root * centered * root);
  }

 private:
  const Reduced& red_;
  double alpha_;
  double g2_;  // 2 gamma
};

// Exponentiated-gradient step carried out on log(sigma), so eigenvalues may
// decay towards a boundary optimum without underflowing into log(0). The
// spread of log(sigma) is capped to keep its spectrum accurate.
ComplexMatrix mirror_step(const ComplexMatrix& log_sigma, const ComplexMatrix& grad, double eta) {
  const Spectrum l = eig_of_product(hermitian_part(log_sigma - eta * grad));
  const double top = l.max_eigenvalue();
  const double lse = top + std::log((l.eigenvalues.array() - top).exp().sum());
  return l.apply([top, lse](double x) { return std::max(x, top - kLogSpread) - lse; });
}

struct RunResult {
  double phi;
  ComplexMatrix sigma;
  int iterations;
  double stationarity;
};

RunResult descend(const Problem& problem, const ComplexMatrix& start, const ConditionalOptions& opt) {
  ComplexMatrix log_sigma = eig_of_product(start).apply([](double x) { return std::log(x); });
  Evaluation cur = problem.evaluate(log_sigma);
  double eta = 1.0;
  int it = 0;
  ComplexMatrix grad = problem.gradient(cur);
  double stat = Problem::stationarity(cur, grad);
  while (it < opt.max_iterations && stat > 0.01 * opt.tolerance) {
    ++it;
    std::optional<Evaluation> next;
    ComplexMatrix next_log;
    double step = std::min(eta, kMaxLogStep / std::max(max_abs(grad), 1e-300));
    for (int halvings = 0; halvings < 60; ++halvings) {
      next_log = mirror_step(log_sigma, grad, step);
      Evaluation trial = problem.evaluate(next_log);
      if (trial.phi <= cur.phi) {
        next = std::move(trial);
        break;
      }
      step *= 0.5;
      eta = step;
    }
    if (!next) break;
    const double decrease = cur.phi - next->phi;
    log_sigma = std::move(next_log);
    cur = std::move(*next);
    grad = problem.gradient(cur);
    stat = Problem::stationarity(cur, grad);
    eta = std::min(2.0 * eta, 1e8);
    if (decrease <= 1e-16 * std::max(1.0, std::abs(cur.phi)) && stat <= opt.tolerance) break;
  }
  return {cur.phi, cur.sigma.reconstruct(), it, stat};
}

void check_alpha(double alpha) {
  if (!std::isfinite(alpha) || alpha < 0.5) {
    std::ostringstream os;
    os << "conditional Renyi entropy needs alpha in [1/2, inf), got " << alpha;
    throw InvalidArgument(os.str());
  }
}

}  // namespace

DivergenceValue conditional_objective(const BipartiteState& rho, const PositiveOperator& sigma_b, double alpha) {
  if (sigma_b.dim() != rho.dim_b()) throw DimensionMismatch("conditional_objective: sigma_B has the wrong dimension");
  const PositiveOperator joint = PositiveOperator::from_hermitian_product(
      tensor(ComplexMatrix::Identity(rho.dim_a(), rho.dim_a()), sigma_b.matrix()));
  return srd(rho.state(), joint, alpha);
}

ComplexMatrix conditional_gradient(const BipartiteState& rho, const PositiveOperator& sigma_b, double alpha) {
  check_alpha(alpha);
  if (alpha == 1.0) throw InvalidArgument("conditional_gradient: alpha must differ from 1");
  if (sigma_b.dim() != rho.dim_b() || sigma_b.rank() != sigma_b.dim())
    throw InvalidArgument("conditional_gradient: sigma_B must be invertible on B");
  Reduced full;
  full.dim_a = rho.dim_a();
  full.dim_r = rho.dim_b();
  full.basis = ComplexMatrix::Identity(rho.dim_b(), rho.dim_b());
  full.rho_sqrt = matrix_power_on_support(rho.state(), 0.5);
  const Problem problem(full, alpha);
  const ComplexMatrix log_sigma = sigma_b.spectrum().apply([](double x) { return std::log(x); });
  return problem.gradient(problem.evaluate(log_sigma));
}

ConditionalResult conditional_renyi(const BipartiteState& rho, double alpha, const ConditionalOptions& options) {
  check_alpha(alpha);
  if (alpha == 1.0) {
    return {conditional_entropy(rho), rho.marginal_b(), 0, 0.0, true};
  }
  const Reduced red = reduce(rho);
  const Problem problem(red, alpha);
  const auto embed = [&](const ComplexMatrix& s) {
    return DensityMatrix::normalized(hermitian_part(red.basis * s * red.basis.adjoint()));
  };

  if (red.dim_r == 1) {
    const ComplexMatrix one = ComplexMatrix::Identity(1, 1);
    const Evaluation e = problem.evaluate(ComplexMatrix::Zero(1, 1));
    return {-e.phi, embed(one), 0, 0.0, true};
  }

  const Index r = red.dim_r;
  const DensityMatrix rho_b = rho.marginal_b();
  const ComplexMatrix rho_b_reduced = hermitian_part(red.basis.adjoint() * rho_b.matrix() * red.basis);
  const Rng rng(options.seed);
  const int restarts = std::max(1, options.restarts);

  std::optional<RunResult> best;
  bool any_converged = false;
  for (int k = 0; k < restarts; ++k) {
    ComplexMatrix start;
    if (k == 0) {
      start = rho_b_reduced / rho_b_reduced.trace().real();
    } else if (k == 1) {
      start = ComplexMatrix::Identity(r, r) / static_cast<double>(r);
    } else {
      Rng sub = rng.substream(static_cast<std::uint64_t>(k));
      start = random_density(r, r, sub).matrix();
    }
    RunResult run = descend(problem, std::move(start), options);
    const bool ok = run.stationarity <= options.tolerance;
    any_converged = any_converged || ok;
    if (!best || run.phi < best->phi) best = std::move(run);
  }

  const bool converged = best->stationarity <= options.tolerance;
  if (!any_converged) {
    std::ostringstream os;
    os << "conditional_renyi: no restart reached stationarity " << options.tolerance << " (best "
       << best->stationarity << ")";
    throw OptimizerNonConvergence(os.str(), -best->phi);
  }
  return {-best->phi, embed(best->sigma), best->iterations, best->stationarity, converged};
}

BipartiteState complementary_marginal(const BipartiteState& rho) {
  const Purification p = purify(rho.state());
  const std::array<Index, 3> dims{rho.dim_a(), rho.dim_b(), p.dim_purifier};
  const std::array<Index, 2> keep{0, 2};
  const ComplexMatrix psi = p.state.density().matrix();
  const ComplexMatrix rho_ac = partial_trace(psi, dims, keep);
  return {DensityMatrix(PositiveOperator::from_hermitian_product(rho_ac)), rho.dim_a(), p.dim_purifier};
}

DualityReport duality_gap(const BipartiteState& rho, double alpha, const ConditionalOptions& options) {
  if (!(alpha > 0.5) || !std::isfinite(alpha)) throw InvalidArgument("duality_gap: alpha must lie in (1/2, inf)");
  const double beta = alpha / (2.0 * alpha - 1.0);
  DualityReport rep;
  rep.alpha = alpha;
  rep.beta = beta;
  rep.s_alpha_ab = conditional_renyi(rho, alpha, options).value;
  rep.s_beta_ac = conditional_renyi(complementary_marginal(rho), beta, options).value;
  rep.gap = std::abs(rep.s_alpha_ab + rep.s_beta_ac);
  return rep;
}

}  // namespace srd
