#include "srd/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "srd/divergences.hpp"
#include "srd/errors.hpp"

namespace srd {

namespace {

// Rényi entropy (base 2) of tr_B |w><w| / <w|w>.
double entanglement_entropy(const ComplexVector& w, Index dim_a, Index dim_b, double norm2, double alpha) {
  const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      w.data(), dim_a, dim_b);
  const Spectrum s = eig_of_product(m * m.adjoint() / norm2);
  const double thr = tol::kSupportCutoff;
  double acc = 0.0;
  for (Index k = 0; k < s.dim(); ++k) {
    const double x = s.eigenvalues(k);
    if (x <= thr) continue;
    acc += alpha == 1.0 ? -x * std::log2(x) : std::pow(x, alpha);
  }
  return alpha == 1.0 ? acc : std::log2(acc) / (1.0 - alpha);
}

ComplexMatrix polar_isometry(const ComplexMatrix& z) {
  const Spectrum gram = eig_of_product(z.adjoint() * z);
  return z * gram.apply([](double x) { return 1.0 / std::sqrt(x); });
}

// Ensemble obtained from the eigen-ensemble columns `v` (D x rk) by the isometry u (m x rk).
class EnsembleObjective {
 public:
  EnsembleObjective(ComplexMatrix v, Index dim_a, Index dim_b, double alpha)
      : v_(std::move(v)), dim_a_(dim_a), dim_b_(dim_b), alpha_(alpha) {}

  double operator()(const ComplexMatrix& u) const {
    const ComplexMatrix w = v_ * u.transpose();
    double total = 0.0;
    for (Index i = 0; i < w.cols(); ++i) {
      const double p = w.col(i).squaredNorm();
      if (p <= 1e-300) continue;
      total += p * entanglement_entropy(w.col(i), dim_a_, dim_b_, p, alpha_);
    }
    return total;
  }

  PureStateEnsemble ensemble(const ComplexMatrix& u) const {
    const ComplexMatrix w = v_ * u.transpose();
    PureStateEnsemble e;
    for (Index i = 0; i < w.cols(); ++i) {
      const double p = w.col(i).squaredNorm();
      if (p <= 1e-300) continue;
      e.weights.push_back(p);
      e.states.emplace_back(w.col(i) / std::sqrt(p));
    }
    return e;
  }

 private:
  ComplexMatrix v_;
  Index dim_a_;
  Index dim_b_;
  double alpha_;
};

struct Descent {
  double value;
  ComplexMatrix u;
  int iterations;
  bool converged;
};

Descent minimize_over_isometries(const EnsembleObjective& f, ComplexMatrix z, const ReofOptions& opt) {
  ComplexMatrix u = polar_isometry(z);
  double value = f(u);
  double step = 1.0;
  constexpr double h = 1e-6;
  const Index n = u.size();
  int it = 0;
  bool converged = false;
  ComplexMatrix grad(u.rows(), u.cols());
  while (it < opt.max_iterations) {
    ++it;
    // Central differences in the real and imaginary part of each entry of Z (taken at Z = U).
    double grad_norm2 = 0.0;
    for (Index k = 0; k < n; ++k) {
      double parts[2];
      for (int part = 0; part < 2; ++part) {
        const Complex e = part == 0 ? Complex(h, 0.0) : Complex(0.0, h);
        ComplexMatrix zp = u;
        ComplexMatrix zm = u;
        zp.data()[k] += e;
        zm.data()[k] -= e;
        parts[part] = (f(polar_isometry(zp)) - f(polar_isometry(zm))) / (2.0 * h);
      }
      grad.data()[k] = Complex(parts[0], parts[1]);
      grad_norm2 += parts[0] * parts[0] + parts[1] * parts[1];
    }
    if (std::sqrt(grad_norm2) <= opt.gradient_tolerance) {
      converged = true;
      break;
    }
    bool accepted = false;
    while (step > 1e-14) {
      const ComplexMatrix candidate = polar_isometry(u - step * grad);
      const double v = f(candidate);
      if (v <= value - 1e-4 * step * grad_norm2) {
        u = candidate;
        value = v;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // No descent left at finite-difference resolution.
      converged = true;
      break;
    }
    step = std::min(2.0 * step, 1e3);
  }
  return {value, u, it, converged};
}

}  // namespace

ComplexMatrix PureStateEnsemble::mixture() const {
  if (states.empty()) throw InvalidArgument("empty ensemble");
  const Index d = states.front().dim();
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < states.size(); ++i)
    m += weights[i] * states[i].amplitudes() * states[i].amplitudes().adjoint();
  return m;
}

ArakiLiebReport araki_lieb_renyi(const BipartiteState& rho, double alpha, const ConditionalOptions& options) {
  if (!(alpha >= 0.5) || !std::isfinite(alpha)) throw InvalidArgument("araki_lieb_renyi: alpha must lie in [1/2, inf)");
  ArakiLiebReport rep;
  rep.alpha = alpha;
  rep.beta = alpha == 0.5 ? std::numeric_limits<double>::infinity() : alpha / (2.0 * alpha - 1.0);
  const DensityMatrix rho_a = rho.marginal_a();
  rep.lower = -renyi_entropy(rho_a, rep.beta);
  rep.upper = renyi_entropy(rho_a, alpha);
  rep.value = conditional_renyi(rho, alpha, options).value;
  rep.saturation_residual = rep.value - rep.lower;
  return rep;
}

BipartiteState saturating_state(const SaturatingSpec& spec, Index dim_a, Index dim_b) {
  if (spec.r_a < 1 || spec.r_ab < 1) throw InvalidArgument("saturating_state: ranks must be positive");
  if (static_cast<Index>(spec.lambda.size()) != spec.r_ab ||
      static_cast<Index>(spec.rho_a_spectrum.size()) != spec.r_a)
    throw InvalidArgument("saturating_state: spectrum lengths must match the ranks");
  const auto check_prob = [](const std::vector<double>& p, const char* what) {
    double sum = 0.0;
    for (double x : p) {
      if (!(x > 0.0)) throw InvalidArgument(std::string("saturating_state: ") + what + " must be strictly positive");
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-10) throw InvalidArgument(std::string("saturating_state: ") + what + " must sum to 1");
  };
  check_prob(spec.lambda, "lambda");
  check_prob(spec.rho_a_spectrum, "rho_A spectrum");
  if (dim_a < spec.r_a || dim_b < spec.r_a * spec.r_ab) {
    std::ostringstream os;
    os << "saturating_state: need dim_A >= " << spec.r_a << " and dim_B >= " << spec.r_a * spec.r_ab;
    throw DimensionTooSmall(os.str());
  }
  ComplexMatrix m = ComplexMatrix::Zero(dim_a * dim_b, dim_a * dim_b);
  for (Index i = 0; i < spec.r_ab; ++i) {
    ComplexVector v = ComplexVector::Zero(dim_a * dim_b);
    for (Index k = 0; k < spec.r_a; ++k)
      v(k * dim_b + k + i * spec.r_a) = std::sqrt(spec.rho_a_spectrum[static_cast<std::size_t>(k)]);
    m += spec.lambda[static_cast<std::size_t>(i)] * v * v.adjoint();
  }
  return {DensityMatrix(PositiveOperator::from_hermitian_product(m)), dim_a, dim_b};
}

SaturationCheck check_saturation_conditions(const BipartiteState& rho, double threshold) {
  SaturationCheck c;
  const RankProfile r = rank_profile(rho);
  c.rank_ok = r.r_b == r.r_a * r.r_ab;

  const Spectrum& s = rho.state().spectrum();
  const double thr = rho.state().support().cutoff_used;
  const ComplexMatrix rho_a = rho.marginal_a().matrix();
  std::vector<Index> support;
  for (Index k = 0; k < s.dim(); ++k)
    if (s.eigenvalues(k) > thr) support.push_back(k);
  for (Index i : support) {
    for (Index j : support) {
      const ComplexMatrix outer = s.eigenvectors.col(i) * s.eigenvectors.col(j).adjoint();
      ComplexMatrix diff = partial_trace(outer, rho.dim_a(), rho.dim_b(), Subsystem::A);
      if (i == j) diff -= rho_a;
      c.max_cross_residual = std::max(c.max_cross_residual, max_abs(diff));
    }
  }
  c.cross_terms_ok = c.max_cross_residual <= threshold;
  c.holds = c.rank_ok && c.cross_terms_ok;
  return c;
}

double reof_lower_bound(const BipartiteState& rho, double alpha, const ConditionalOptions& options) {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) throw InvalidArgument("reof_lower_bound: alpha must exceed 1");
  const double beta = alpha / (2.0 * alpha - 1.0);
  const double ab = -conditional_renyi(rho, beta, options).value;
  const double ba = -conditional_renyi(rho.swapped(), beta, options).value;
  return std::max({ab, ba, 0.0});
}

double eof_lower_bound(const BipartiteState& rho) {
  return std::max({-conditional_entropy(rho), -conditional_entropy(rho.swapped()), 0.0});
}

double ensemble_renyi_entropy(const PureStateEnsemble& ensemble, Index dim_a, Index dim_b, double alpha) {
  double total = 0.0;
  for (std::size_t i = 0; i < ensemble.states.size(); ++i)
    total += ensemble.weights[i] * entanglement_entropy(ensemble.states[i].amplitudes(), dim_a, dim_b, 1.0, alpha);
  return total;
}

ReofResult reof_minimize(const BipartiteState& rho, double alpha, const ReofOptions& options) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("reof_minimize: alpha must be positive");
  const DensityMatrix& state = rho.state();
  const Spectrum& s = state.spectrum();
  const double thr = state.support().cutoff_used;
  const Index rk = state.rank();
  ComplexMatrix v(state.dim(), rk);
  Index col = 0;
  for (Index k = s.dim(); k-- > 0;)
    if (s.eigenvalues(k) > thr) v.col(col++) = std::sqrt(s.eigenvalues(k)) * s.eigenvectors.col(k);

  Index m = options.ensemble_size > 0 ? options.ensemble_size : std::min<Index>(rk * rk, 16);
  if (m < rk) {
    if (options.ensemble_size > 0) throw InvalidArgument("reof_minimize: ensemble_size must be at least rank(rho)");
    m = rk;
  }
  const EnsembleObjective f(v, rho.dim_a(), rho.dim_b(), alpha);

  ComplexMatrix start = ComplexMatrix::Zero(m, rk);
  start.topRows(rk) = ComplexMatrix::Identity(rk, rk);
  if (rk == 1) {
    return {f(start), f.ensemble(start), 0, true};
  }

  const Rng rng(options.seed);
  std::optional<Descent> best;
  bool any_converged = false;
  for (int r = 0; r < std::max(1, options.restarts); ++r) {
    ComplexMatrix z = start;
    if (r > 0) {
      Rng sub = rng.substream(static_cast<std::uint64_t>(r));
      z = gaussian_matrix(m, rk, sub);
    }
    Descent d = minimize_over_isometries(f, std::move(z), options);
    any_converged = any_converged || d.converged;
    if (!best || d.value < best->value) best = std::move(d);
  }
  if (!any_converged)
    throw OptimizerNonConvergence("reof_minimize: iteration budget exhausted in every restart", best->value);
  return {best->value, f.ensemble(best->u), best->iterations, best->converged};
}

double entanglement_fidelity(const DensityMatrix& rho, const QuantumChannel& channel) {
  if (channel.dim_in() != rho.dim() || channel.dim_out() != rho.dim())
    throw DimensionMismatch("entanglement_fidelity: channel must map the state space to itself");
  const Purification p = purify(rho);
  const ComplexVector& psi = p.state.amplitudes();
  const ComplexMatrix out = extend_with_identity(channel, p.dim_purifier).apply(psi * psi.adjoint());
  return (psi.adjoint() * out * psi)(0).real();
}

double entanglement_fidelity_kraus(const DensityMatrix& rho, const QuantumChannel& channel) {
  if (channel.dim_in() != rho.dim() || channel.dim_out() != rho.dim())
    throw DimensionMismatch("entanglement_fidelity: channel must map the state space to itself");
  double acc = 0.0;
  for (const auto& k : channel.kraus()) acc += std::norm((rho.matrix() * k).trace());
  return acc;
}

FeCheck fe_equality_check(const DensityMatrix& rho, const QuantumChannel& channel) {
  const double fe = entanglement_fidelity(rho, channel);
  const double f = fidelity(rho, apply(channel, rho));
  return {f * f - fe, rho.rank() == 1};
}

}  // namespace srd
