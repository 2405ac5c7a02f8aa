#include "srd/dpi.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

#include "srd/errors.hpp"

namespace srd {

namespace {

DivergenceValue divergence(const DensityMatrix& rho, const PositiveOperator& sigma, double alpha) {
  return alpha == 1.0 ? qre(rho, sigma) : srd(rho, sigma, RenyiOrder(alpha));
}

void require_finite(const DivergenceValue& v, const char* side) {
  if (!v.infinite) return;
  std::ostringstream os;
  os << "dpi_check: " << side << " divergence is infinite (supports " << to_string(v.support_case) << ")";
  if (v.support_case == SupportCase::disjoint) throw DisjointSupports(os.str());
  throw SupportViolation(os.str());
}

EqualityCertificate certify(const ComplexMatrix& lhs, const ComplexMatrix& rhs, double eq_tol) {
  const double scale = std::max(1.0, max_abs(lhs));
  const double residual = max_abs(lhs - rhs) / scale;
  return {residual, HermitianOperator::from_hermitian_product(lhs), HermitianOperator::from_hermitian_product(rhs),
          residual <= eq_tol, eq_tol};
}

// Two-qubit pair generated from Gaussian factors rho = G G^dagger / tr.
struct PairFactors {
  ComplexMatrix g_rho;
  ComplexMatrix g_sigma;
};

DensityMatrix from_factor(const ComplexMatrix& g) { return DensityMatrix::normalized(g * g.adjoint()); }

double pair_gap(const PairFactors& f, double alpha) {
  const RenyiOrder order(alpha);
  const DensityMatrix rho = from_factor(f.g_rho);
  const DensityMatrix sigma = from_factor(f.g_sigma);
  const DivergenceValue joint = srd(rho, sigma, order);
  if (joint.infinite) return std::numeric_limits<double>::infinity();
  const DensityMatrix rho_a(PositiveOperator::from_hermitian_product(partial_trace(rho.matrix(), 2, 2, Subsystem::A)));
  const DensityMatrix sigma_a(
      PositiveOperator::from_hermitian_product(partial_trace(sigma.matrix(), 2, 2, Subsystem::A)));
  const DivergenceValue reduced = srd(rho_a, sigma_a, order);
  if (reduced.infinite) return std::numeric_limits<double>::infinity();
  return joint.value - reduced.value;
}

Complex& coordinate(PairFactors& f, Index k) {
  const Index n_rho = f.g_rho.size();
  return k < n_rho ? f.g_rho.data()[k] : f.g_sigma.data()[k - n_rho];
}

double classical_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma, double theta, double phi) {
  ComplexVector n(2);
  n(0) = std::cos(0.5 * theta);
  n(1) = std::polar(std::sin(0.5 * theta), phi);
  const double p = std::clamp((n.adjoint() * rho.matrix() * n)(0).real(), 0.0, 1.0);
  const double q = std::clamp((n.adjoint() * sigma.matrix() * n)(0).real(), 0.0, 1.0);
  return std::sqrt(p * q) + std::sqrt((1.0 - p) * (1.0 - q));
}

}  // namespace

DpiReport dpi_check(const DensityMatrix& rho, const DensityMatrix& sigma, const QuantumChannel& channel,
                    double alpha) {
  DpiReport rep;
  rep.alpha = alpha;
  rep.lhs = divergence(rho, sigma, alpha);
  require_finite(rep.lhs, "input");
  rep.rhs = divergence(apply(channel, rho), apply(channel, sigma), alpha);
  require_finite(rep.rhs, "output");
  rep.gap = rep.lhs.value - rep.rhs.value;
  return rep;
}

const char* verdict_string(const EqualityCertificate& c) { return c.equal ? "equal" : "not-equal"; }

EqualityCertificate equality_residual(const DensityMatrix& rho, const DensityMatrix& sigma,
                                      const QuantumChannel& channel, const RenyiOrder& alpha, double eq_tol,
                                      AdjointRoute route) {
  const PositiveOperator lhs = h_hat(rho, sigma, alpha);
  const PositiveOperator out = h_hat(apply(channel, rho), apply(channel, sigma), alpha);
  ComplexMatrix rhs;
  if (route == AdjointRoute::kraus) {
    rhs = channel.adjoint(out.matrix());
  } else {
    rhs = stinespring(channel).adjoint(out.matrix());
  }
  const ComplexMatrix& p = sigma.support().projector;
  return certify(lhs.matrix(), p * rhs * p, eq_tol);
}

EqualityCertificate equality_residual_partial_trace(const BipartiteState& rho, const BipartiteState& sigma,
                                                    const RenyiOrder& alpha, double eq_tol) {
  if (rho.dim_a() != sigma.dim_a() || rho.dim_b() != sigma.dim_b())
    throw DimensionMismatch("equality_residual_partial_trace: factorizations differ");
  const PositiveOperator lhs = h_hat(rho.state(), sigma.state(), alpha);
  const PositiveOperator marg = h_hat(rho.marginal_a(), sigma.marginal_a(), alpha);
  const ComplexMatrix rhs = tensor(marg.matrix(), ComplexMatrix::Identity(rho.dim_b(), rho.dim_b()));
  const ComplexMatrix& p = sigma.state().support().projector;
  return certify(lhs.matrix(), p * rhs * p, eq_tol);
}

RecoveryMap petz_recovery(const PositiveOperator& sigma, const QuantumChannel& channel) {
  if (sigma.dim() != channel.dim_in()) throw DimensionMismatch("petz_recovery: sigma does not match the channel input");
  if (!(sigma.trace() > 0.0)) throw InvalidArgument("petz_recovery: sigma must be nonzero");
  const PositiveOperator image = apply(channel, sigma);
  const ComplexMatrix sigma_half = matrix_power_on_support(sigma, 0.5);
  const ComplexMatrix image_inv_half = matrix_power_on_support(image, -0.5);

  std::vector<ComplexMatrix> kraus;
  kraus.reserve(channel.kraus().size());
  for (const auto& k : channel.kraus()) kraus.push_back(sigma_half * k.adjoint() * image_inv_half);

  // Send the kernel of N(sigma) to sigma / tr(sigma).
  const Spectrum& img = image.spectrum();
  const double thr = image.support().cutoff_used;
  const Spectrum& sig = sigma.spectrum();
  const double tr = sigma.trace();
  for (Index j = 0; j < img.dim(); ++j) {
    if (img.eigenvalues(j) > thr) continue;
    for (Index i = 0; i < sig.dim(); ++i) {
      const double s = sig.eigenvalues(i) / tr;
      if (s <= sigma.support().cutoff_used) continue;
      kraus.push_back(std::sqrt(s) * sig.eigenvectors.col(i) * img.eigenvectors.col(j).adjoint());
    }
  }
  return {QuantumChannel(std::move(kraus)), sigma, channel};
}

double recovery_error(const DensityMatrix& rho, const DensityMatrix& sigma, const QuantumChannel& channel) {
  const RecoveryMap r = petz_recovery(sigma, channel);
  return max_abs(r.channel.apply(channel.apply(rho.matrix())) - rho.matrix());
}

bool sufficiency_test(const DensityMatrix& rho, const DensityMatrix& sigma, const QuantumChannel& channel,
                      double eq_tol) {
  return recovery_error(rho, sigma, channel) <= eq_tol;
}

ViolationSearchResult dpi_violation_search(double alpha, int trials, std::uint64_t seed, int refinement_steps) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("dpi_violation_search: alpha must lie in (0, 1)");
  if (trials < 1) throw InvalidArgument("dpi_violation_search: trials must be positive");
  const Rng root(seed);
  PairFactors best;
  double best_gap = std::numeric_limits<double>::infinity();
  int evaluated = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = root.substream(static_cast<std::uint64_t>(t));
    const Index r_rho = 1 + static_cast<Index>(rng() % 4);
    const Index r_sigma = 1 + static_cast<Index>(rng() % 4);
    PairFactors f{gaussian_matrix(4, r_rho, rng), gaussian_matrix(4, r_sigma, rng)};
    const double gap = pair_gap(f, alpha);
    if (!std::isfinite(gap)) continue;
    ++evaluated;
    if (gap < best_gap) {
      best_gap = gap;
      best = std::move(f);
    }
  }
  if (!std::isfinite(best_gap)) throw NumericalError("dpi_violation_search: no finite instance sampled");

  const Index n = best.g_rho.size() + best.g_sigma.size();
  double delta = 0.05;
  bool improved_in_sweep = false;
  for (int step = 0; step < refinement_steps; ++step) {
    const Index k = step % n;
    for (const Complex dir : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) {
      PairFactors trial = best;
      coordinate(trial, k) += delta * dir;
      const double gap = pair_gap(trial, alpha);
      if (gap < best_gap) {
        best_gap = gap;
        best = std::move(trial);
        improved_in_sweep = true;
        break;
      }
    }
    if (k == n - 1) {
      if (!improved_in_sweep) delta *= 0.5;
      improved_in_sweep = false;
    }
  }
  return {from_factor(best.g_rho), from_factor(best.g_sigma), best_gap, evaluated};
}

FidelityMeasurement optimal_fidelity_measurement(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != 2 || sigma.dim() != 2)
    throw DimensionMismatch("optimal_fidelity_measurement: qubit states required");
  constexpr double pi = std::numbers::pi;
  double theta = 0.0;
  double phi = 0.0;
  double best = std::numeric_limits<double>::infinity();
  constexpr int kTheta = 64;
  constexpr int kPhi = 128;
  for (int i = 0; i <= kTheta; ++i) {
    for (int j = 0; j < kPhi; ++j) {
      const double t = pi * i / kTheta;
      const double p = 2.0 * pi * j / kPhi;
      const double v = classical_fidelity(rho, sigma, t, p);
      if (v < best) {
        best = v;
        theta = t;
        phi = p;
      }
    }
  }
  constexpr std::array<std::pair<double, double>, 4> kMoves{{{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}};
  double step = pi / kTheta;
  while (step > 1e-12) {
    bool moved = false;
    for (const auto& [dt, dp] : kMoves) {
      const double t = theta + dt * step;
      const double p = phi + dp * step;
      const double v = classical_fidelity(rho, sigma, t, p);
      if (v < best) {
        best = v;
        theta = t;
        phi = p;
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }
  ComplexVector n(2);
  n(0) = std::cos(0.5 * theta);
  n(1) = std::polar(std::sin(0.5 * theta), phi);
  const ComplexMatrix p0 = n * n.adjoint();
  const ComplexMatrix p1 = ComplexMatrix::Identity(2, 2) - p0;
  return {{PositiveOperator::from_hermitian_product(p0), PositiveOperator::from_hermitian_product(p1)}, best,
          fidelity(rho, sigma)};
}

}  // namespace srd
