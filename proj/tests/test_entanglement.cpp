#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "srd/entanglement.hpp"
#include "srd/errors.hpp"

using namespace srd;

namespace {

BipartiteState bell_state() {
  ComplexVector phi = ComplexVector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  return {PureState(phi).density(), 2, 2};
}

double renyi_of(const Eigen::VectorXd& p, double a) {
  double s = 0.0;
  for (double x : p)
    if (x > 0.0) s += std::pow(x, a);
  return std::log2(s) / (1.0 - a);
}

}  // namespace

TEST(SaturatingState, RankProfileAndMarginal) {
  const SaturatingSpec spec{2, 2, {0.6, 0.4}, {0.7, 0.3}};
  const BipartiteState rho = saturating_state(spec, 2, 4);
  const RankProfile rp = rank_profile(rho);
  EXPECT_EQ(rp.r_ab, 2);
  EXPECT_EQ(rp.r_a, 2);
  EXPECT_EQ(rp.r_b, 4);
  const Eigen::VectorXd mu = oracle::eigenvalues(rho.marginal_a().matrix());
  EXPECT_NEAR(mu(0), 0.3, 1e-12);
  EXPECT_NEAR(mu(1), 0.7, 1e-12);
  const Eigen::VectorXd lam = oracle::eigenvalues(rho.state().matrix());
  EXPECT_NEAR(lam(lam.size() - 1), 0.6, 1e-12);
  EXPECT_NEAR(lam(lam.size() - 2), 0.4, 1e-12);

  const SaturationCheck c = check_saturation_conditions(rho);
  EXPECT_TRUE(c.holds);
  EXPECT_TRUE(c.rank_ok);
  EXPECT_TRUE(c.cross_terms_ok);
}

TEST(SaturatingState, RandomStatesFail) {
  Rng rng(1);
  const BipartiteState rho(random_density(8, 2, rng), 2, 4);
  const SaturationCheck c = check_saturation_conditions(rho);
  EXPECT_FALSE(c.holds);
  EXPECT_FALSE(c.cross_terms_ok);
}

TEST(SaturatingState, DimensionTooSmall) {
  const SaturatingSpec spec{2, 2, {0.5, 0.5}, {0.5, 0.5}};
  EXPECT_THROW(saturating_state(spec, 2, 3), DimensionTooSmall);
  EXPECT_THROW(saturating_state(spec, 1, 4), DimensionTooSmall);
}

TEST(ArakiLieb, SaturatingStateMeetsLowerBound) {
  const SaturatingSpec spec{2, 2, {0.6, 0.4}, {0.7, 0.3}};
  const BipartiteState rho = saturating_state(spec, 2, 4);
  for (double a : {2.0, 0.75}) {
    const ArakiLiebReport r = araki_lieb_renyi(rho, a);
    EXPECT_NEAR(r.beta, a / (2 * a - 1), 1e-15);
    EXPECT_NEAR(r.lower, -renyi_of(Eigen::Vector2d(0.7, 0.3), r.beta), 1e-12);
    EXPECT_LE(std::abs(r.saturation_residual), 1e-5) << a;
  }
}

TEST(ArakiLieb, BoundsHoldOnRandomStates) {
  Rng rng(2);
  for (int t = 0; t < 6; ++t) {
    const BipartiteState rho(random_density(4, 1 + t % 4, rng), 2, 2);
    const ArakiLiebReport r = araki_lieb_renyi(rho, 2.0);
    EXPECT_GE(r.value, r.lower - 2e-6);
    EXPECT_LE(r.value, r.upper + 2e-6);
  }
  const ArakiLiebReport b = araki_lieb_renyi(bell_state(), 2.0);
  EXPECT_NEAR(b.value, -1.0, 1e-9);
  EXPECT_NEAR(b.lower, -1.0, 1e-12);
  EXPECT_NEAR(b.upper, 1.0, 1e-12);
}

TEST(Reof, BellAndProduct) {
  EXPECT_NEAR(reof_minimize(bell_state(), 2.0).value, 1.0, 1e-6);
  Rng rng(3);
  const ComplexMatrix a = random_density(2, 2, rng).matrix();
  const ComplexMatrix b = random_density(2, 2, rng).matrix();
  const BipartiteState prod(DensityMatrix(PositiveOperator::from_hermitian_product(tensor(a, b))), 2, 2);
  EXPECT_NEAR(reof_minimize(prod, 2.0).value, 0.0, 1e-8);
  EXPECT_NEAR(reof_lower_bound(prod, 2.0), 0.0, 1e-9);
}

TEST(Reof, LowerBoundBelowUpperBound) {
  Rng rng(4);
  for (int t = 0; t < 3; ++t) {
    const BipartiteState rho(random_density(4, 2, rng), 2, 2);
    const ReofResult r = reof_minimize(rho, 2.0);
    EXPECT_LE(reof_lower_bound(rho, 2.0), r.value + 1e-6);
    EXPECT_LE(max_abs(r.ensemble.mixture() - rho.state().matrix()), 1e-9);
    EXPECT_NEAR(ensemble_renyi_entropy(r.ensemble, 2, 2, 2.0), r.value, 1e-10);
  }
  EXPECT_GE(eof_lower_bound(bell_state()), 1.0 - 1e-12);
}

TEST(EntanglementFidelity, PureStatesAttainEquality) {
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    const DensityMatrix psi = random_pure(3, rng).density();
    const QuantumChannel ch = random_channel(3, 3, 2, rng);
    const FeCheck c = fe_equality_check(psi, ch);
    EXPECT_TRUE(c.is_pure);
    EXPECT_NEAR(c.bound_gap, 0.0, 1e-10);
  }
}

TEST(EntanglementFidelity, RoutesAgreeAndBoundHolds) {
  Rng rng(6);
  for (int t = 0; t < 10; ++t) {
    const DensityMatrix rho = random_density(3, 2 + t % 2, rng);
    const QuantumChannel ch = random_channel(3, 3, 3, rng);
    const double fe = entanglement_fidelity(rho, ch);
    EXPECT_NEAR(fe, entanglement_fidelity_kraus(rho, ch), 1e-12);
    const double f = oracle::fidelity(rho.matrix(), ch.apply(rho.matrix()));
    EXPECT_LE(fe, f * f + 1e-12);
    EXPECT_FALSE(fe_equality_check(rho, ch).is_pure);
  }
}
