#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "srd/conditional.hpp"
#include "srd/errors.hpp"

using namespace srd;

namespace {

BipartiteState bell_state() {
  ComplexVector phi = ComplexVector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  return {PureState(phi).density(), 2, 2};
}

// phi(sigma) = -S(A|B; sigma) = D(rho_AB || I (x) sigma), evaluated independently.
double objective(const BipartiteState& rho, const ComplexMatrix& sigma, double alpha) {
  const oracle::Mat id = oracle::Mat::Identity(rho.dim_a(), rho.dim_a());
  return oracle::sandwiched(rho.state().matrix(), oracle::kron(id, sigma), alpha);
}

ComplexMatrix qubit_state(double r, double theta, double phi) {
  ComplexMatrix s(2, 2);
  const double z = r * std::cos(theta);
  const Complex xy = std::polar(r * std::sin(theta), phi);
  s << 0.5 * (1 + z), 0.5 * std::conj(xy), 0.5 * xy, 0.5 * (1 - z);
  return s;
}

// Brute-force minimum of phi over the Bloch ball, grid plus pattern search.
double brute_force_qubit_b(const BipartiteState& rho, double alpha) {
  const double pi = std::numbers::pi;
  double best = std::numeric_limits<double>::infinity();
  double br = 0, bt = 0, bp = 0;
  for (int i = 1; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j)
      for (int k = 0; k < 40; ++k) {
        const double r = 0.999999 * i / 20.0;
        const double v = objective(rho, qubit_state(r, pi * j / 20.0, 2 * pi * k / 40.0), alpha);
        if (v < best) {
          best = v;
          br = r;
          bt = pi * j / 20.0;
          bp = 2 * pi * k / 40.0;
        }
      }
  double step = 0.05;
  while (step > 1e-10) {
    bool moved = false;
    for (int axis = 0; axis < 3; ++axis)
      for (double dir : {1.0, -1.0}) {
        double r = br, t = bt, p = bp;
        (axis == 0 ? r : axis == 1 ? t : p) += dir * step;
        if (r < 0.0 || r >= 1.0) continue;
        const double v = objective(rho, qubit_state(r, t, p), alpha);
        if (v < best) {
          best = v;
          br = r;
          bt = t;
          bp = p;
          moved = true;
        }
      }
    if (!moved) step *= 0.5;
  }
  return -best;
}

}  // namespace

TEST(ConditionalGradient, MatchesFiniteDifferences) {
  Rng rng(1);
  for (double a : {0.5, 0.75, 1.5, 2.0, 3.0}) {
    const BipartiteState rho(random_density(6, 3, rng), 2, 3);
    const DensityMatrix sigma = random_density(3, 3, rng);
    const ComplexMatrix g = conditional_gradient(rho, sigma, a);
    constexpr double h = 1e-6;
    for (int k = 0; k < 4; ++k) {
      const ComplexMatrix x = gaussian_matrix(3, 3, rng);
      const ComplexMatrix dir = 0.5 * (x + x.adjoint());
      const double fp = objective(rho, sigma.matrix() + h * dir, a);
      const double fm = objective(rho, sigma.matrix() - h * dir, a);
      const double fd = (fp - fm) / (2 * h);
      EXPECT_NEAR(hs_inner(g, dir).real(), fd, 1e-6 * std::max(1.0, std::abs(fd))) << a;
    }
  }
}

TEST(ConditionalRenyi, BellStateIsMinusOne) {
  const BipartiteState bell = bell_state();
  for (double a : {0.5, 0.75, 2.0, 3.0}) EXPECT_NEAR(conditional_renyi(bell, a).value, -1.0, 1e-9) << a;
}

TEST(ConditionalRenyi, ProductStateGivesMarginalEntropy) {
  Rng rng(2);
  const DensityMatrix a = random_density(2, 2, rng);
  const DensityMatrix b = random_density(3, 3, rng);
  const BipartiteState prod(DensityMatrix(PositiveOperator::from_hermitian_product(tensor(a.matrix(), b.matrix()))),
                            2, 3);
  for (double alpha : {0.5, 0.75, 2.0, 3.0}) {
    const ConditionalResult r = conditional_renyi(prod, alpha);
    EXPECT_NEAR(r.value, renyi_entropy(a, alpha), 1e-9) << alpha;
    EXPECT_LE(max_abs(r.optimizer.matrix() - b.matrix()), 1e-5) << alpha;
    EXPECT_TRUE(r.converged);
  }
}

TEST(ConditionalRenyi, MatchesBruteForceOverBlochBall) {
  Rng rng(3);
  for (int t = 0; t < 4; ++t) {
    const BipartiteState rho(random_density(4, 1 + t % 4, rng), 2, 2);
    for (double a : {0.5, 0.75, 2.0}) {
      const double ref = brute_force_qubit_b(rho, a);
      EXPECT_NEAR(conditional_renyi(rho, a).value, ref, 1e-7) << "trial " << t << " alpha " << a;
    }
  }
}

TEST(ConditionalRenyi, OrderOneIsVonNeumann) {
  Rng rng(4);
  const BipartiteState rho(random_density(4, 3, rng), 2, 2);
  EXPECT_NEAR(conditional_renyi(rho, 1.0).value, conditional_entropy(rho), 1e-14);
  EXPECT_THROW(conditional_renyi(rho, 0.4), InvalidArgument);
}

TEST(ConditionalRenyi, RankDeficientMarginal) {
  // rho_B supported on a two-dimensional subspace of a qutrit.
  Rng rng(5);
  const DensityMatrix small = random_density(4, 3, rng);
  ComplexMatrix lift = ComplexMatrix::Zero(3, 2);
  lift(0, 0) = 1.0;
  lift(2, 1) = 1.0;
  const ComplexMatrix iso = tensor(ComplexMatrix::Identity(2, 2), lift);
  const BipartiteState big(DensityMatrix(PositiveOperator::from_hermitian_product(iso * small.matrix() * iso.adjoint())),
                           2, 3);
  const BipartiteState ref(small, 2, 2);
  for (double a : {0.75, 2.0}) {
    const ConditionalResult r = conditional_renyi(big, a);
    EXPECT_NEAR(r.value, conditional_renyi(ref, a).value, 1e-9) << a;
    EXPECT_NEAR(r.optimizer.matrix()(1, 1).real(), 0.0, 1e-12);
  }
}

TEST(Duality, ComplementaryPairsCancel) {
  Rng rng(6);
  for (int t = 0; t < 5; ++t) {
    const BipartiteState rho(random_density(4, 1 + t % 4, rng), 2, 2);
    for (double a : {2.0, 3.0, 0.75}) {
      const DualityReport rep = duality_gap(rho, a);
      EXPECT_NEAR(rep.beta, a / (2 * a - 1), 1e-15);
      EXPECT_LE(rep.gap, 2e-6) << a;
    }
  }
  EXPECT_THROW(duality_gap(bell_state(), 0.5), InvalidArgument);
}

TEST(Duality, ComplementaryMarginalHasPurifierDimension) {
  Rng rng(7);
  const BipartiteState rho(random_density(6, 2, rng), 2, 3);
  const BipartiteState ac = complementary_marginal(rho);
  EXPECT_EQ(ac.dim_a(), 2);
  EXPECT_EQ(ac.dim_b(), 2);
  EXPECT_LE(max_abs(ac.marginal_a().matrix() - rho.marginal_a().matrix()), 1e-12);
  EXPECT_NEAR(oracle::entropy(ac.state().matrix()), oracle::entropy(rho.marginal_b().matrix()), 1e-10);
}
