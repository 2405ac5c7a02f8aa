#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "srd/channels.hpp"
#include "srd/errors.hpp"

using namespace srd;

namespace {

ComplexMatrix random_hermitian(Index d, Rng& rng) {
  const ComplexMatrix g = gaussian_matrix(d, d, rng);
  return 0.5 * (g + g.adjoint());
}

}  // namespace

TEST(Channel, RejectsNonTracePreserving) {
  ComplexMatrix k = ComplexMatrix::Identity(2, 2);
  k(1, 1) = 0.5;
  EXPECT_THROW(QuantumChannel({k}), NotTracePreserving);
  EXPECT_THROW(QuantumChannel({}), InvalidArgument);
  EXPECT_THROW(QuantumChannel({ComplexMatrix::Identity(2, 2), ComplexMatrix::Zero(3, 2)}), DimensionMismatch);
}

TEST(Channel, AdjointIsHilbertSchmidtDual) {
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    const QuantumChannel ch = random_channel(3, 2, 3, rng);
    const ComplexMatrix x = random_hermitian(3, rng);
    const ComplexMatrix y = random_hermitian(2, rng);
    EXPECT_NEAR(std::abs(hs_inner(y, ch.apply(x)) - hs_inner(ch.adjoint(y), x)), 0.0, 1e-12);
    EXPECT_LE(max_abs(ch.adjoint(ComplexMatrix::Identity(2, 2)) - ComplexMatrix::Identity(3, 3)), 1e-12);
  }
}

TEST(Channel, ApplyMatchesKrausSum) {
  Rng rng(2);
  const QuantumChannel ch = random_channel(4, 3, 2, rng);
  const DensityMatrix rho = random_density(4, 2, rng);
  EXPECT_LE(max_abs(ch.apply(rho.matrix()) - oracle::apply(ch.kraus(), rho.matrix())), 1e-14);
  const DensityMatrix out = apply(ch, rho);
  EXPECT_NEAR(out.trace(), 1.0, 1e-12);
  EXPECT_THROW(ch.apply(ComplexMatrix::Identity(3, 3)), DimensionMismatch);
}

TEST(Channel, StandardFamilies) {
  ComplexMatrix one = ComplexMatrix::Zero(2, 2);
  one(1, 1) = 1.0;
  const ComplexMatrix damped = amplitude_damping(0.3).apply(one);
  EXPECT_NEAR(damped(0, 0).real(), 0.3, 1e-15);
  EXPECT_NEAR(damped(1, 1).real(), 0.7, 1e-15);

  Rng rng(3);
  const DensityMatrix rho = random_density(3, 3, rng);
  const ComplexMatrix dep = depolarizing(3, 0.4).apply(rho.matrix());
  EXPECT_LE(max_abs(dep - (0.6 * rho.matrix() + 0.4 * ComplexMatrix::Identity(3, 3) / 3.0)), 1e-14);

  const DensityMatrix q = random_density(2, 2, rng);
  const ComplexMatrix deph = dephasing(0.5).apply(q.matrix());
  EXPECT_NEAR(std::abs(deph(0, 1)), 0.0, 1e-15);
  EXPECT_LE(max_abs(identity_channel(3).apply(rho.matrix()) - rho.matrix()), 0.0);
  EXPECT_THROW(amplitude_damping(1.5), InvalidArgument);
}

TEST(Channel, PartialTraceChannel) {
  Rng rng(4);
  const DensityMatrix rho = random_density(6, 4, rng);
  EXPECT_LE(max_abs(partial_trace_channel(2, 3, Subsystem::A).apply(rho.matrix()) -
                    oracle::trace_b(rho.matrix(), 2, 3)),
            1e-14);
  EXPECT_LE(max_abs(partial_trace_channel(2, 3, Subsystem::B).apply(rho.matrix()) -
                    oracle::trace_a(rho.matrix(), 2, 3)),
            1e-14);
}

TEST(Channel, ComposeAndExtend) {
  Rng rng(5);
  const QuantumChannel a = random_channel(2, 3, 2, rng);
  const QuantumChannel b = random_channel(3, 2, 3, rng);
  const DensityMatrix rho = random_density(2, 2, rng);
  EXPECT_LE(max_abs(compose(b, a).apply(rho.matrix()) - b.apply(a.apply(rho.matrix()))), 1e-14);
  EXPECT_THROW(compose(a, a), DimensionMismatch);

  const DensityMatrix sigma = random_density(2, 2, rng);
  const ComplexMatrix joint = tensor(rho.matrix(), sigma.matrix());
  EXPECT_LE(max_abs(extend_with_identity(a, 2).apply(joint) - tensor(a.apply(rho.matrix()), sigma.matrix())), 1e-14);
}

TEST(Channel, PinchingAndMeasurement) {
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  const ComplexMatrix p1 = ComplexMatrix::Identity(2, 2) - p0;
  Rng rng(6);
  const DensityMatrix rho = random_density(2, 2, rng);
  const ComplexMatrix pinched = pinching_channel({p0, p1}).apply(rho.matrix());
  EXPECT_NEAR(std::abs(pinched(0, 1)), 0.0, 1e-15);
  EXPECT_THROW(pinching_channel({p0}), IncompleteResolution);
  EXPECT_THROW(pinching_channel({0.5 * ComplexMatrix::Identity(2, 2), 0.5 * ComplexMatrix::Identity(2, 2)}),
               IncompleteResolution);

  const QuantumChannel m =
      measurement_channel({PositiveOperator::from_hermitian_product(p0), PositiveOperator::from_hermitian_product(p1)});
  const ComplexMatrix out = m.apply(rho.matrix());
  EXPECT_NEAR(out(0, 0).real(), rho.matrix()(0, 0).real(), 1e-15);
  EXPECT_NEAR(std::abs(out(0, 1)), 0.0, 1e-15);
  EXPECT_THROW(measurement_channel({PositiveOperator::from_hermitian_product(p0)}), IncompletePOVM);
}

TEST(Stinespring, DilationReproducesChannel) {
  Rng rng(7);
  for (int t = 0; t < 10; ++t) {
    const Index din = 2 + t % 3;
    const Index dout = 2 + (t / 3) % 2;
    const Index kmin = (din + dout - 1) / dout;
    const QuantumChannel ch = random_channel(din, dout, kmin + t % 3, rng);
    const StinespringDilation s = stinespring(ch);
    const Index n = s.unitary.rows();
    EXPECT_EQ(n, din * s.dim_aux * s.dim_out);
    EXPECT_LE(max_abs(s.unitary.adjoint() * s.unitary - ComplexMatrix::Identity(n, n)), 1e-12);
    EXPECT_LE(max_abs(s.isometry.adjoint() * s.isometry - ComplexMatrix::Identity(din, din)), 1e-12);
    const DensityMatrix rho = random_density(din, din, rng);
    EXPECT_LE(max_abs(s.apply(rho.matrix()) - ch.apply(rho.matrix())), 1e-12);
    const ComplexMatrix y = random_hermitian(dout, rng);
    EXPECT_LE(max_abs(s.adjoint(y) - ch.adjoint(y)), 1e-12);
  }
}

TEST(HeisenbergWeyl, OrthogonalUnitaries) {
  for (Index d : {2, 3}) {
    const HeisenbergWeylSet hw = heisenberg_weyl(d);
    ASSERT_EQ(hw.operators.size(), static_cast<std::size_t>(d * d));
    for (std::size_t i = 0; i < hw.operators.size(); ++i) {
      const ComplexMatrix& w = hw.operators[i];
      EXPECT_LE(max_abs(w.adjoint() * w - ComplexMatrix::Identity(d, d)), 1e-13);
      for (std::size_t j = 0; j < hw.operators.size(); ++j) {
        const double expected = i == j ? static_cast<double>(d) : 0.0;
        EXPECT_NEAR(std::abs(hs_inner(w, hw.operators[j])), expected, 1e-12);
      }
    }
  }
}

TEST(HeisenbergWeyl, QubitTwirlIdentity) {
  Rng rng(9);
  const ComplexMatrix m = gaussian_matrix(2, 2, rng);
  ComplexMatrix avg = ComplexMatrix::Zero(2, 2);
  for (const auto& v : heisenberg_weyl(2).operators) avg += v * m * v.adjoint();
  EXPECT_LE(max_abs(avg / 4.0 - m.trace() / 2.0 * ComplexMatrix::Identity(2, 2)), 1e-14);
}

TEST(HeisenbergWeyl, TwirlGivesProductWithMaximallyMixed) {
  Rng rng(8);
  for (Index da = 1; da <= 4; ++da)
    for (Index db = 1; db <= 4; ++db) {
      const BipartiteState rho(random_density(da * db, da * db, rng), da, db);
      const ComplexMatrix expected =
          tensor(rho.marginal_a().matrix(), ComplexMatrix::Identity(db, db) / static_cast<double>(db));
      EXPECT_LE(max_abs(hw_twirl(rho).state().matrix() - expected), 1e-10) << da << "x" << db;
    }
}
