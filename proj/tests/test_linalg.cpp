#include <array>
#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "srd/errors.hpp"
#include "srd/linalg.hpp"
#include "srd/random.hpp"
#include "srd/states.hpp"

using namespace srd;

namespace {

ComplexMatrix random_hermitian(Index d, Rng& rng) {
  const ComplexMatrix g = gaussian_matrix(d, d, rng);
  return 0.5 * (g + g.adjoint());
}

}  // namespace

TEST(Eigensolver, MatchesEigenOnRandomHermitian) {
  Rng rng(3);
  for (Index d : {1, 2, 3, 5, 8, 16, 32}) {
    const ComplexMatrix h = random_hermitian(d, rng);
    const Spectrum s = hermitian_eig(h);
    const Eigen::VectorXd ref = oracle::eigenvalues(h);
    EXPECT_LE((s.eigenvalues - ref).cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, ref.cwiseAbs().maxCoeff())) << d;
    EXPECT_LE(max_abs(s.reconstruct() - h), 1e-12) << d;
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    EXPECT_LE(max_abs(s.eigenvectors.adjoint() * s.eigenvectors - id), 1e-12) << d;
  }
}

TEST(Eigensolver, AscendingAndDegenerate) {
  ComplexMatrix h = ComplexMatrix::Identity(4, 4);
  h(3, 3) = -2.0;
  const Spectrum s = hermitian_eig(h);
  EXPECT_DOUBLE_EQ(s.eigenvalues(0), -2.0);
  for (Index i = 1; i < 4; ++i) EXPECT_NEAR(s.eigenvalues(i), 1.0, 1e-15);
  EXPECT_LE(max_abs(s.reconstruct() - h), 1e-15);
}

TEST(Eigensolver, Deterministic) {
  Rng a(11);
  Rng b(11);
  const ComplexMatrix h1 = random_hermitian(6, a);
  const ComplexMatrix h2 = random_hermitian(6, b);
  const Spectrum s1 = hermitian_eig(h1);
  const Spectrum s2 = hermitian_eig(h2);
  EXPECT_EQ(s1.eigenvalues, s2.eigenvalues);
  EXPECT_EQ(s1.eigenvectors, s2.eigenvectors);
}

TEST(HermitianOperator, RejectsNonHermitian) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(HermitianOperator{m}, NonHermitianInput);
  EXPECT_THROW(HermitianOperator(ComplexMatrix::Zero(2, 3)), DimensionMismatch);
}

TEST(PositiveOperator, RejectsNegativeEigenvalue) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(1, 1) = -1e-3;
  EXPECT_THROW(PositiveOperator{m}, NegativeEigenvalue);
}

TEST(PositiveOperator, SupportAndRank) {
  Rng rng(5);
  const DensityMatrix rho = random_density(5, 2, rng);
  EXPECT_EQ(rho.rank(), 2);
  const ComplexMatrix& p = rho.support().projector;
  EXPECT_LE(max_abs(p * p - p), 1e-12);
  EXPECT_NEAR(p.trace().real(), 2.0, 1e-12);
  EXPECT_LE(max_abs(p * rho.matrix() - rho.matrix()), 1e-12);
}

TEST(MatrixFunctions, PowerOnSupportMatchesOracle) {
  Rng rng(7);
  const DensityMatrix rho = random_density(4, 3, rng);
  for (double p : {-1.0, -0.5, 0.5, 1.5, 2.0}) {
    EXPECT_LE(max_abs(matrix_power_on_support(rho, p) - oracle::power(rho.matrix(), p)), 1e-10) << p;
  }
  const ComplexMatrix inv = matrix_power_on_support(rho, -1.0);
  EXPECT_LE(max_abs(rho.matrix() * inv - rho.support().projector), 1e-10);
}

TEST(Tensor, PartialTraceOfProduct) {
  Rng rng(9);
  const DensityMatrix a = random_density(2, 2, rng);
  const DensityMatrix b = random_density(3, 3, rng);
  const ComplexMatrix ab = tensor(a.matrix(), b.matrix());
  EXPECT_LE(max_abs(ab - oracle::kron(a.matrix(), b.matrix())), 1e-15);
  EXPECT_LE(max_abs(partial_trace(ab, 2, 3, Subsystem::A) - a.matrix()), 1e-14);
  EXPECT_LE(max_abs(partial_trace(ab, 2, 3, Subsystem::B) - b.matrix()), 1e-14);
}

TEST(Tensor, PartialTraceMatchesIndexLoops) {
  Rng rng(10);
  const DensityMatrix rho = random_density(6, 6, rng);
  EXPECT_LE(max_abs(partial_trace(rho.matrix(), 2, 3, Subsystem::A) - oracle::trace_b(rho.matrix(), 2, 3)), 1e-14);
  EXPECT_LE(max_abs(partial_trace(rho.matrix(), 2, 3, Subsystem::B) - oracle::trace_a(rho.matrix(), 2, 3)), 1e-14);
}

TEST(Tensor, MultipartiteTrace) {
  Rng rng(12);
  const DensityMatrix rho = random_density(12, 5, rng);
  const std::array<Index, 3> dims{2, 3, 2};
  const std::array<Index, 2> keep_ab{0, 1};
  const std::array<Index, 1> keep_a{0};
  const ComplexMatrix ab = partial_trace(rho.matrix(), dims, keep_ab);
  EXPECT_LE(max_abs(ab - oracle::trace_b(rho.matrix(), 6, 2)), 1e-14);
  EXPECT_LE(max_abs(partial_trace(rho.matrix(), dims, keep_a) - oracle::trace_b(ab, 2, 3)), 1e-14);
  EXPECT_THROW(partial_trace(rho.matrix(), std::array<Index, 2>{2, 2}, keep_a), DimensionMismatch);
}

TEST(Tensor, SwapFactors) {
  Rng rng(13);
  const ComplexMatrix a = random_density(2, 2, rng).matrix();
  const ComplexMatrix b = random_density(3, 3, rng).matrix();
  EXPECT_LE(max_abs(swap_factors(tensor(a, b), 2, 3) - tensor(b, a)), 1e-15);
}

TEST(Norms, TraceNormAndFidelity) {
  Rng rng(14);
  const DensityMatrix rho = random_density(3, 3, rng);
  const DensityMatrix sigma = random_density(3, 2, rng);
  const ComplexMatrix diff = rho.matrix() - sigma.matrix();
  double ref = 0.0;
  for (double x : oracle::eigenvalues(diff)) ref += std::abs(x);
  EXPECT_NEAR(trace_norm(diff), ref, 1e-12);
  EXPECT_NEAR(fidelity(rho, sigma), oracle::fidelity(rho.matrix(), sigma.matrix()), 1e-10);
  EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-10);

  const PureState psi = random_pure(3, rng);
  const PureState phi = random_pure(3, rng);
  EXPECT_NEAR(fidelity(psi.density(), phi.density()), std::abs(psi.amplitudes().dot(phi.amplitudes())), 1e-10);
}

TEST(Random, SubstreamsAreIndependentOfOrder) {
  const Rng root(99);
  Rng a = root.substream(5);
  Rng b = root.substream(5);
  Rng c = root.substream(6);
  EXPECT_EQ(a(), b());
  EXPECT_NE(root.substream(5)(), c());
}

TEST(Random, UnitaryIsUnitary) {
  Rng rng(15);
  const ComplexMatrix u = random_unitary(5, rng);
  EXPECT_LE(max_abs(u.adjoint() * u - ComplexMatrix::Identity(5, 5)), 1e-13);
}
