#include "srd/channels.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "srd/errors.hpp"

namespace srd {

namespace {

void check_input_dim(const QuantumChannel& ch, Index dim, const char* what) {
  if (dim != ch.dim_in()) {
    std::ostringstream os;
    os << what << ": channel expects dimension " << ch.dim_in() << ", got " << dim;
    throw DimensionMismatch(os.str());
  }
}

}  // namespace

QuantumChannel::QuantumChannel(std::vector<ComplexMatrix> kraus, double tp_tolerance)
    : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw InvalidArgument("a channel needs at least one Kraus operator");
  dim_out_ = kraus_.front().rows();
  dim_in_ = kraus_.front().cols();
  if (dim_in_ == 0 || dim_out_ == 0) throw DimensionMismatch("Kraus operators must be non-empty");
  ComplexMatrix sum = ComplexMatrix::Zero(dim_in_, dim_in_);
  for (const auto& k : kraus_) {
    if (k.rows() != dim_out_ || k.cols() != dim_in_) throw DimensionMismatch("Kraus operators have inconsistent shapes");
    sum += k.adjoint() * k;
  }
  const double dev = max_abs(sum - ComplexMatrix::Identity(dim_in_, dim_in_));
  if (dev > tp_tolerance) {
    std::ostringstream os;
    os << "Kraus operators are not trace preserving: max |sum K^dagger K - I| = " << dev;
    throw NotTracePreserving(os.str());
  }
}

ComplexMatrix QuantumChannel::apply(const ComplexMatrix& x) const {
  if (x.rows() != dim_in_ || x.cols() != dim_in_) {
    std::ostringstream os;
    os << "channel input must be " << dim_in_ << "x" << dim_in_ << ", got " << x.rows() << "x" << x.cols();
    throw DimensionMismatch(os.str());
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_out_, dim_out_);
  for (const auto& k : kraus_) out.noalias() += k * x * k.adjoint();
  return out;
}

ComplexMatrix QuantumChannel::adjoint(const ComplexMatrix& y) const {
  if (y.rows() != dim_out_ || y.cols() != dim_out_) {
    std::ostringstream os;
    os << "adjoint input must be " << dim_out_ << "x" << dim_out_ << ", got " << y.rows() << "x" << y.cols();
    throw DimensionMismatch(os.str());
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_in_, dim_in_);
  for (const auto& k : kraus_) out.noalias() += k.adjoint() * y * k;
  return out;
}

PositiveOperator apply(const QuantumChannel& channel, const PositiveOperator& rho) {
  check_input_dim(channel, rho.dim(), "apply");
  return PositiveOperator::from_hermitian_product(channel.apply(rho.matrix()));
}

DensityMatrix apply(const QuantumChannel& channel, const DensityMatrix& rho) {
  check_input_dim(channel, rho.dim(), "apply");
  return DensityMatrix(PositiveOperator::from_hermitian_product(channel.apply(rho.matrix())));
}

HermitianOperator apply_adjoint(const QuantumChannel& channel, const HermitianOperator& y) {
  return HermitianOperator::from_hermitian_product(channel.adjoint(y.matrix()));
}

QuantumChannel identity_channel(Index dim) { return QuantumChannel({ComplexMatrix::Identity(dim, dim)}); }

QuantumChannel unitary_channel(const ComplexMatrix& u) { return QuantumChannel({u}); }

QuantumChannel amplitude_damping(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("amplitude_damping: p must lie in [0, 1]");
  ComplexMatrix k0 = ComplexMatrix::Zero(2, 2);
  ComplexMatrix k1 = ComplexMatrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - p);
  k1(0, 1) = std::sqrt(p);
  return QuantumChannel({k0, k1});
}

QuantumChannel depolarizing(Index dim, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("depolarizing: p must lie in [0, 1]");
  std::vector<ComplexMatrix> kraus;
  if (p < 1.0) kraus.push_back(std::sqrt(1.0 - p) * ComplexMatrix::Identity(dim, dim));
  const double w = std::sqrt(p / static_cast<double>(dim));
  if (p > 0.0) {
    for (Index i = 0; i < dim; ++i) {
      for (Index j = 0; j < dim; ++j) {
        ComplexMatrix k = ComplexMatrix::Zero(dim, dim);
        k(i, j) = w;
        kraus.push_back(std::move(k));
      }
    }
  }
  return QuantumChannel(std::move(kraus));
}

QuantumChannel dephasing(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("dephasing: p must lie in [0, 1]");
  ComplexMatrix z = ComplexMatrix::Identity(2, 2);
  z(1, 1) = -1.0;
  return QuantumChannel({std::sqrt(1.0 - p) * ComplexMatrix::Identity(2, 2), std::sqrt(p) * z});
}

QuantumChannel extend_with_identity(const QuantumChannel& channel, Index dim) {
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(channel.kraus().size());
  const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
  for (const auto& k : channel.kraus()) kraus.push_back(tensor(k, id));
  return QuantumChannel(std::move(kraus));
}

QuantumChannel compose(const QuantumChannel& second, const QuantumChannel& first) {
  if (second.dim_in() != first.dim_out()) throw DimensionMismatch("compose: inner dimensions differ");
  std::vector<ComplexMatrix> kraus;
  for (const auto& b : second.kraus())
    for (const auto& a : first.kraus()) kraus.push_back(b * a);
  return QuantumChannel(std::move(kraus));
}

QuantumChannel partial_trace_channel(Index dim_a, Index dim_b, Subsystem keep) {
  if (dim_a <= 0 || dim_b <= 0) throw DimensionMismatch("partial_trace_channel: dimensions must be positive");
  std::vector<ComplexMatrix> kraus;
  if (keep == Subsystem::A) {
    for (Index b = 0; b < dim_b; ++b) {
      ComplexMatrix bra = ComplexMatrix::Zero(1, dim_b);
      bra(0, b) = 1.0;
      kraus.push_back(tensor(ComplexMatrix::Identity(dim_a, dim_a), bra));
    }
  } else {
    for (Index a = 0; a < dim_a; ++a) {
      ComplexMatrix bra = ComplexMatrix::Zero(1, dim_a);
      bra(0, a) = 1.0;
      kraus.push_back(tensor(bra, ComplexMatrix::Identity(dim_b, dim_b)));
    }
  }
  return QuantumChannel(std::move(kraus));
}

QuantumChannel pinching_channel(const std::vector<ComplexMatrix>& projectors) {
  if (projectors.empty()) throw IncompleteResolution("pinching_channel: no projectors given");
  const Index d = projectors.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& p : projectors) {
    if (p.rows() != d || p.cols() != d) throw DimensionMismatch("pinching_channel: projector shapes differ");
    if (max_abs(p * p - p) > 1e-9 || max_abs(p - p.adjoint()) > 1e-9)
      throw IncompleteResolution("pinching_channel: operator is not an orthogonal projector");
    sum += p;
  }
  if (max_abs(sum - ComplexMatrix::Identity(d, d)) > tol::kTracePreserving)
    throw IncompleteResolution("pinching_channel: projectors do not resolve the identity");
  return QuantumChannel(projectors);
}

QuantumChannel measurement_channel(const std::vector<PositiveOperator>& povm) {
  if (povm.empty()) throw IncompletePOVM("measurement_channel: empty POVM");
  const Index d = povm.front().dim();
  const Index outcomes = static_cast<Index>(povm.size());
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  std::vector<ComplexMatrix> kraus;
  for (Index x = 0; x < outcomes; ++x) {
    const PositiveOperator& m = povm[static_cast<std::size_t>(x)];
    if (m.dim() != d) throw DimensionMismatch("measurement_channel: POVM elements differ in dimension");
    sum += m.matrix();
    const Spectrum& s = m.spectrum();
    for (Index j = 0; j < d; ++j) {
      const double mu = s.eigenvalues(j);
      if (mu <= m.support().cutoff_used) continue;
      ComplexMatrix k = ComplexMatrix::Zero(outcomes, d);
      k.row(x) = std::sqrt(mu) * s.eigenvectors.col(j).adjoint();
      kraus.push_back(std::move(k));
    }
  }
  if (max_abs(sum - ComplexMatrix::Identity(d, d)) > tol::kTracePreserving)
    throw IncompletePOVM("measurement_channel: POVM elements do not sum to the identity");
  return QuantumChannel(std::move(kraus));
}

QuantumChannel random_channel(Index dim_in, Index dim_out, Index kraus_count, Rng& rng) {
  if (kraus_count < 1) throw InvalidArgument("random_channel: kraus_count must be >= 1");
  if (kraus_count * dim_out < dim_in)
    throw InvalidArgument("random_channel: kraus_count * dim_out must be >= dim_in for trace preservation");
  const ComplexMatrix g = gaussian_matrix(kraus_count * dim_out, dim_in, rng);
  const Spectrum gram = eig_of_product(g.adjoint() * g);
  const ComplexMatrix v = g * gram.apply([](double x) { return 1.0 / std::sqrt(x); });
  std::vector<ComplexMatrix> kraus;
  for (Index k = 0; k < kraus_count; ++k) kraus.push_back(v.block(k * dim_out, 0, dim_out, dim_in));
  return QuantumChannel(std::move(kraus));
}

QuantumChannel random_channel(Index dim_in, Index dim_out, Index kraus_count, std::uint64_t seed) {
  Rng rng(seed);
  return random_channel(dim_in, dim_out, kraus_count, rng);
}

ComplexMatrix StinespringDilation::apply(const ComplexMatrix& rho) const {
  const Index env = dim_in * dim_aux;
  const ComplexMatrix big = unitary * tensor(rho, ancilla.density().matrix()) * unitary.adjoint();
  return partial_trace(big, env, dim_out, Subsystem::B);
}

ComplexMatrix StinespringDilation::adjoint(const ComplexMatrix& omega) const {
  const Index env = dim_in * dim_aux;
  return isometry.adjoint() * tensor(ComplexMatrix::Identity(env, env), omega) * isometry;
}

StinespringDilation stinespring(const QuantumChannel& channel) {
  const Index d_in = channel.dim_in();
  const Index d_out = channel.dim_out();
  const Index n = static_cast<Index>(channel.kraus().size());
  const Index d_aux = (n + d_in - 1) / d_in;
  const Index anc = d_aux * d_out;
  const Index total = d_in * anc;

  ComplexMatrix v = ComplexMatrix::Zero(total, d_in);
  for (Index k = 0; k < n; ++k) v.block(k * d_out, 0, d_out, d_in) = channel.kraus()[static_cast<std::size_t>(k)];

  // Columns i * anc hold V|i>; the rest are filled by Gram-Schmidt.
  ComplexMatrix u = ComplexMatrix::Zero(total, total);
  std::vector<bool> filled(static_cast<std::size_t>(total), false);
  for (Index i = 0; i < d_in; ++i) {
    u.col(i * anc) = v.col(i);
    filled[static_cast<std::size_t>(i * anc)] = true;
  }
  Index candidate = 0;
  for (Index c = 0; c < total; ++c) {
    if (filled[static_cast<std::size_t>(c)]) continue;
    while (true) {
      if (candidate >= total) throw NumericalError("stinespring: unitary completion ran out of candidates");
      ComplexVector w = ComplexVector::Unit(total, candidate++);
      for (int pass = 0; pass < 2; ++pass) {
        for (Index j = 0; j < total; ++j) {
          if (!filled[static_cast<std::size_t>(j)]) continue;
          w -= u.col(j) * (u.col(j).adjoint() * w)(0);
        }
      }
      const double norm = w.norm();
      if (norm > 1e-6) {
        u.col(c) = w / norm;
        filled[static_cast<std::size_t>(c)] = true;
        break;
      }
    }
  }

  ComplexVector tau = ComplexVector::Zero(anc);
  tau(0) = 1.0;
  return StinespringDilation{d_in, d_aux, d_out, PureState(tau), std::move(u), std::move(v)};
}

HeisenbergWeylSet heisenberg_weyl(Index dim) {
  if (dim < 1) throw InvalidArgument("heisenberg_weyl: dimension must be >= 1");
  ComplexMatrix shift = ComplexMatrix::Zero(dim, dim);
  ComplexMatrix clock = ComplexMatrix::Zero(dim, dim);
  for (Index j = 0; j < dim; ++j) {
    shift((j + 1) % dim, j) = 1.0;
    clock(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(dim));
  }
  HeisenbergWeylSet set{dim, {}};
  ComplexMatrix xa = ComplexMatrix::Identity(dim, dim);
  for (Index a = 0; a < dim; ++a) {
    ComplexMatrix zb = ComplexMatrix::Identity(dim, dim);
    for (Index b = 0; b < dim; ++b) {
      set.operators.push_back(xa * zb);
      zb = zb * clock;
    }
    xa = xa * shift;
  }
  return set;
}

BipartiteState hw_twirl(const BipartiteState& rho) {
  const HeisenbergWeylSet hw = heisenberg_weyl(rho.dim_b());
  const ComplexMatrix id_a = ComplexMatrix::Identity(rho.dim_a(), rho.dim_a());
  ComplexMatrix avg = ComplexMatrix::Zero(rho.state().dim(), rho.state().dim());
  for (const auto& v : hw.operators) {
    const ComplexMatrix w = tensor(id_a, v);
    avg += w * rho.state().matrix() * w.adjoint();
  }
  avg /= static_cast<double>(hw.operators.size());
  return {DensityMatrix(PositiveOperator::from_hermitian_product(avg)), rho.dim_a(), rho.dim_b()};
}

}  // namespace srd
