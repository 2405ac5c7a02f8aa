#pragma once

#include <cstdint>
#include <limits>

#include "srd/linalg.hpp"

namespace srd {

/// Counter-based SplitMix64 stream. Output i of a stream is a pure function of
/// (key, i), so substreams derived from (seed, trial) are reproducible no
/// matter how trials are scheduled. Satisfies UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : key_(mix(seed ^ 0x6a09e667f3bcc909ULL)) {}

  /// Independent stream for `index` (e.g. a trial number).
  Rng substream(std::uint64_t index) const;

  result_type operator()();
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  double uniform();  // [0, 1)
  double normal();   // standard normal (Box-Muller)
  Complex complex_normal();

 private:
  struct Key {};
  Rng(std::uint64_t key, Key) : key_(key) {}
  static std::uint64_t mix(std::uint64_t z);

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// rows x cols matrix of independent standard complex Gaussians.
ComplexMatrix gaussian_matrix(Index rows, Index cols, Rng& rng);

/// Haar-distributed unitary (QR of a Gaussian matrix with phase correction).
ComplexMatrix random_unitary(Index dim, Rng& rng);

}  // namespace srd
