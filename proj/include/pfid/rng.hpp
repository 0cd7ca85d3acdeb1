#pragma once

#include <cstdint>

#include "pfid/linalg.hpp"

namespace pfid {

/// Counter-based generator "splitmix64/v1".
///
/// Output i is a pure function of (seed, i), so a trial's stream depends only
/// on its derived seed and never on scheduling order.
class CounterRng {
 public:
  static constexpr const char* kName = "splitmix64/v1";

  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer in [lo, hi].
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);
  /// Standard normal via Box-Muller.
  double normal();
  /// Complex normal with E|z|^2 = 1.
  Complex complex_normal();

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t mix64(std::uint64_t x);

/// Per-trial seed: hash(master_seed, stream, index).
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index, std::uint64_t stream = 0);

/// d x d matrix of iid complex standard normals.
ComplexMatrix ginibre(std::size_t dim, CounterRng& rng);

}  // namespace pfid
