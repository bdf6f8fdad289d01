#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

namespace gwve {

// Philox4x32-10 counter-based generator.
//
// Streams are keyed by (seed, stream): every (replica, experiment) pair owns
// an independent stream that depends only on those two integers, never on
// which worker thread runs it or how many replicas ran before.  This is what
// makes reports byte-identical across worker counts.
class Philox {
 public:
  using result_type = std::uint64_t;

  Philox() : Philox(0, 0) {}
  Philox(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<std::uint64_t>::max(); }

  result_type operator()();

  // Uniform on [0, 1) with 53 random bits.
  double uniform();

  // Uniform on {0, 1, ..., bound-1}; bound >= 1.  Unbiased (rejection).
  std::uint64_t uniform_below(std::uint64_t bound);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> block_;
  int block_pos_;  // next unread 32-bit word in block_, 4 = exhausted
};

// 64-bit avalanche mix (splitmix64 finalizer); used to derive stream keys
// and the deterministic per-generation draws of parametric environments.
std::uint64_t mix64(std::uint64_t x);

// k distinct values drawn uniformly from {0, ..., population-1} (Floyd's
// algorithm), returned sorted.
std::vector<int> uniform_distinct(int population, int k, Philox& rng);

}  // namespace gwve
