#pragma once

// Seeded random source with a fully specified output sequence.
//
// std::mt19937_64 is bit-exact across standard libraries, but the standard
// distributions are not, so bounded integers and normals are derived here
// from raw 64-bit draws with fixed algorithms.

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace mpslab {

class Rng {
 public:
  /// Recorded in every output file that depends on a seed.
  static constexpr std::string_view kAlgorithm = "mt19937_64/rejection/box-muller/v1";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, bound) by rejection on the top of the 64-bit range.
  std::uint64_t uniform_below(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal via the Box-Muller transform (one draw per pair of uniforms).
  double normal();

  /// Partial Fisher-Yates: after the call, items[0..count) is a uniform draw
  /// without replacement, in draw order.
  template <class T>
  void partial_shuffle(std::span<T> items, std::size_t count) {
    for (std::size_t i = 0; i < count && i + 1 < items.size(); ++i) {
      const auto j = i + static_cast<std::size_t>(uniform_below(items.size() - i));
      using std::swap;
      swap(items[i], items[j]);
    }
  }

  template <class T>
  void shuffle(std::span<T> items) {
    partial_shuffle(items, items.size());
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mpslab
