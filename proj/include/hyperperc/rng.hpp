#pragma once

// Counter-based random streams (Philox4x32-10). A stream is a key; every
// draw is a pure function of (key, lane, counter), so replicas can be
// generated in any order or in parallel with identical results.

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace hyperperc::rng {

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// FNV-1a, used to turn experiment names into ids.
constexpr std::uint64_t experiment_id(std::string_view name) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ull;
  }
  return h;
}

/// Key for replica `index` of experiment `experiment` under `master`.
constexpr std::uint64_t derive_key(std::uint64_t master, std::uint64_t experiment, std::uint64_t index) {
  return mix64(mix64(mix64(master) ^ experiment) + index);
}

class Stream {
 public:
  using result_type = std::uint64_t;

  explicit Stream(std::uint64_t key, std::uint64_t lane = 0) : key_(key), lane_(lane) {}

  std::uint64_t bits_at(std::uint64_t counter) const;
  /// Uniform in [0, 1) with 53 random bits.
  double uniform_at(std::uint64_t counter) const { return static_cast<double>(bits_at(counter) >> 11) * 0x1.0p-53; }

  /// Independent stream sharing the key, e.g. one lane per purpose.
  Stream lane(std::uint64_t lane) const { return Stream(key_, lane); }

  std::uint64_t next() { return bits_at(position_++); }
  double next_uniform() { return uniform_at(position_++); }
  /// Uniform in (0, 1).
  double next_open_uniform();

  // UniformRandomBitGenerator
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next(); }

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t lane_;
  std::uint64_t position_ = 0;
};

}  // namespace hyperperc::rng
