#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <span>

#include "diffest/common.hpp"

namespace diffest {

/// Philox4x32-10 counter-based generator. A block cipher over a 128-bit
/// counter and 64-bit key; any (counter, key) pair can be evaluated in O(1),
/// which makes per-particle, per-substep noise streams trivially parallel and
/// exactly replayable.
namespace philox {

inline constexpr std::uint32_t kMult0 = 0xD2511F53u;
inline constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
inline constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                          std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMult0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMult1) * ctr[2];
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

}  // namespace philox

/// splitmix64 finalizer; used to derive child seeds from a master seed.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Deterministic seed chain: folding in values one at a time means appending
/// a new axis value never changes seeds already derived.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix64(master);
  for (std::uint64_t v : path) h = mix64(h ^ v);
  return h;
}

/// Stream purposes keep draws for different uses statistically independent
/// even when they share (seed, stream id).
enum class RngPurpose : std::uint32_t {
  initial_positions = 1,
  brownian = 2,
  generic = 3,
};

namespace detail {

inline std::array<std::uint32_t, 4> stream_block(std::uint64_t seed, std::uint32_t stream,
                                                 RngPurpose purpose, std::uint64_t block_index) {
  const std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(block_index),
      static_cast<std::uint32_t>(block_index >> 32),
      stream,
      static_cast<std::uint32_t>(purpose),
  };
  const std::array<std::uint32_t, 2> key = {
      static_cast<std::uint32_t>(seed),
      static_cast<std::uint32_t>(seed >> 32),
  };
  return philox::block(ctr, key);
}

inline double u01_from(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Two standard normals from one Philox block via Box-Muller.
inline std::array<double, 2> normal_pair_at(std::uint64_t seed, std::uint32_t stream,
                                            RngPurpose purpose, std::uint64_t block_index) {
  const auto words = detail::stream_block(seed, stream, purpose, block_index);
  const double u1 = 1.0 - detail::u01_from(words[0], words[1]);  // in (0, 1]
  const double u2 = detail::u01_from(words[2], words[3]);
  const double r = std::sqrt(-2.0 * std::log(u1));
  return {r * std::cos(2.0 * kPi * u2), r * std::sin(2.0 * kPi * u2)};
}

/// Fills `out` with standard normals drawn from consecutive blocks starting
/// at `first_block`. Consumes ceil(out.size()/2) blocks regardless of parity.
inline void fill_normals_at(std::uint64_t seed, std::uint32_t stream, RngPurpose purpose,
                            std::uint64_t first_block, std::span<double> out) {
  std::size_t i = 0;
  std::uint64_t blk = first_block;
  while (i < out.size()) {
    const auto pair = normal_pair_at(seed, stream, purpose, blk++);
    out[i++] = pair[0];
    if (i < out.size()) out[i++] = pair[1];
  }
}

/// Sequential view of one stream, for variable-draw-count uses such as
/// rejection sampling. Walks blocks in order; still replayable from scratch.
class SequentialRng {
 public:
  SequentialRng(std::uint64_t seed, std::uint32_t stream, RngPurpose purpose)
      : seed_(seed), stream_(stream), purpose_(purpose) {}

  double uniform01() {
    refill_if_needed();
    return detail::u01_from(words_[word_pos_], words_[word_pos_ + 1]);
  }

  double normal() {
    if (have_cached_normal_) {
      have_cached_normal_ = false;
      return cached_normal_;
    }
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    cached_normal_ = r * std::sin(2.0 * kPi * u2);
    have_cached_normal_ = true;
    return r * std::cos(2.0 * kPi * u2);
  }

  /// Uniform draw from the radius-R ball in R^d by rejection from the cube.
  void uniform_ball(int d, double radius, std::span<double> out) {
    while (true) {
      double r2 = 0.0;
      for (int c = 0; c < d; ++c) {
        out[c] = 2.0 * uniform01() - 1.0;
        r2 += out[c] * out[c];
      }
      if (r2 <= 1.0) break;
    }
    for (int c = 0; c < d; ++c) out[c] *= radius;
  }

 private:
  void refill_if_needed() {
    word_pos_ += 2;
    if (word_pos_ >= 4) {
      words_ = detail::stream_block(seed_, stream_, purpose_, next_block_++);
      word_pos_ = 0;
    }
  }

  std::uint64_t seed_;
  std::uint32_t stream_;
  RngPurpose purpose_;
  std::uint64_t next_block_ = 0;
  std::array<std::uint32_t, 4> words_{};
  int word_pos_ = 4;  // forces refill on first draw
  bool have_cached_normal_ = false;
  double cached_normal_ = 0.0;
};

}  // namespace diffest
