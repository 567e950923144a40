#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace rfblt {

/// Counter-based random stream.
///
/// Output k of a stream is a pure function of (key, k), so a stream can be
/// re-created anywhere from its key alone. Child streams are derived by
/// hashing the parent key with a tag; sibling children never share a key
/// except by 64-bit hash collision.
///
/// Satisfies std::uniform_random_bit_generator, so the standard
/// distributions can draw from it directly.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed) noexcept;

  /// Independent stream for the given tag. Does not advance this stream.
  RngStream child(std::uint64_t tag) const noexcept;
  RngStream child(std::initializer_list<std::uint64_t> path) const noexcept;

  result_type operator()() noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept;

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t position() const noexcept { return counter_; }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

 private:
  RngStream(std::uint64_t key, std::uint64_t counter) noexcept : key_(key), counter_(counter) {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Stream tags used by the forecasting pipeline. Each consumer draws from its
/// own child of the run seed, so changing one stage's draw count leaves the
/// others untouched.
namespace streams {
inline constexpr std::uint64_t kFeatureMap = 1;
inline constexpr std::uint64_t kGibbs = 2;
inline constexpr std::uint64_t kPredictive = 3;
inline constexpr std::uint64_t kNoise = 4;
}  // namespace streams

}  // namespace rfblt
