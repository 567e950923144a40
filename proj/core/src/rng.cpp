#include "rfblt/rng.hpp"

namespace rfblt {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed) noexcept : key_(mix64(seed + kGolden)) {}

RngStream RngStream::child(std::uint64_t tag) const noexcept {
  // Second mix decorrelates children whose tags differ in a few bits.
  return RngStream(mix64(key_ ^ mix64(tag * kGolden + 0x632be59bd9b4e019ULL)), 0);
}

RngStream RngStream::child(std::initializer_list<std::uint64_t> path) const noexcept {
  RngStream out = *this;
  for (auto tag : path) out = out.child(tag);
  return out;
}

RngStream::result_type RngStream::operator()() noexcept {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double RngStream::uniform() noexcept {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

}  // namespace rfblt
