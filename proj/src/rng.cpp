#include "gfopt/rng.hpp"

#include <cmath>

namespace gfopt {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

// Finalizer from Vigna's splitmix64 reference implementation.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  key_ = mix64(seed ^ mix64(stream_id ^ kGolden));
  gamma_ = mix64(stream_id + kGolden * (seed ^ 0x5851f42d4c957f2dull)) | 1ull;
}

std::uint64_t RngStream::next_u64() {
  counter_ += 1;
  return mix64(key_ + counter_ * gamma_);
}

double RngStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::next_below(std::uint64_t n) {
  // Lemire-style rejection would be fine too; plain modulo rejection keeps
  // the arithmetic obvious.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
  std::uint64_t x = next_u64();
  while (x > limit) x = next_u64();
  return x % n;
}

double RngStream::next_gaussian() {
  if (has_cached_gaussian_) {
    has_cached_gaussian_ = false;
    return cached_gaussian_;
  }
  double u, v, s;
  do {
    u = 2.0 * next_double() - 1.0;
    v = 2.0 * next_double() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double m = std::sqrt(-2.0 * std::log(s) / s);
  cached_gaussian_ = v * m;
  has_cached_gaussian_ = true;
  return u * m;
}

RngStream RngStream::substream(std::uint64_t index) const {
  return RngStream(seed_, mix64(stream_id_ ^ (kGolden * (index + 0x632be59bd9b4e019ull))));
}

RngStream derive_stream(std::uint64_t master_seed, std::string_view purpose_label,
                        std::uint64_t index) {
  const std::uint64_t label_bits = mix64(fnv1a64(purpose_label)) & 0xffffffff00000000ull;
  const std::uint64_t stream_id = label_bits | (index & 0xffffffffull);
  return RngStream(master_seed, stream_id);
}

}  // namespace gfopt
