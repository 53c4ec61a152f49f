#pragma once

#include <cstdint>
#include <string_view>

namespace gfopt {

/// Counter-based pseudorandom stream (splitmix64 with a per-stream gamma).
///
/// The t-th output is mix64(key + t * gamma) where key and gamma are pure
/// functions of (seed, stream_id); gamma is forced odd so every stream has
/// full period 2^64.  Because the state is just a counter, a stream can be
/// copied, replayed, and split into substreams with plain arithmetic, which
/// is what lets batch kernels fan out over workers and still produce the
/// same numbers in the same order.
///
/// A stream is consumed by exactly one caller at a time; concurrent code
/// must take disjoint substreams instead of sharing one.
class RngStream {
 public:
  RngStream() : RngStream(0, 0) {}
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Next raw 64-bit word.
  std::uint64_t next_u64();

  /// Uniform double in [0, 1), 53 random mantissa bits.
  double next_double();

  /// Uniform integer in {0, 1, ..., n-1}; unbiased via rejection.
  std::uint64_t next_below(std::uint64_t n);

  /// Standard normal deviate (Marsaglia polar method, pair cached).
  double next_gaussian();

  /// Child stream for the given index, independent of this stream and of
  /// siblings with other indices.  Does not consume from this stream.
  RngStream substream(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t key_;
  std::uint64_t gamma_;
  std::uint64_t counter_ = 0;
  double cached_gaussian_ = 0.0;
  bool has_cached_gaussian_ = false;
};

/// Derives the reproducible stream for (master_seed, purpose_label, index).
///
/// The label is hashed into the high 32 bits of the stream id and the index
/// occupies the low 32 bits, so within one label up to 2^32 derivations are
/// collision-free by construction.
RngStream derive_stream(std::uint64_t master_seed, std::string_view purpose_label,
                        std::uint64_t index);

}  // namespace gfopt
