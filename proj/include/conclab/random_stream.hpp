#pragma once

#include <cstdint>
#include <limits>

namespace conclab {

/// Addresses an independent random sequence. Every draw is a pure function
/// of (seed, stream_id, index), so chunks of a stream can be generated by any
/// number of workers and still reproduce the same values.
struct SampleStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  SampleStream substream(std::uint64_t offset) const {
    return {seed, stream_id + offset};
  }
};

inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// SplitMix64 positioned at sample `index` of a stream. Satisfies
/// UniformRandomBitGenerator; successive calls walk the Weyl sequence.
class CounterEngine {
 public:
  using result_type = std::uint64_t;

  CounterEngine(const SampleStream& stream, std::uint64_t index)
      : state_(mix64(mix64(mix64(stream.seed) ^ (stream.stream_id + kGamma)) +
                     index * kIndexStride)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    state_ += kGamma;
    return mix64(state_);
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kIndexStride = 0xd1b54a32d192ed03ULL;
  std::uint64_t state_;
};

}  // namespace conclab
