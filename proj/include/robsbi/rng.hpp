#pragma once

#include <array>
#include <cstdint>

namespace robsbi {

/// Reproducible random stream keyed by (seed, stream_id).
///
/// Two streams constructed with the same key produce the same draw sequence;
/// streams with distinct stream_ids are statistically independent. Children
/// derived via substream() depend only on the parent's key, never on how many
/// draws the parent has produced, so parallel code can hand out substreams
/// by index and stay deterministic regardless of scheduling.
///
/// The core generator is xoshiro256** with SplitMix64 state initialisation;
/// instantiating a stream is cheap, which matters because simulation loops
/// key one stream per draw. Uniforms come from the top 53 bits, normals from
/// the Marsaglia polar method, so sequences are identical across platforms.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Child stream with an independent key; pure function of (key, child_id).
  RngStream substream(std::uint64_t child_id) const;

  std::uint64_t next_u64();

  /// Uniform on (0,1).
  double uniform();
  /// Uniform on (lo,hi).
  double uniform(double lo, double hi);
  /// Standard normal (Marsaglia polar, second variate cached).
  double normal();
  /// Exponential with given rate.
  double exponential(double rate);
  /// Laplace with location and scale.
  double laplace(double location, double scale);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::array<std::uint64_t, 4> state_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace robsbi
