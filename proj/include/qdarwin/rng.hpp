#pragma once

#include <complex>
#include <cstdint>

namespace qdarwin {

/// Counter-based pseudorandom stream.
///
/// Two streams constructed with the same (seed, stream_id) produce
/// bitwise-identical sequences regardless of thread count or evaluation
/// order. Parallel code hands each task its own stream, usually via
/// substream(task_index).
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Derives an independent child stream; deterministic in (this, index).
  RngStream substream(std::uint64_t index) const;

  std::uint64_t next_u64();

  /// Uniform in [0, 1).
  double next_double();

  /// Standard normal deviate (Box-Muller, second value cached).
  double next_normal();

  /// Re + i*Im with independent standard normal components.
  std::complex<double> next_complex_normal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t state_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace qdarwin
