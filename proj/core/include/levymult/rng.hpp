#pragma once

#include <cstdint>
#include <span>

namespace levymult {

/// Counter-based random stream (Philox4x32-10).
///
/// Streams are keyed by (seed, stream, substream); draws within a stream are
/// indexed by a 64-bit counter. Any (key, counter) pair maps to the same bits
/// on every platform and thread schedule, so Monte Carlo paths keyed by path
/// index are reproducible and parallelizable.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream = 0,
             std::uint64_t substream = 0);

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  /// Uniform on (0, 1], safe as a log argument.
  double uniform_positive();

  double exponential(double rate);

  double standard_normal();

  /// Index into a cumulative mass table (strictly increasing, last = total).
  std::size_t categorical(std::span<const double> cumulative);

 private:
  void refill();

  std::uint32_t key_[2];
  std::uint32_t prefix_[2];  // stream/substream tag in the counter block
  std::uint64_t block_ = 0;
  std::uint32_t out_[4];
  int avail_ = 0;
  bool have_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace levymult
