#include "levymult/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace levymult {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void philox_round(std::uint32_t ctr[4], const std::uint32_t key[2]) {
  const std::uint64_t p0 = std::uint64_t(kPhiloxM0) * ctr[0];
  const std::uint64_t p1 = std::uint64_t(kPhiloxM1) * ctr[2];
  const std::uint32_t hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
  const std::uint32_t hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
  ctr[0] = hi1 ^ ctr[1] ^ key[0];
  ctr[1] = lo1;
  ctr[2] = hi0 ^ ctr[3] ^ key[1];
  ctr[3] = lo0;
}

// SplitMix64, used to whiten the (seed, stream) words into Philox keys.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream,
                       std::uint64_t substream) {
  std::uint64_t s = seed;
  const std::uint64_t k = splitmix64(s);
  key_[0] = std::uint32_t(k);
  key_[1] = std::uint32_t(k >> 32);
  std::uint64_t t = stream * 0x9E3779B97F4A7C15ull + substream;
  const std::uint64_t p = splitmix64(t) ^ stream ^ (substream << 1);
  prefix_[0] = std::uint32_t(p);
  prefix_[1] = std::uint32_t(p >> 32);
}

void CounterRng::refill() {
  std::uint32_t ctr[4] = {std::uint32_t(block_), std::uint32_t(block_ >> 32),
                          prefix_[0], prefix_[1]};
  std::uint32_t key[2] = {key_[0], key_[1]};
  for (int round = 0; round < 10; ++round) {
    philox_round(ctr, key);
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  out_[0] = ctr[0];
  out_[1] = ctr[1];
  out_[2] = ctr[2];
  out_[3] = ctr[3];
  avail_ = 4;
  ++block_;
}

std::uint64_t CounterRng::next_u64() {
  if (avail_ < 2) refill();
  const std::uint64_t hi = out_[avail_ - 1];
  const std::uint64_t lo = out_[avail_ - 2];
  avail_ -= 2;
  return (hi << 32) | lo;
}

double CounterRng::uniform() {
  return double(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::uniform_positive() { return 1.0 - uniform(); }

double CounterRng::exponential(double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("exponential rate must be > 0");
  return -std::log(uniform_positive()) / rate;
}

double CounterRng::standard_normal() {
  if (have_spare_normal_) {
    have_spare_normal_ = false;
    return spare_normal_;
  }
  // Marsaglia polar method.
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * factor;
  have_spare_normal_ = true;
  return u * factor;
}

std::size_t CounterRng::categorical(std::span<const double> cumulative) {
  if (cumulative.empty())
    throw std::invalid_argument("categorical table must be non-empty");
  const double total = cumulative.back();
  const double x = uniform() * total;
  std::size_t lo = 0, hi = cumulative.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (cumulative[mid] <= x)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace levymult
