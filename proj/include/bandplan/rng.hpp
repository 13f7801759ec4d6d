#pragma once
#include <cmath>
#include <cstdint>

#include "special_math.hpp"

namespace bandplan {

// Philox 4x32-10 counter generator: each 64-bit draw is a pure function of
// (seed, stream, index), so any draw can be produced on any thread in any
// order and a simulation stays bit-identical for every thread count.
class Philox {
 public:
  explicit Philox(std::uint64_t seed)
      : key0_(static_cast<std::uint32_t>(seed)), key1_(static_cast<std::uint32_t>(seed >> 32)) {}

  std::uint64_t bits64(std::uint64_t stream, std::uint64_t index) const {
    std::uint32_t c0 = static_cast<std::uint32_t>(index);
    std::uint32_t c1 = static_cast<std::uint32_t>(index >> 32);
    std::uint32_t c2 = static_cast<std::uint32_t>(stream);
    std::uint32_t c3 = static_cast<std::uint32_t>(stream >> 32);
    std::uint32_t k0 = key0_, k1 = key1_;
    for (int r = 0; r < 10; ++r) {
      round(c0, c1, c2, c3, k0, k1);
      k0 += 0x9E3779B9u;
      k1 += 0xBB67AE85u;
    }
    return (static_cast<std::uint64_t>(c0) << 32) | c1;
  }

 private:
  static void round(std::uint32_t& c0, std::uint32_t& c1, std::uint32_t& c2, std::uint32_t& c3,
                    std::uint32_t k0, std::uint32_t k1) {
    std::uint64_t p0 = 0xD2511F53ull * c0;
    std::uint64_t p1 = 0xCD9E8D57ull * c2;
    std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
    std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
    std::uint32_t n0 = hi1 ^ c1 ^ k0;
    std::uint32_t n1 = lo1;
    std::uint32_t n2 = hi0 ^ c3 ^ k1;
    std::uint32_t n3 = lo0;
    c0 = n0; c1 = n1; c2 = n2; c3 = n3;
  }

  std::uint32_t key0_, key1_;
};

// Stream ids keep independent random uses from ever sharing a counter.
namespace stream {
constexpr std::uint64_t placement   = 1;  // sensor distances at scenario setup
constexpr std::uint64_t queue_gap   = 2;  // queue arrival gaps, one substream per sensor
constexpr std::uint64_t trace_gap   = 3;  // activity-trace arrival gaps per sensor
constexpr std::uint64_t gain        = 4;  // fading gains in link-loss trials
constexpr std::uint64_t decode      = 5;  // decode coin flips in link-loss trials
constexpr std::uint64_t drop_pos    = 6;  // placement redraws in availability drops
constexpr std::uint64_t drop_shadow = 7;  // shadowing draws in availability drops

inline std::uint64_t sub(std::uint64_t kind, std::uint64_t entity) {
  return (kind << 56) | entity;
}
}  // namespace stream

// Uniform on the open interval (0, 1); both endpoints are unreachable.
inline double uniform_open(const Philox& g, std::uint64_t stream_id, std::uint64_t index) {
  return (static_cast<double>(g.bits64(stream_id, index) >> 11) + 0.5) * 0x1.0p-53;
}

inline double exponential_unit(const Philox& g, std::uint64_t stream_id, std::uint64_t index) {
  return -std::log1p(-uniform_open(g, stream_id, index));
}

// Standard normal through the tail-inverse; one uniform per draw.
inline double normal_unit(const Philox& g, std::uint64_t stream_id, std::uint64_t index) {
  double u = uniform_open(g, stream_id, index);
  if (u < 0.5) return -q_inverse(u);
  if (u > 0.5) return q_inverse(1.0 - u);
  return 0.0;
}

// Frames until the next success of a per-frame Bernoulli(p), support {1, 2, ...}.
// log1m_p is log1p(-p), precomputed once per sensor.
inline long long geometric_gap(const Philox& g, std::uint64_t stream_id, std::uint64_t index,
                               double log1m_p) {
  constexpr long long kNever = 1ll << 60;
  if (log1m_p == 0.0) return kNever;  // p == 0: no arrivals
  double u = uniform_open(g, stream_id, index);
  double gap = std::floor(std::log(u) / log1m_p);
  if (gap < 0.0) gap = 0.0;
  if (gap >= static_cast<double>(kNever)) return kNever;
  return 1 + static_cast<long long>(gap);
}

}  // namespace bandplan
