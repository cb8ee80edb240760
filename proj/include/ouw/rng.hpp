#pragma once
#include <cmath>
#include <cstdint>

#include "ouw/types.hpp"

namespace ouw {

// salts keep the draw streams of unrelated consumers disjoint for one (master, stream) pair
inline constexpr std::uint64_t kSaltPath = 0x7061746800000001ULL;
inline constexpr std::uint64_t kSaltBridge = 0x6272646700000002ULL;
inline constexpr std::uint64_t kSaltRefine = 0x7265666e00000003ULL;
inline constexpr std::uint64_t kSaltExit = 0x6578697400000004ULL;

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// splitmix64 keyed by (master_seed, stream_id, salt); sequential, one instance per task
class Rng {
 public:
  explicit Rng(SeedSpec s, std::uint64_t salt = kSaltPath) {
    state_ = mix64(s.master_seed + 0x9e3779b97f4a7c15ULL);
    state_ = mix64(state_ ^ (s.stream_id + 0x632be59bd9b4e019ULL));
    state_ = mix64(state_ ^ (salt + 0x9e3779b97f4a7c15ULL));
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  // open (0,1): endpoints excluded so log() is always finite
  double uniform() { return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u = uniform(), v = uniform();
    double rad = std::sqrt(-2.0 * std::log(u)), ang = 2.0 * pi * v;
    spare_ = rad * std::sin(ang);
    have_spare_ = true;
    return rad * std::cos(ang);
  }

  // one complex increment; per-coordinate standard normal
  cplx gaussian_pair() {
    double a = gaussian(), b = gaussian();
    return {a, b};
  }

  double exponential() { return -std::log(uniform()); }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace ouw
