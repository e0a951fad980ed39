#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace communext {

// splitmix64 finalizer. All randomness in the project goes through this so
// that outputs are identical across platforms and standard libraries.
inline uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Derives an independent stream seed from a base seed and a stream index.
inline uint64_t derive_seed(uint64_t seed, uint64_t stream) {
  return mix64(seed + 0x9E3779B97F4A7C15ull * (stream + 1));
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix64(state_);
  }

  // Unbiased uniform draw in [0, n). Lemire's multiply-then-reject method.
  uint64_t next_below(uint64_t n) {
    __uint128_t m = static_cast<__uint128_t>(next_u64()) * n;
    auto lo = static_cast<uint64_t>(m);
    if (lo < n) {
      uint64_t t = (0 - n) % n;
      while (lo < t) {
        m = static_cast<__uint128_t>(next_u64()) * n;
        lo = static_cast<uint64_t>(m);
      }
    }
    return static_cast<uint64_t>(m >> 64);
  }

  // Uniform double in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Standard normal via Box-Muller; draws two uniforms per call.
  double next_normal() {
    double u1 = 1.0 - next_double();  // (0, 1]
    double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  uint64_t state_;
};

// Counter-based standard normal: independent of evaluation order, so
// per-pixel draws stay deterministic under any parallel schedule.
inline double gaussian_at(uint64_t seed, uint64_t index) {
  Rng rng(derive_seed(seed, index));
  return rng.next_normal();
}

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (size_t i = v.size(); i > 1; --i) {
    size_t j = static_cast<size_t>(rng.next_below(i));
    std::swap(v[i - 1], v[j]);
  }
}

// Draws n distinct elements from `pool` (partial Fisher-Yates, in draw order).
template <typename T>
std::vector<T> draw_without_replacement(std::vector<T> pool, size_t n, Rng& rng) {
  for (size_t i = 0; i < n && i < pool.size(); ++i) {
    size_t j = i + static_cast<size_t>(rng.next_below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(n < pool.size() ? n : pool.size());
  return pool;
}

}  // namespace communext
