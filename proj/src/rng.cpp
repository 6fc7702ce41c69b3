#include "hypsig/rng.hpp"

#include <cmath>

namespace hypsig {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo,
                    std::uint32_t& hi) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  lo = static_cast<std::uint32_t>(p);
  hi = static_cast<std::uint32_t>(p >> 32);
}

inline void philox_round(std::array<std::uint32_t, 4>& c,
                         const std::array<std::uint32_t, 2>& k) {
  std::uint32_t lo0, hi0, lo1, hi1;
  mulhilo(kPhiloxM0, c[0], lo0, hi0);
  mulhilo(kPhiloxM1, c[2], lo1, hi1);
  c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) {
  for (int r = 0; r < 10; ++r) {
    philox_round(counter, key);
    if (r < 9) {
      key[0] += kPhiloxW0;
      key[1] += kPhiloxW1;
    }
  }
  return counter;
}

std::uint64_t CounterRng::next_u64() {
  if (block_used_ >= 2) {
    block_ = philox4x32({static_cast<std::uint32_t>(draw_),
                         static_cast<std::uint32_t>(draw_ >> 32), site_, sweep_},
                        key_);
    ++draw_;
    block_used_ = 0;
  }
  const int i = 2 * block_used_++;
  return static_cast<std::uint64_t>(block_[i]) |
         (static_cast<std::uint64_t>(block_[i + 1]) << 32);
}

double CounterRng::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
  const double t = 2.0 * M_PI * uniform01();
  cached_normal_ = r * std::sin(t);
  has_cached_normal_ = true;
  return r * std::cos(t);
}

double CounterRng::gamma(double shape) {
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / (3.0 * std::sqrt(d));
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform01();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

void CounterRng::unit_sphere(int n_space, double* dir) {
  for (;;) {
    double norm2 = 0.0;
    for (int i = 0; i < n_space; ++i) {
      dir[i] = normal();
      norm2 += dir[i] * dir[i];
    }
    if (norm2 > 1e-24) {
      const double inv = 1.0 / std::sqrt(norm2);
      for (int i = 0; i < n_space; ++i) dir[i] *= inv;
      return;
    }
  }
}

}  // namespace hypsig
