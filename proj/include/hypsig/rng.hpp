#pragma once

#include <array>
#include <cstdint>

namespace hypsig {

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
// One block of four 32-bit words per (key, counter) pair; stateless apart
// from the counter, so streams indexed by (seed, site, sweep) are
// reproducible bit-for-bit on any platform and safe to draw in parallel.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// Stream view of the Philox generator for one (seed, site, sweep) triple.
// counter = (draw_lo, draw_hi, site, sweep), key = seed.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint32_t site, std::uint32_t sweep)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        site_(site), sweep_(sweep) {}

  std::uint64_t next_u64();

  // uniform on [0, 1)
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  // uniform on (0, 1], safe as log() argument
  double uniform_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }
  // standard normal, Box-Muller (second value cached)
  double normal();
  // Gamma(shape, 1) for shape >= 1, Marsaglia-Tsang squeeze
  double gamma(double shape);
  // uniform direction on S^{n_space-1}, written to dir[0..n_space-1]
  void unit_sphere(int n_space, double* dir);

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint32_t site_, sweep_;
  std::uint64_t draw_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int block_used_ = 2;  // u64s consumed from block_
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace hypsig
