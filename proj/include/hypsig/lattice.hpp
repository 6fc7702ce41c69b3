#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hypsig/minkowski.hpp"
#include "hypsig/sampling.hpp"

namespace hypsig {

// Normalization device making the non-compact Gibbs integral finite.
enum class GaugeFix {
  FixedSpinBoundary,  // every boundary site frozen to n-up
  FixedSiteInterior,  // only the center site frozen to n-up
  ExternalField,      // + epsilon sum_x (n0(x) - 1) in the action, no frozen sites
};

std::string to_string(GaugeFix g);
GaugeFix gauge_fix_from_string(const std::string& s);

struct LatticeSpec {
  std::vector<int> dims;  // extent per direction, d = dims.size() in 1..3
  GaugeFix gauge = GaugeFix::FixedSpinBoundary;
  double epsilon = 0.0;  // ExternalField strength
  int target_dim = 2;    // N

  static constexpr std::int64_t kMaxSites = std::int64_t(1) << 26;

  void validate() const;  // throws ConfigError
  int d() const { return static_cast<int>(dims.size()); }
  std::int64_t sites() const;

  int index(const int* coord) const;  // row-major
  void coord(int site, int* out) const;
  bool on_boundary(int site) const;
  int center_site() const;
  // up to 2d neighbor site indices (open boundaries); returns the count
  int neighbors(int site, int* out) const;
};

// Lattice configuration: one spin per site plus the frozen-site mask.
struct SpinField {
  LatticeSpec spec;
  std::vector<HPoint> spins;
  std::vector<std::uint8_t> frozen;

  // all spins at n-up, frozen mask from the gauge choice
  static SpinField cold_start(const LatticeSpec& spec);
  // free sites scattered with random_hpoint(spread)
  static SpinField random_start(const LatticeSpec& spec, double spread,
                                std::uint64_t seed);

  std::int64_t free_sites() const;
  // neighbor-spin sum plus the external-field source, the M of the
  // single-site conditional
  MVector local_field(int site) const;
};

// Sum of mdot over nearest-neighbor bonds (frozen spins participate).
double action(const SpinField& field);
// epsilon sum_x (n0(x) - 1); zero unless ExternalField gauge
double gauge_action(const SpinField& field);
double action_density(const SpinField& field);  // action / bonds
std::int64_t bond_count(const LatticeSpec& spec);

struct HeatBathKernel {};
struct MetropolisKernel {
  double scale = 0.5;
};
struct UpdateKernel {
  enum class Kind { HeatBath, Metropolis };
  Kind kind = Kind::HeatBath;
  double scale = 0.5;

  static UpdateKernel heat_bath() { return {Kind::HeatBath, 0.0}; }
  static UpdateKernel metropolis(double scale) {
    return {Kind::Metropolis, scale};
  }
};
std::string to_string(const UpdateKernel& k);

// One full checkerboard sweep: every non-frozen site resampled once from
// its conditional given the current neighbors, even sublattice first.  Each
// site draws from its own (seed, site, sweep_index) stream, so serial and
// checkerboard-parallel execution are bit-identical.
// Returns the number of accepted moves (= free sites for heat bath).
std::int64_t sweep(SpinField& field, double beta, const UpdateKernel& kernel,
                   std::uint64_t seed, std::uint32_t sweep_index,
                   int n_threads = 1);

}  // namespace hypsig
