#pragma once

#include <span>
#include <string>
#include <vector>

#include "hypsig/lattice.hpp"

namespace hypsig {

// so(1,N) generator as an ambient matrix: boosts first (planes (0,i),
// i = 1..N), then the compact rotations (i,j), 1 <= i < j <= N, in
// lexicographic order.  X_a acts on a spin as n -> G_a n, and on functions
// of mdot values by the analytic directional derivative; no finite
// differences anywhere.
struct Generator {
  std::array<double, kMaxAmbient * kMaxAmbient> m{};
  int n = 2;
  bool compact = false;  // true for the K (rotation) generators
  std::string name;

  MVector apply(const MVector& v) const;
};

int generator_count(int target_dim);  // N(N+1)/2
Generator generator_basis(int target_dim, int index);

// Probes registered for Ward checks: polynomials in mdot values, closed
// under the Killing action.
enum class WardProbe {
  One,            // F = 1
  CenterTime,     // F = mdot(n(c), n-up), K-even
  CenterSpatial,  // F = mdot(n(c), w1hat), K-odd (w1hat = (0,1,0,...))
  CenterBond,     // F = mdot(n(c), n(c')) with c' = c + e1
};
std::string to_string(WardProbe p);
const std::vector<WardProbe>& registered_probes();

double probe_value(const SpinField& field, WardProbe probe);
// sum over free sites of X_a F
double probe_killing_sum(const SpinField& field, WardProbe probe,
                         const Generator& g);
// sum over free sites of X_a S_total (bond action + external-field term)
double action_killing_sum(const SpinField& field, const Generator& g);

// Ward residual <sum_x X_a F> - beta <F sum_x X_a S> from recorded
// per-measurement series, with autocorrelation-aware jackknife error.
struct WardEstimate {
  double residual = 0.0;
  double sigma = 0.0;
  double lhs = 0.0;  // <sum X_a F>
  double rhs = 0.0;  // beta <F sum X_a S>
};
WardEstimate ward_residual(std::span<const double> xf_series,
                           std::span<const double> f_series,
                           std::span<const double> xs_series, double beta);

}  // namespace hypsig
