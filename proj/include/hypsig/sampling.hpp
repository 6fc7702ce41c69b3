#pragma once

#include "hypsig/lorentz.hpp"
#include "hypsig/minkowski.hpp"
#include "hypsig/rng.hpp"

namespace hypsig {

// Single-site conditional of the Gibbs measure: density on H_N proportional
// to exp(-beta mdot(n, M)) dOmega(n), with M the (future-timelike) sum of
// the neighboring spins, possibly plus an external-field term.
struct ConditionalTarget {
  MVector m_vector;
  double beta = 1.0;

  // sqrt(mdot(M, M)); throws InvariantError if M is not future-timelike,
  // ConfigError if beta <= 0.
  double validated_norm() const;
};

// Exact/rejection heat-bath draw from the conditional.  In the rest frame
// of M the radial law in u = cosh(rho) is
//   N  = 2:  density beta|M| exp(-beta|M| (u-1)) on [1, inf), inverse CDF
//   N >= 3:  density ~ (u^2-1)^{(N-2)/2} exp(-beta|M| u), two-Gamma
//            envelope rejection (see sample_radial_excess)
HPoint heatbath_sample(const ConditionalTarget& target, CounterRng& rng);

// Radial excess t = cosh(rho) - 1 for the conditional at a = beta|M|.
// attempts, if given, accumulates the number of envelope proposals.
double sample_radial_excess(int target_dim, double a, CounterRng& rng,
                            long* attempts = nullptr);

struct MetropolisResult {
  HPoint point;
  bool accepted = false;
};

// Geodesic random-walk proposal: uniform tangent direction at the current
// point, rapidity |Normal(0, scale)|; the construction is isotropic around
// the current point, so the proposal density is symmetric.
MetropolisResult metropolis_step(const HPoint& current,
                                 const ConditionalTarget& target, double scale,
                                 CounterRng& rng);

// min(1, exp(-beta (mdot(to,M) - mdot(from,M)))), exposed for balance tests
double metropolis_acceptance(const ConditionalTarget& target,
                             const HPoint& from, const HPoint& to);

}  // namespace hypsig
