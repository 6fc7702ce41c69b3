#pragma once

#include "hypsig/conical.hpp"
#include "hypsig/lorentz.hpp"

namespace hypsig {

// Rotation-invariant radial part of -Laplace on H_N,
//   -(sinh r)^{1-N} d/dr (sinh r)^{N-1} d/dr,
// symmetrized by u = (sinh r)^{(N-1)/2} psi into
//   -u'' + V(r) u,  V = mu^2 + mu(mu-1)/sinh^2(r),  mu = (N-1)/2,
// discretized with second-order central differences and Dirichlet walls at
// r = 0 and r = rho_max.  The lowest eigenvalue converges to the spectral
// bottom (N-1)^2/4 from above as rho_max grows.
struct RadialOperator {
  int target_dim = 2;
  double rho_max = 40.0;
  int n_nodes = 4000;  // interior nodes j h, h = rho_max / (n_nodes + 1)

  static RadialOperator make(int target_dim, double rho_max = 40.0,
                             int n_nodes = 4000);

  double spacing() const { return rho_max / (n_nodes + 1); }
  double potential(double rho) const;
  double gap_target() const {
    return 0.25 * (target_dim - 1) * (target_dim - 1);
  }
};

// Smallest eigenvalue of the symmetric tridiagonal discretization, found by
// Sturm-sequence bisection.  Throws NumericalError if the bracket fails.
double lowest_eigenvalue(const RadialOperator& op);

// Bounded zero mode of -Lap - (N-1)^2/4 as a function of x = mdot(n, center):
//   (x^2-1)^{(2-N)/4} P^{1-N/2}_{-1/2}(x).
// For N = 2 this is the conical function itself; for N >= 3 the measure
// prefactor is required for the eigenfunction property (N = 3 reduces to
// rho / sinh(rho) up to normalization).
double radial_zero_mode(const ConicalEvaluator& ev, double x);

// Max relative residual of (-Lap psi - gap * psi) over interior nodes for
// the generalized ground state psi(n) = radial_zero_mode(mdot(g n, n-up)),
// sampled along a radial line through the center point g^{-1} n-up and
// differentiated with the second-order radial stencil.
double ground_state_residual(const ConicalEvaluator& ev, int target_dim,
                             const LorentzTransform& probe_g,
                             double rho_max = 10.0, int n_nodes = 500);

}  // namespace hypsig
