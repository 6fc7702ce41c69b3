#include "hypsig/radial.hpp"

#include <cmath>
#include <vector>

#include "hypsig/errors.hpp"

namespace hypsig {

RadialOperator RadialOperator::make(int target_dim, double rho_max,
                                    int n_nodes) {
  if (target_dim < 2 || target_dim > 8)
    throw ConfigError("RadialOperator: target dimension must be in 2..8");
  if (!(rho_max > 0.0) || n_nodes < 16)
    throw ConfigError("RadialOperator: need rho_max > 0, n_nodes >= 16");
  return RadialOperator{target_dim, rho_max, n_nodes};
}

double RadialOperator::potential(double rho) const {
  const double mu = 0.5 * (target_dim - 1);
  const double s = std::sinh(rho);
  return mu * mu + mu * (mu - 1.0) / (s * s);
}

namespace {

// eigenvalue count below lambda via the Sturm sequence of T - lambda I
int sturm_count(const std::vector<double>& diag, double off2, double lambda) {
  int count = 0;
  double d = diag[0] - lambda;
  if (d < 0.0) ++count;
  for (std::size_t k = 1; k < diag.size(); ++k) {
    if (d == 0.0) d = 1e-300;
    d = (diag[k] - lambda) - off2 / d;
    if (d < 0.0) ++count;
  }
  return count;
}

}  // namespace

double lowest_eigenvalue(const RadialOperator& op) {
  const double h = op.spacing();
  const double inv_h2 = 1.0 / (h * h);
  std::vector<double> diag(op.n_nodes);
  for (int j = 0; j < op.n_nodes; ++j)
    diag[j] = 2.0 * inv_h2 + op.potential((j + 1) * h);
  const double off2 = inv_h2 * inv_h2;

  double lo = -1.0;
  double hi = op.gap_target() + 10.0;
  // widen until the bracket certainly contains the smallest eigenvalue
  int guard = 0;
  while (sturm_count(diag, off2, hi) < 1) {
    hi *= 2.0;
    if (++guard > 60)
      throw NumericalError("lowest_eigenvalue: bisection bracket failed");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sturm_count(diag, off2, mid) >= 1)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

double radial_zero_mode(const ConicalEvaluator& ev, double x) {
  const int N = ev.target_dim();
  if (N == 2) return ev.eval(x);
  if (x == 1.0) {
    // limit 2^{1-N/2} / Gamma(N/2)
    return std::pow(2.0, 1.0 - 0.5 * N) / std::tgamma(0.5 * N);
  }
  const double sinh2 = (x - 1.0) * (x + 1.0);
  return std::pow(sinh2, 0.25 * (2.0 - N)) * ev.eval(x);
}

double ground_state_residual(const ConicalEvaluator& ev, int target_dim,
                             const LorentzTransform& probe_g,
                             double rho_max, int n_nodes) {
  if (ev.target_dim() != target_dim)
    throw ConfigError("ground_state_residual: evaluator dimension mismatch");
  const double h = rho_max / n_nodes;
  const HPoint origin = HPoint::origin(target_dim);
  // center of the generalized ground state: the point g maps to n-up
  const HPoint center = probe_g.minkowski_inverse().apply(origin);
  const LorentzTransform frame = section(center);

  // psi sampled along a radial geodesic through the center; the points are
  // on the hyperboloid by construction and must not be renormalized here:
  // the cosh^2 - sinh^2 cancellation in the norm is pure noise at large rho
  // and the second-difference stencil amplifies it by 1/h^2
  std::vector<double> psi(n_nodes + 1);
  for (int j = 0; j <= n_nodes; ++j) {
    const double rho = j * h;
    MVector p(target_dim);
    p.c[0] = std::cosh(rho);
    p.c[1] = std::sinh(rho);
    const MVector n = probe_g.apply(frame.apply(p));
    psi[j] = radial_zero_mode(ev, std::max(1.0, mdot(n, origin.v)));
  }

  const double lambda = 0.25 * (target_dim - 1) * (target_dim - 1);
  const double nm1 = target_dim - 1.0;
  double worst = 0.0;
  for (int j = 1; j < n_nodes; ++j) {
    const double rho = j * h;
    const double d2 = (psi[j + 1] - 2.0 * psi[j] + psi[j - 1]) / (h * h);
    const double d1 = (psi[j + 1] - psi[j - 1]) / (2.0 * h);
    const double lap = -(d2 + nm1 / std::tanh(rho) * d1);
    const double rel = std::abs(lap - lambda * psi[j]) /
                       (lambda * std::max(std::abs(psi[j]), 1e-300));
    worst = std::max(worst, rel);
  }
  return worst;
}

}  // namespace hypsig
