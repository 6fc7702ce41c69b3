#include "hypsig/minkowski.hpp"

#include <cmath>

#include "hypsig/errors.hpp"

namespace hypsig {

HPoint HPoint::origin(int target_dim) {
  HPoint p;
  p.v = MVector(target_dim);
  p.v.c[0] = 1.0;
  return p;
}

HPoint project_to_hyperboloid(const MVector& v) {
  const double q = mdot(v, v);
  if (!(q > 0.0) || !(v.c[0] > 0.0))
    throw InvariantError("project_to_hyperboloid: vector not future-timelike");
  HPoint p;
  p.v = v;
  p.v *= 1.0 / std::sqrt(q);
  return p;
}

bool is_unit_timelike(const MVector& v, double tol) {
  // the c0^2 factor is the double-precision representation floor of the
  // cosh^2 - sinh^2 cancellation at large radius; at desk radii it is 1
  const double scale = std::max(1.0, v.c[0] * v.c[0]);
  return std::abs(mdot(v, v) - 1.0) <= tol * scale && v.c[0] >= 1.0 - tol;
}

SpacelikeAxis SpacelikeAxis::with_rapidity(int target_dim, double alpha) {
  SpacelikeAxis e;
  e.alpha = alpha;
  e.v = MVector(target_dim);
  e.v.c[0] = std::sinh(alpha);
  e.v.c[1] = std::cosh(alpha);
  return e;
}

double geodesic_distance(const HPoint& a, const HPoint& b) {
  const double x = mdot(a, b);
  if (x < 1.0 - 1e-7)
    throw InvariantError("geodesic_distance: mdot < 1, inputs off hyperboloid");
  if (x <= 1.0) return 0.0;
  return acosh1p(x - 1.0);
}

HPoint random_hpoint(int target_dim, double spread, CounterRng& rng) {
  if (spread < 0.0) throw ConfigError("random_hpoint: spread must be >= 0");
  HPoint p = HPoint::origin(target_dim);
  if (spread == 0.0) return p;
  const double rho = std::abs(rng.normal()) * spread;
  double dir[kMaxTargetDim];
  rng.unit_sphere(target_dim, dir);
  p.v.c[0] = std::cosh(rho);
  const double s = std::sinh(rho);
  for (int i = 0; i < target_dim; ++i) p.v.c[i + 1] = s * dir[i];
  return p;
}

}  // namespace hypsig
