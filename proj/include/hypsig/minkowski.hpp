#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "hypsig/rng.hpp"

namespace hypsig {

// Target-space dimension N is a runtime parameter, 2 <= N <= 8; ambient
// Minkowski vectors have N+1 components and fit on the stack.
inline constexpr int kMinTargetDim = 2;
inline constexpr int kMaxTargetDim = 8;
inline constexpr int kMaxAmbient = kMaxTargetDim + 1;

// Ambient Minkowski vector (c0, c1, ..., cN) with signature (+,-,...,-).
struct MVector {
  std::array<double, kMaxAmbient> c{};
  int n = 2;  // target dimension N

  MVector() = default;
  explicit MVector(int target_dim) : n(target_dim) {}

  int ambient() const { return n + 1; }
  double operator[](int i) const { return c[i]; }
  double& operator[](int i) { return c[i]; }

  MVector& operator+=(const MVector& o) {
    for (int i = 0; i <= n; ++i) c[i] += o.c[i];
    return *this;
  }
  MVector& operator-=(const MVector& o) {
    for (int i = 0; i <= n; ++i) c[i] -= o.c[i];
    return *this;
  }
  MVector& operator*=(double s) {
    for (int i = 0; i <= n; ++i) c[i] *= s;
    return *this;
  }
  friend MVector operator+(MVector a, const MVector& b) { return a += b; }
  friend MVector operator-(MVector a, const MVector& b) { return a -= b; }
  friend MVector operator*(double s, MVector a) { return a *= s; }
};

// n . n' = n0 n0' - vec(n) . vec(n')
inline double mdot(const MVector& a, const MVector& b) {
  double s = a.c[0] * b.c[0];
  for (int i = 1; i <= a.n; ++i) s -= a.c[i] * b.c[i];
  return s;
}

// Point on the upper hyperboloid sheet: mdot(v, v) = 1, c0 >= 1.
// `age` counts transforms applied since the last reprojection; points are
// rescaled back onto the hyperboloid once it reaches kRenormAge.
struct HPoint {
  MVector v;
  std::uint8_t age = 0;

  static constexpr int kRenormAge = 64;

  static HPoint origin(int target_dim);  // n-up = (1, 0, ..., 0)

  int dim() const { return v.n; }
  double operator[](int i) const { return v.c[i]; }
};

inline double mdot(const HPoint& a, const HPoint& b) { return mdot(a.v, b.v); }
inline double mdot(const HPoint& a, const MVector& b) { return mdot(a.v, b); }
inline double mdot(const MVector& a, const HPoint& b) { return mdot(a, b.v); }

// Rescales a future-timelike vector onto the unit hyperboloid.
// Throws InvariantError if the vector is not future-timelike.
HPoint project_to_hyperboloid(const MVector& v);

// |mdot(v,v) - 1| <= tol and c0 >= 1
bool is_unit_timelike(const MVector& v, double tol = 1e-9);

// Spacelike order-parameter direction e_alpha = (sinh a, cosh a, 0, ..., 0),
// so mdot(e, e) = -1 and mdot(e, n-up) = sinh a.
struct SpacelikeAxis {
  MVector v;
  double alpha = 0.0;

  static SpacelikeAxis with_rapidity(int target_dim, double alpha);
};

// acosh(1 + u) for u >= 0 without cancellation near u = 0
inline double acosh1p(double u) {
  // log1p(u + sqrt(u) sqrt(u + 2)) = acosh(1 + u)
  return std::log1p(u + std::sqrt(u * (u + 2.0)));
}

// Geodesic distance acosh(mdot(n, m)); throws InvariantError when
// mdot(n, m) < 1 - 1e-7 (inputs off the hyperboloid).
double geodesic_distance(const HPoint& a, const HPoint& b);

// Point at rapidity |Normal(0, spread)| from n-up in a uniform direction.
HPoint random_hpoint(int target_dim, double spread, CounterRng& rng);

}  // namespace hypsig
