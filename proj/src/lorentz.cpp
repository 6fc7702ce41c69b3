#include "hypsig/lorentz.hpp"

#include <cassert>
#include <cmath>

#include "hypsig/errors.hpp"

namespace hypsig {

LorentzTransform LorentzTransform::identity(int target_dim) {
  LorentzTransform t(target_dim);
  for (int i = 0; i <= target_dim; ++i) t.at(i, i) = 1.0;
  return t;
}

LorentzTransform LorentzTransform::boost(int target_dim, int axis,
                                         double rapidity) {
  if (axis < 1 || axis > target_dim)
    throw ConfigError("boost: axis index out of range");
  LorentzTransform t = identity(target_dim);
  const double ch = std::cosh(rapidity), sh = std::sinh(rapidity);
  t.at(0, 0) = ch;
  t.at(0, axis) = sh;
  t.at(axis, 0) = sh;
  t.at(axis, axis) = ch;
  return t;
}

LorentzTransform LorentzTransform::rotation(int target_dim, int i, int j,
                                            double angle) {
  if (i < 1 || i > target_dim || j < 1 || j > target_dim || i == j)
    throw ConfigError("rotation: plane indices out of range");
  LorentzTransform t = identity(target_dim);
  const double c = std::cos(angle), s = std::sin(angle);
  t.at(i, i) = c;
  t.at(j, j) = c;
  t.at(i, j) = -s;
  t.at(j, i) = s;
  return t;
}

MVector LorentzTransform::apply(const MVector& v) const {
  MVector out(n_);
  for (int r = 0; r <= n_; ++r) {
    double s = 0.0;
    for (int c = 0; c <= n_; ++c) s += at(r, c) * v.c[c];
    out.c[r] = s;
  }
  return out;
}

HPoint LorentzTransform::apply(const HPoint& p) const {
  HPoint out;
  out.v = apply(p.v);
  out.age = static_cast<std::uint8_t>(p.age + 1);
  if (out.age >= HPoint::kRenormAge) {
    out = project_to_hyperboloid(out.v);
  }
  assert(is_unit_timelike(out.v, 1e-9));
  return out;
}

SpacelikeAxis LorentzTransform::apply(const SpacelikeAxis& e) const {
  SpacelikeAxis out;
  out.v = apply(e.v);
  out.alpha = e.alpha;
  return out;
}

LorentzTransform LorentzTransform::operator*(const LorentzTransform& rhs) const {
  LorentzTransform out(n_);
  for (int r = 0; r <= n_; ++r)
    for (int c = 0; c <= n_; ++c) {
      double s = 0.0;
      for (int k = 0; k <= n_; ++k) s += at(r, k) * rhs.at(k, c);
      out.at(r, c) = s;
    }
  return out;
}

LorentzTransform LorentzTransform::minkowski_inverse() const {
  // (eta M eta)^T with eta = diag(1, -1, ..., -1)
  LorentzTransform out(n_);
  for (int r = 0; r <= n_; ++r)
    for (int c = 0; c <= n_; ++c) {
      const double sign = ((r == 0) == (c == 0)) ? 1.0 : -1.0;
      out.at(r, c) = sign * at(c, r);
    }
  return out;
}

double LorentzTransform::determinant() const {
  double a[kMaxAmbient][kMaxAmbient];
  const int d = n_ + 1;
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) a[r][c] = at(r, c);
  double det = 1.0;
  for (int k = 0; k < d; ++k) {
    int piv = k;
    for (int r = k + 1; r < d; ++r)
      if (std::abs(a[r][k]) > std::abs(a[piv][k])) piv = r;
    if (piv != k) {
      for (int c = 0; c < d; ++c) std::swap(a[k][c], a[piv][c]);
      det = -det;
    }
    if (a[k][k] == 0.0) return 0.0;
    det *= a[k][k];
    for (int r = k + 1; r < d; ++r) {
      const double f = a[r][k] / a[k][k];
      for (int c = k; c < d; ++c) a[r][c] -= f * a[k][c];
    }
  }
  return det;
}

double max_abs_diff(const LorentzTransform& a, const LorentzTransform& b) {
  double m = 0.0;
  for (int r = 0; r <= a.target_dim(); ++r)
    for (int c = 0; c <= a.target_dim(); ++c)
      m = std::max(m, std::abs(a.at(r, c) - b.at(r, c)));
  return m;
}

LorentzTransform section(const HPoint& n) {
  // Pure boost B with first column n:
  //   B00 = n0, B0i = Bi0 = ni, Bij = delta_ij + ni nj / (1 + n0)
  const int N = n.dim();
  LorentzTransform b(N);
  b.at(0, 0) = n[0];
  const double f = 1.0 / (1.0 + n[0]);
  for (int i = 1; i <= N; ++i) {
    b.at(0, i) = n[i];
    b.at(i, 0) = n[i];
    for (int j = 1; j <= N; ++j) b.at(i, j) = (i == j ? 1.0 : 0.0) + n[i] * n[j] * f;
  }
  return b;
}

MVector boost_from_origin(const HPoint& frame, const MVector& p) {
  const int N = frame.dim();
  double spatial_dot = 0.0;
  for (int i = 1; i <= N; ++i) spatial_dot += frame[i] * p.c[i];
  MVector out(N);
  out.c[0] = frame[0] * p.c[0] + spatial_dot;
  const double f = p.c[0] + spatial_dot / (1.0 + frame[0]);
  for (int i = 1; i <= N; ++i) out.c[i] = p.c[i] + frame[i] * f;
  return out;
}

}  // namespace hypsig
