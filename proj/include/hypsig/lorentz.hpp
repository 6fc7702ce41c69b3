#pragma once

#include <array>

#include "hypsig/minkowski.hpp"

namespace hypsig {

// Element of SO0(1,N) as a dense (N+1)x(N+1) matrix, row-major.
class LorentzTransform {
 public:
  LorentzTransform() : n_(2) {}
  explicit LorentzTransform(int target_dim) : n_(target_dim) {}

  static LorentzTransform identity(int target_dim);
  // hyperbolic rotation in the (0, axis) plane; axis in 1..N
  static LorentzTransform boost(int target_dim, int axis, double rapidity);
  // spatial rotation in the (i, j) plane; i, j in 1..N, i != j
  static LorentzTransform rotation(int target_dim, int i, int j, double angle);

  int target_dim() const { return n_; }
  int ambient() const { return n_ + 1; }
  double at(int r, int c) const { return m_[r * kMaxAmbient + c]; }
  double& at(int r, int c) { return m_[r * kMaxAmbient + c]; }

  MVector apply(const MVector& v) const;
  // Applies and enforces the reprojection policy on the point's age counter.
  HPoint apply(const HPoint& p) const;
  SpacelikeAxis apply(const SpacelikeAxis& e) const;

  LorentzTransform operator*(const LorentzTransform& rhs) const;

  // eta M^T eta: exact group inverse up to roundoff
  LorentzTransform minkowski_inverse() const;

  double determinant() const;  // Gaussian elimination with partial pivoting

 private:
  std::array<double, kMaxAmbient * kMaxAmbient> m_{};
  int n_;
};

double max_abs_diff(const LorentzTransform& a, const LorentzTransform& b);

// Global section g_s: the unique pure boost (symmetric positive part of the
// polar decomposition) with g_s(n) . n-up = n.  section(boost(i,t) n-up)
// recovers boost(i,t) exactly.
LorentzTransform section(const HPoint& n);

// Action of section(frame) on an ambient vector without forming the matrix.
MVector boost_from_origin(const HPoint& frame, const MVector& p);

}  // namespace hypsig
