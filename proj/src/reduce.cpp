#include "hypsig/reduce.hpp"

#include <cmath>

#include "hypsig/errors.hpp"

namespace hypsig {

namespace {

constexpr double kPivotTol = 1e-12;

// Gram-Schmidt rows of k from the spatial parts of g's columns.
// Returns r completed rows in rows[0..r-1]; remaining rows are filled from
// the standard basis and the last one is sign-fixed to det +1.
LorentzTransform staircase_rotation(const LorentzTransform& g) {
  const int N = g.target_dim();
  double rows[kMaxTargetDim][kMaxTargetDim];
  int r = 0;
  for (int col = 0; col <= N && r < N; ++col) {
    double v[kMaxTargetDim];
    for (int i = 0; i < N; ++i) v[i] = g.at(i + 1, col);
    // project out pinned directions
    for (int k = 0; k < r; ++k) {
      double dot = 0.0;
      for (int i = 0; i < N; ++i) dot += rows[k][i] * v[i];
      for (int i = 0; i < N; ++i) v[i] -= dot * rows[k][i];
    }
    double norm2 = 0.0;
    for (int i = 0; i < N; ++i) norm2 += v[i] * v[i];
    if (norm2 <= kPivotTol * kPivotTol) continue;
    const double inv = 1.0 / std::sqrt(norm2);
    for (int i = 0; i < N; ++i) rows[r][i] = v[i] * inv;
    ++r;
  }
  // complete from the standard basis (columns of g span R^N, so in exact
  // arithmetic this only runs for degenerate input)
  for (int e = 0; e < N && r < N; ++e) {
    double v[kMaxTargetDim] = {};
    v[e] = 1.0;
    for (int k = 0; k < r; ++k) {
      double dot = 0.0;
      for (int i = 0; i < N; ++i) dot += rows[k][i] * v[i];
      for (int i = 0; i < N; ++i) v[i] -= dot * rows[k][i];
    }
    double norm2 = 0.0;
    for (int i = 0; i < N; ++i) norm2 += v[i] * v[i];
    if (norm2 <= 1e-8) continue;
    const double inv = 1.0 / std::sqrt(norm2);
    for (int i = 0; i < N; ++i) rows[r][i] = v[i] * inv;
    ++r;
  }

  LorentzTransform k(N);
  k.at(0, 0) = 1.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) k.at(i + 1, j + 1) = rows[i][j];
  if (k.determinant() < 0.0) {
    for (int j = 0; j < N; ++j) k.at(N, j + 1) = -k.at(N, j + 1);
  }
  return k;
}

ReducedConfig canonicalize(LorentzTransform group_part,
                           std::vector<HPoint> points) {
  const LorentzTransform k = canonical_k_rotation(group_part);
  ReducedConfig rc;
  rc.group_part = k * group_part;
  rc.relative_points.reserve(points.size());
  for (const HPoint& p : points) rc.relative_points.push_back(k.apply(p));
  return rc;
}

}  // namespace

LorentzTransform canonical_k_rotation(const LorentzTransform& g) {
  return staircase_rotation(g);
}

ReducedConfig cm_reduce(std::span<const HPoint> config) {
  if (config.empty()) throw ConfigError("cm_reduce: empty configuration");
  const LorentzTransform gs_inv = section(config[0]).minkowski_inverse();
  std::vector<HPoint> rel;
  rel.reserve(config.size() - 1);
  for (std::size_t i = 1; i < config.size(); ++i)
    rel.push_back(gs_inv.apply(config[i]));
  return canonicalize(gs_inv, std::move(rel));
}

ReducedConfig apply_rigid_motion(const ReducedConfig& rc,
                                 const LorentzTransform& g) {
  // group part transforms by right multiplication with g^{-1}; relative
  // points are untouched up to the fresh canonical rotation
  return canonicalize(rc.group_part * g.minkowski_inverse(),
                      rc.relative_points);
}

double max_abs_diff(const ReducedConfig& a, const ReducedConfig& b) {
  double m = max_abs_diff(a.group_part, b.group_part);
  for (std::size_t i = 0; i < a.relative_points.size(); ++i)
    for (int c = 0; c <= a.group_part.target_dim(); ++c)
      m = std::max(m, std::abs(a.relative_points[i][c] - b.relative_points[i][c]));
  return m;
}

}  // namespace hypsig
