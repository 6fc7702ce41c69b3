#pragma once

#include <span>
#include <vector>

#include "hypsig/lorentz.hpp"

namespace hypsig {

// Configuration modulo rigid motions: class representative of
// (g_s(n1)^{-1}, g_s(n1)^{-1} n2, ..., g_s(n1)^{-1} n_nu) under the left
// diagonal K-action, realized by a deterministic canonical rotation.
struct ReducedConfig {
  LorentzTransform group_part;
  std::vector<HPoint> relative_points;
};

// Canonical K-rotation for the diagonal left action: the unique k in SO(N)
// bringing the spatial parts of g's columns to positive-staircase form
// (first pivot along axis 1 with nonnegative coefficient, next pivot in the
// (1,2) plane with nonnegative axis-2 coefficient, ...), with the last free
// axis oriented so det k = +1.  For N = 2 this is exactly "rotate the first
// column's spatial part onto axis 1"; the staircase extension makes the
// representative independent of which class member it is computed from.
LorentzTransform canonical_k_rotation(const LorentzTransform& g);

ReducedConfig cm_reduce(std::span<const HPoint> config);

// Rigid-motion action on reduced configurations intertwining the diagonal
// left action on raw configurations:
//   cm_reduce(d_l(g) config) == apply_rigid_motion(cm_reduce(config), g).
ReducedConfig apply_rigid_motion(const ReducedConfig& rc,
                                 const LorentzTransform& g);

double max_abs_diff(const ReducedConfig& a, const ReducedConfig& b);

}  // namespace hypsig
