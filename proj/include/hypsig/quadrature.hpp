#pragma once

#include <vector>

namespace hypsig {

// Gauss-Legendre nodes and weights on [-1, 1], Newton iteration on P_n
// converged to machine precision (library tables proved too coarse for the
// 1e-10 self-calibration bound at n = 400).
struct GaussLegendre {
  std::vector<double> x, w;

  explicit GaussLegendre(int n);

  // affine map to [a, b]
  double node(int i, double a, double b) const {
    return 0.5 * (b - a) * (x[i] + 1.0) + a;
  }
  double weight(int i, double a, double b) const {
    return 0.5 * (b - a) * w[i];
  }
  int size() const { return static_cast<int>(x.size()); }
};

// One-off integral of f on [a, b] with an n-point rule.
template <typename F>
double gl_integrate(const F& f, double a, double b, const GaussLegendre& rule) {
  double s = 0.0;
  for (int i = 0; i < rule.size(); ++i)
    s += rule.weight(i, a, b) * f(rule.node(i, a, b));
  return s;
}

}  // namespace hypsig
