#pragma once

#include <vector>

namespace hypsig {

// Legendre function P^{mu}_{-1/2}(x) of order mu = 1 - N/2 on x >= 1,
// evaluated through the integral representation
//   P^{-m}_{-1/2}(cosh a) = sqrt(2/pi) (sinh a)^{-m} / Gamma(m + 1/2)
//                           * Int_0^a (cosh a - cosh t)^{m - 1/2} dt,
// m = N/2 - 1, with the substitution sinh(t/2) = sinh(a/2) sin(theta):
//   P = sqrt(2/pi)/Gamma((N-1)/2) (sinh a)^{1-N/2} 2^{(N-1)/2} S^{N-2} I,
//   I = Int_0^{pi/2} cos^{N-2}(theta) / sqrt(1 + S^2 sin^2 theta) dtheta,
// S = sinh(a/2).  The theta integral is split at the S sin(theta) ~ O(1)
// boundary layer and the outer panel is mapped through log tan(theta/2), so
// the quadrature stays accurate out to x = cosh(40).
class ConicalEvaluator {
 public:
  explicit ConicalEvaluator(int target_dim, int panel_nodes = 160);

  int target_dim() const { return n_; }
  double order() const { return 1.0 - 0.5 * n_; }

  // P^{1-N/2}_{-1/2}(x); throws ConfigError for x < 1.
  // At x = 1 the value is 1 for N = 2 and 0 for N >= 3; the coefficient
  // 1/Gamma(1-mu) appears as the x -> 1 limit of P / ((x-1)/2)^{-mu/2}
  // (see limit_coefficient).
  double eval(double x) const;

  // 1/Gamma(1 - mu), the leading coefficient of eval near x = 1
  double limit_coefficient() const;

 private:
  int n_;
  std::vector<double> gx_, gw_;  // panel rule on [-1, 1]
};

}  // namespace hypsig
