#include "hypsig/conical.hpp"

#include <cmath>

#include "hypsig/errors.hpp"
#include "hypsig/quadrature.hpp"

namespace hypsig {

ConicalEvaluator::ConicalEvaluator(int target_dim, int panel_nodes)
    : n_(target_dim) {
  if (target_dim < 2 || target_dim > 8)
    throw ConfigError("ConicalEvaluator: target dimension must be in 2..8");
  const GaussLegendre rule(panel_nodes);
  gx_ = rule.x;
  gw_ = rule.w;
}

double ConicalEvaluator::limit_coefficient() const {
  return 1.0 / std::tgamma(1.0 - order());
}

double ConicalEvaluator::eval(double x) const {
  if (x < 1.0) throw ConfigError("ConicalEvaluator: argument must be >= 1");
  if (x == 1.0) return n_ == 2 ? 1.0 : 0.0;

  const double s2 = 0.5 * (x - 1.0);      // sinh^2(a/2)
  const double S = std::sqrt(s2);         // sinh(a/2)
  const double sinh_a = std::sqrt((x - 1.0) * (x + 1.0));
  const int q = static_cast<int>(gx_.size());

  auto integrand = [&](double theta) {
    const double st = std::sin(theta), ct = std::cos(theta);
    double p = 1.0;
    for (int k = 0; k < n_ - 2; ++k) p *= ct;
    return p / std::sqrt(1.0 + s2 * st * st);
  };

  double I = 0.0;
  const double theta_split = (S > 4.0) ? std::asin(4.0 / S) : 0.5 * M_PI;
  // inner panel: resolves the S sin(theta) <= 4 layer
  for (int k = 0; k < q; ++k) {
    const double theta = 0.5 * theta_split * (gx_[k] + 1.0);
    I += 0.5 * theta_split * gw_[k] * integrand(theta);
  }
  if (theta_split < 0.5 * M_PI) {
    // outer panel in w = log tan(theta/2): integrand becomes sin(theta) f
    const double w_lo = std::log(std::tan(0.5 * theta_split));
    const double w_hi = 0.0;  // theta = pi/2
    for (int k = 0; k < q; ++k) {
      const double w = 0.5 * (w_hi - w_lo) * (gx_[k] + 1.0) + w_lo;
      const double t = std::exp(w);  // tan(theta/2)
      const double sin_theta = 2.0 * t / (1.0 + t * t);
      const double theta = 2.0 * std::atan(t);
      I += 0.5 * (w_hi - w_lo) * gw_[k] * sin_theta * integrand(theta);
    }
  }

  const double pref = std::sqrt(2.0 / M_PI) / std::tgamma(0.5 * (n_ - 1));
  return pref * std::pow(sinh_a, 1.0 - 0.5 * n_) *
         std::pow(2.0, 0.5 * (n_ - 1)) * std::pow(S, n_ - 2) * I;
}

}  // namespace hypsig
