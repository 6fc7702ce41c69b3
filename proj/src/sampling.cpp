#include "hypsig/sampling.hpp"

#include <cmath>

#include "hypsig/errors.hpp"

namespace hypsig {

double ConditionalTarget::validated_norm() const {
  if (!(beta > 0.0)) throw ConfigError("ConditionalTarget: beta must be > 0");
  const double q = mdot(m_vector, m_vector);
  if (!(q > 0.0) || !(m_vector.c[0] > 0.0))
    throw InvariantError("ConditionalTarget: M not future-timelike");
  return std::sqrt(q);
}

double sample_radial_excess(int target_dim, double a, CounterRng& rng,
                            long* attempts) {
  if (target_dim == 2) {
    if (attempts) ++*attempts;
    return -std::log(rng.uniform_pos()) / a;
  }
  // target f(t) ~ t^p (t+2)^p e^{-a t}, p = (N-2)/2.
  // envelope c_p (t^{2p} + 2^p t^p) e^{-a t} with c_p = max(1, 2^{p-1}):
  //   p <= 1: (t+2)^p <= t^p + 2^p      (subadditivity)
  //   p >= 1: (t+2)^p <= 2^{p-1} (t^p + 2^p)
  // i.e. a mixture of Gamma(2p+1, a) and Gamma(p+1, a).
  const double p = 0.5 * (target_dim - 2);
  const double w1 = std::tgamma(2.0 * p + 1.0) / std::pow(a, 2.0 * p + 1.0);
  const double w2 = std::pow(2.0, p) * std::tgamma(p + 1.0) / std::pow(a, p + 1.0);
  const double c_p = p > 1.0 ? std::pow(2.0, p - 1.0) : 1.0;
  const double p1 = w1 / (w1 + w2);
  for (;;) {
    if (attempts) ++*attempts;
    const double shape = (rng.uniform01() < p1) ? 2.0 * p + 1.0 : p + 1.0;
    const double t = rng.gamma(shape) / a;
    const double accept =
        std::pow(t + 2.0, p) / (c_p * (std::pow(t, p) + std::pow(2.0, p)));
    if (rng.uniform01() < accept) return t;
  }
}

HPoint heatbath_sample(const ConditionalTarget& target, CounterRng& rng) {
  const double m = target.validated_norm();
  const int N = target.m_vector.n;
  const HPoint m_hat = project_to_hyperboloid(target.m_vector);

  const double t = sample_radial_excess(N, target.beta * m, rng);
  double dir[kMaxTargetDim];
  rng.unit_sphere(N, dir);

  // point in the rest frame of M: (1+t, sqrt(t(t+2)) omega)
  MVector p(N);
  p.c[0] = 1.0 + t;
  const double s = std::sqrt(t * (t + 2.0));
  for (int i = 0; i < N; ++i) p.c[i + 1] = s * dir[i];

  return project_to_hyperboloid(boost_from_origin(m_hat, p));
}

double metropolis_acceptance(const ConditionalTarget& target,
                             const HPoint& from, const HPoint& to) {
  const double d = mdot(to, target.m_vector) - mdot(from, target.m_vector);
  return std::min(1.0, std::exp(-target.beta * d));
}

MetropolisResult metropolis_step(const HPoint& current,
                                 const ConditionalTarget& target, double scale,
                                 CounterRng& rng) {
  if (!(scale > 0.0)) throw ConfigError("metropolis_step: scale must be > 0");
  target.validated_norm();
  const int N = current.dim();

  const double r = std::abs(rng.normal()) * scale;
  double dir[kMaxTargetDim];
  rng.unit_sphere(N, dir);
  MVector w(N);  // unit tangent at n-up
  for (int i = 0; i < N; ++i) w.c[i + 1] = dir[i];
  const MVector v = boost_from_origin(current, w);  // unit tangent at current

  MVector cand = std::cosh(r) * current.v + std::sinh(r) * v;
  const HPoint proposal = project_to_hyperboloid(cand);

  MetropolisResult out;
  const double acc = metropolis_acceptance(target, current, proposal);
  if (rng.uniform01() < acc) {
    out.point = proposal;
    out.accepted = true;
  } else {
    out.point = current;
    out.accepted = false;
  }
  return out;
}

}  // namespace hypsig
