#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "hypsig/errors.hpp"
#include "hypsig/quadrature.hpp"
#include "hypsig/sampling.hpp"

using namespace hypsig;

namespace {

ConditionalTarget target_along_axis(int n, double m, double beta) {
  ConditionalTarget t;
  t.m_vector = MVector(n);
  t.m_vector.c[0] = m;
  t.beta = beta;
  return t;
}

}  // namespace

TEST_CASE("N=2 radial law is exact") {
  // E[cosh rho] = 1 + 1/(beta m)
  const double beta = 1.0, m = 4.0;
  const ConditionalTarget t = target_along_axis(2, m, beta);
  CounterRng rng(2024, 0, 0);
  const int n = 1000000;
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = heatbath_sample(t, rng)[0];
    s1 += u;
    s2 += u * u;
  }
  const double mean = s1 / n;
  const double sigma = std::sqrt((s2 / n - mean * mean) / n);
  CHECK(std::abs(mean - 1.25) <= 3.0 * sigma);
}

TEST_CASE("N=2 Kolmogorov-Smirnov at the 1% level") {
  const double beta = 1.0, m = 2.0;
  const ConditionalTarget t = target_along_axis(2, m, beta);
  CounterRng rng(777, 0, 0);
  const int n = 100000;
  std::vector<double> us(n);
  for (int i = 0; i < n; ++i) us[i] = heatbath_sample(t, rng)[0];
  std::sort(us.begin(), us.end());
  double d = 0.0;
  for (int i = 0; i < n; ++i) {
    const double cdf = 1.0 - std::exp(-beta * m * (us[i] - 1.0));
    d = std::max(d, std::abs(cdf - static_cast<double>(i) / n));
    d = std::max(d, std::abs(cdf - static_cast<double>(i + 1) / n));
  }
  // critical value at alpha = 0.01: sqrt(-ln(alpha/2)/2)/sqrt(n)
  const double critical = 1.6276 / std::sqrt(static_cast<double>(n));
  CHECK(d < critical);
}

TEST_CASE("N=3 moments match the quadrature oracle") {
  const double beta = 1.0, m = 2.0;
  const double a = beta * m;
  const GaussLegendre rule(400);
  const double num = gl_integrate(
      [&](double u) { return u * std::sqrt(u * u - 1.0) * std::exp(-a * u); },
      1.0, 45.0, rule);
  const double den = gl_integrate(
      [&](double u) { return std::sqrt(u * u - 1.0) * std::exp(-a * u); },
      1.0, 45.0, rule);
  const double expected = num / den;

  const ConditionalTarget t = target_along_axis(3, m, beta);
  CounterRng rng(31415, 0, 0);
  const int n = 1000000;
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = heatbath_sample(t, rng)[0];
    s1 += u;
    s2 += u * u;
  }
  const double mean = s1 / n;
  const double sigma = std::sqrt((s2 / n - mean * mean) / n);
  CHECK(std::abs(mean - expected) <= 3.0 * sigma);
}

TEST_CASE("rejection sampler acceptance rate stays above 0.3") {
  for (int n : {3, 4, 5, 8}) {
    for (double a : {0.5, 2.0, 20.0}) {
      CounterRng rng(8888 + n, static_cast<std::uint32_t>(10 * a), 0);
      long attempts = 0;
      const int draws = 20000;
      for (int i = 0; i < draws; ++i)
        sample_radial_excess(n, a, rng, &attempts);
      const double rate = static_cast<double>(draws) / attempts;
      INFO("N=", n, " beta*m=", a, " acceptance=", rate);
      CHECK(rate >= 0.3);
    }
  }
}

TEST_CASE("heat bath is equivariant under boosts of M") {
  const double beta = 1.0, m = 3.0;
  const LorentzTransform g = LorentzTransform::boost(2, 1, 0.9) *
                             LorentzTransform::rotation(2, 1, 2, 1.1);
  ConditionalTarget t0 = target_along_axis(2, m, beta);
  ConditionalTarget t1{g.apply(t0.m_vector), beta};

  // probes: a fixed timelike and a fixed spacelike covector
  MVector probe_a(2), probe_b(2);
  probe_a.c[0] = 1.3;
  probe_a.c[1] = 0.4;
  probe_b.c[1] = 1.0;
  const int n = 400000;
  double m0a = 0.0, m0a2 = 0.0, m1a = 0.0, m1a2 = 0.0;
  double m0b = 0.0, m0b2 = 0.0, m1b = 0.0, m1b2 = 0.0;
  CounterRng r0(555, 0, 0), r1(556, 1, 0);
  for (int i = 0; i < n; ++i) {
    const HPoint x0 = g.apply(heatbath_sample(t0, r0));  // boosted samples
    const HPoint x1 = heatbath_sample(t1, r1);           // samples of boosted law
    const double a0 = mdot(x0.v, probe_a), a1 = mdot(x1.v, probe_a);
    const double b0 = mdot(x0.v, probe_b), b1 = mdot(x1.v, probe_b);
    m0a += a0; m0a2 += a0 * a0;
    m1a += a1; m1a2 += a1 * a1;
    m0b += b0; m0b2 += b0 * b0;
    m1b += b1; m1b2 += b1 * b1;
  }
  const auto z_test = [&](double s0, double q0, double s1, double q1) {
    const double mu0 = s0 / n, mu1 = s1 / n;
    const double v0 = q0 / n - mu0 * mu0, v1 = q1 / n - mu1 * mu1;
    return std::abs(mu0 - mu1) / std::sqrt((v0 + v1) / n);
  };
  CHECK(z_test(m0a, m0a2, m1a, m1a2) <= 3.0);
  CHECK(z_test(m0b, m0b2, m1b, m1b2) <= 3.0);
}

TEST_CASE("samples are reproducible and on the hyperboloid") {
  const ConditionalTarget t = target_along_axis(3, 2.5, 1.2);
  CounterRng a(1, 5, 9), b(1, 5, 9);
  for (int i = 0; i < 100; ++i) {
    const HPoint pa = heatbath_sample(t, a);
    const HPoint pb = heatbath_sample(t, b);
    for (int c = 0; c <= 3; ++c) REQUIRE(pa[c] == pb[c]);
    REQUIRE(is_unit_timelike(pa.v, 1e-9));
  }
}

TEST_CASE("error paths") {
  ConditionalTarget bad = target_along_axis(2, 1.0, -1.0);
  CounterRng rng(3, 0, 0);
  CHECK_THROWS_AS(heatbath_sample(bad, rng), ConfigError);
  ConditionalTarget spacelike = target_along_axis(2, 1.0, 1.0);
  spacelike.m_vector.c[1] = 2.0;
  CHECK_THROWS_AS(heatbath_sample(spacelike, rng), InvariantError);
}

TEST_CASE("metropolis acceptance approaches 1 as scale -> 0") {
  const ConditionalTarget t = target_along_axis(2, 3.0, 1.0);
  CounterRng rng(17, 0, 0);
  HPoint x = HPoint::origin(2);
  int accepted = 0;
  for (int i = 0; i < 2000; ++i) {
    const MetropolisResult r = metropolis_step(x, t, 1e-6, rng);
    x = r.point;
    if (r.accepted) ++accepted;
  }
  CHECK(accepted >= 1995);
}

TEST_CASE("metropolis chain agrees with the heat-bath oracle") {
  const double beta = 1.0, m = 4.0;
  const ConditionalTarget t = target_along_axis(2, m, beta);

  // heat bath: independent exact draws
  CounterRng hb(90, 0, 0);
  const int n_hb = 400000;
  double h1 = 0.0, h2 = 0.0;
  for (int i = 0; i < n_hb; ++i) {
    const double v = mdot(heatbath_sample(t, hb).v, t.m_vector) / m;
    h1 += v;
    h2 += v * v;
  }
  const double mean_hb = h1 / n_hb;
  const double var_hb = h2 / n_hb - mean_hb * mean_hb;

  // metropolis: correlated chain, conservative autocorrelation inflation
  CounterRng mp(91, 0, 0);
  HPoint x = HPoint::origin(2);
  const int n_mp = 400000, thin = 8;
  double s1 = 0.0, s2 = 0.0;
  int kept = 0;
  for (int i = 0; i < n_mp; ++i) {
    x = metropolis_step(x, t, 0.7, mp).point;
    if (i % thin == 0) {
      const double v = mdot(x.v, t.m_vector) / m;
      s1 += v;
      s2 += v * v;
      ++kept;
    }
  }
  const double mean_mp = s1 / kept;
  const double var_mp = s2 / kept - mean_mp * mean_mp;
  const double sigma = std::sqrt(var_hb / n_hb + 4.0 * var_mp / kept);
  CHECK(std::abs(mean_hb - mean_mp) <= 3.0 * sigma);
}

TEST_CASE("three-state restriction satisfies detailed balance exactly") {
  const ConditionalTarget t = target_along_axis(2, 2.0, 0.7);
  const HPoint s0 = HPoint::origin(2);
  const HPoint s1 = LorentzTransform::boost(2, 1, 0.8).apply(s0);
  const HPoint s2 = LorentzTransform::boost(2, 2, -1.3).apply(s0);
  const HPoint states[3] = {s0, s1, s2};
  // uniform proposal over the other two states + the metropolis rule
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      const double pi_i = std::exp(-t.beta * mdot(states[i].v, t.m_vector));
      const double pi_j = std::exp(-t.beta * mdot(states[j].v, t.m_vector));
      const double flow_ij = pi_i * 0.5 * metropolis_acceptance(t, states[i], states[j]);
      const double flow_ji = pi_j * 0.5 * metropolis_acceptance(t, states[j], states[i]);
      CHECK(flow_ij == doctest::Approx(flow_ji).epsilon(1e-14));
    }
}
