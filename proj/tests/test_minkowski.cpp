#include <doctest.h>

#include <cmath>

#include "hypsig/errors.hpp"
#include "hypsig/lorentz.hpp"
#include "hypsig/minkowski.hpp"
#include "hypsig/quadrature.hpp"
#include "hypsig/rng.hpp"

using namespace hypsig;

namespace {

MVector random_mvector(int n, CounterRng& rng, double scale = 2.0) {
  MVector v(n);
  for (int i = 0; i <= n; ++i) v.c[i] = scale * (rng.uniform01() - 0.5);
  return v;
}

}  // namespace

TEST_CASE("mdot basics") {
  const HPoint up = HPoint::origin(2);
  CHECK(mdot(up, up) == doctest::Approx(1.0).epsilon(1e-15));

  const HPoint b = LorentzTransform::boost(2, 1, 1.0).apply(up);
  CHECK(mdot(b, up) == doctest::Approx(std::cosh(1.0)).epsilon(1e-14));

  for (double alpha : {-2.0, -0.5, 0.0, 0.7, 3.0}) {
    const SpacelikeAxis e = SpacelikeAxis::with_rapidity(3, alpha);
    CHECK(mdot(e.v, e.v) == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(mdot(e.v, HPoint::origin(3).v) ==
          doctest::Approx(std::sinh(alpha)).epsilon(1e-13));
  }
}

TEST_CASE("geodesic distance") {
  const HPoint up = HPoint::origin(2);
  CHECK(geodesic_distance(up, up) == 0.0);

  const HPoint b = LorentzTransform::boost(2, 1, 0.5).apply(up);
  CHECK(geodesic_distance(up, b) == doctest::Approx(0.5).epsilon(1e-14));

  // rapidity is arclength along any boost axis
  const HPoint c = LorentzTransform::boost(3, 2, 2.5).apply(HPoint::origin(3));
  CHECK(geodesic_distance(HPoint::origin(3), c) ==
        doctest::Approx(2.5).epsilon(1e-13));

  // off-hyperboloid input reports a violation
  HPoint bad = up;
  bad.v.c[0] = 0.9;
  CHECK_THROWS_AS(geodesic_distance(bad, bad), InvariantError);
}

TEST_CASE("geodesic distance matches extended-precision evaluation") {
  CounterRng rng(77, 0, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const HPoint a = random_hpoint(2, 1.5, rng);
    const HPoint b = random_hpoint(2, 1.5, rng);
    // independent long-double route
    long double x = (long double)a[0] * b[0];
    for (int i = 1; i <= 2; ++i) x -= (long double)a[i] * b[i];
    const double expected = static_cast<double>(
        std::log(x + std::sqrt(x - 1.0L) * std::sqrt(x + 1.0L)));
    CHECK(geodesic_distance(a, b) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("random_hpoint invariants and mean") {
  CounterRng rng(123, 1, 0);
  CHECK(mdot(random_hpoint(2, 0.0, rng), HPoint::origin(2)) == 1.0);

  for (int n : {2, 3, 5}) {
    CounterRng r2(321, static_cast<std::uint32_t>(n), 0);
    for (int i = 0; i < 20000; ++i) {
      const HPoint p = random_hpoint(n, 1.0, r2);
      REQUIRE(is_unit_timelike(p.v, 1e-9));
    }
  }

  // empirical mean of c0 against quadrature of cosh(rho) over the
  // half-normal rapidity density
  const double spread = 0.8;
  const GaussLegendre rule(200);
  const auto density = [&](double r) {
    return std::sqrt(2.0 / M_PI) / spread *
           std::exp(-0.5 * r * r / (spread * spread));
  };
  const double expected = gl_integrate(
      [&](double r) { return std::cosh(r) * density(r); }, 0.0, 12.0, rule);

  CounterRng r3(999, 7, 0);
  const int samples = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double c0 = random_hpoint(2, spread, r3)[0];
    sum += c0;
    sum2 += c0 * c0;
  }
  const double mean_c0 = sum / samples;
  const double sigma =
      std::sqrt((sum2 / samples - mean_c0 * mean_c0) / samples);
  CHECK(std::abs(mean_c0 - expected) <= 3.0 * sigma);
}

TEST_CASE("hyperboloid closure and pair lower bound") {
  // transforms with total boost content <= 5, per the stated tolerance
  CounterRng rng(2718, 0, 0);
  for (int n : {2, 3}) {
    for (int trial = 0; trial < 300; ++trial) {
      LorentzTransform g = LorentzTransform::identity(n);
      for (int k = 0; k < 4; ++k) {
        const int axis = 1 + static_cast<int>(rng.uniform01() * n);
        g = g * LorentzTransform::boost(n, std::min(axis, n),
                                        1.25 * (2.0 * rng.uniform01() - 1.0));
        if (n >= 2)
          g = g * LorentzTransform::rotation(n, 1, 2,
                                             2.0 * M_PI * rng.uniform01());
      }
      const HPoint p = g.apply(random_hpoint(n, 1.0, rng));
      REQUIRE(is_unit_timelike(p.v, 1e-9));
      const HPoint q = random_hpoint(n, 1.0, rng);
      REQUIRE(mdot(p, q) >= 1.0 - 1e-9);
    }
  }
}

TEST_CASE("projection rejects spacelike input") {
  MVector v(2);
  v.c[0] = 0.5;
  v.c[1] = 2.0;
  CHECK_THROWS_AS(project_to_hyperboloid(v), InvariantError);
  CHECK_THROWS_AS(
      [] {
        CounterRng rng(1, 0, 0);
        return random_hpoint(2, -1.0, rng);
      }(),
      ConfigError);
}
