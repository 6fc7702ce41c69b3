#include <doctest.h>

#include <cmath>
#include <vector>

#include "hypsig/errors.hpp"
#include "hypsig/quadrature.hpp"
#include "hypsig/run.hpp"
#include "hypsig/ward.hpp"

using namespace hypsig;

TEST_CASE("generator basis spans so(1,N) with the right structure") {
  for (int n : {2, 3, 5}) {
    CHECK(generator_count(n) == n * (n + 1) / 2);
    CounterRng rng(1, 0, 0);
    for (int a = 0; a < generator_count(n); ++a) {
      const Generator g = generator_basis(n, a);
      CHECK((a < n) == !g.compact);
      // Killing fields are tangent: mdot(G n, n) = 0 on the hyperboloid
      for (int trial = 0; trial < 50; ++trial) {
        const HPoint p = random_hpoint(n, 1.3, rng);
        CHECK(std::abs(mdot(g.apply(p.v), p.v)) <= 1e-12 * (1.0 + p[0] * p[0]));
      }
    }
    CHECK_THROWS_AS(generator_basis(n, generator_count(n)), ConfigError);
  }
}

TEST_CASE("all-frozen lattice gives exactly zero residual") {
  LatticeSpec s;
  s.dims = {2, 2};  // every site on the boundary
  const SpinField f = SpinField::cold_start(s);
  const Generator g = generator_basis(2, 0);
  CHECK(action_killing_sum(f, g) == 0.0);
  CHECK(probe_killing_sum(f, WardProbe::CenterTime, g) == 0.0);
}

TEST_CASE("boost ward identity on one free spin vs quadrature") {
  // 3-chain with both ends frozen: the center spin sees M = 2 n-up, so the
  // single-spin law is e^{-2 beta cosh rho} sinh rho drho x uniform phi
  const double beta = 1.0;
  RunParameters p;
  p.spec.dims = {3};
  p.beta = beta;
  p.sweeps = 120000;
  p.thermalization = 200;
  p.measure_every = 1;
  p.seed = 321;
  p.ward_observables = true;
  const RunRecord rec = run_mc(p);

  // quadrature oracle for both sides of the boost identity with the K-odd
  // probe F = mdot(n, w1):  <X F> = -<n0>,  beta <F X S> = -2 beta <n1^2>
  const GaussLegendre rule(300);
  const auto moment = [&](auto&& f) {
    return gl_integrate(
        [&](double r) {
          return f(r) * std::sinh(r) * std::exp(-2.0 * beta * std::cosh(r));
        },
        0.0, 40.0, rule);
  };
  const double z = moment([](double) { return 1.0; });
  const double lhs_quad = -moment([](double r) { return std::cosh(r); }) / z;
  const double rhs_quad =
      -2.0 * beta * 0.5 *
      moment([](double r) { return std::sinh(r) * std::sinh(r); }) / z;
  // (the phi average of cos^2 gives the 1/2)
  CHECK(lhs_quad == doctest::Approx(rhs_quad).epsilon(1e-10));

  const WardEstimate odd =
      ward_residual_from_record(rec, 0, WardProbe::CenterSpatial);
  CHECK(std::abs(odd.residual) <= 3.0 * odd.sigma);
  const auto& xf = rec.series.at(ward_xf_name("boost1", WardProbe::CenterSpatial));
  const ObservableStats lhs_stats = summarize(xf);
  CHECK(std::abs(lhs_stats.mean - lhs_quad) <= 3.0 * lhs_stats.error);

  // the K-even probe F = n0 gives 0 = 0: both sides vanish by symmetry
  const WardEstimate even =
      ward_residual_from_record(rec, 0, WardProbe::CenterTime);
  CHECK(std::abs(even.residual) <= 3.0 * even.sigma);
  CHECK(std::abs(even.lhs) <= 3.0 * even.sigma);
}

TEST_CASE("ward residuals vanish on a small lattice, all generators") {
  RunParameters p;
  p.spec.dims = {6, 6};
  p.beta = 1.0;
  p.sweeps = 30000;
  p.thermalization = 500;
  p.measure_every = 2;
  p.seed = 777;
  p.ward_observables = true;
  const RunRecord rec = run_mc(p);
  for (int a = 0; a < generator_count(2); ++a) {
    for (WardProbe probe : registered_probes()) {
      const WardEstimate w = ward_residual_from_record(rec, a, probe);
      INFO("generator ", a, " probe ", to_string(probe), " residual ",
           w.residual, " sigma ", w.sigma);
      if (w.sigma > 0.0) CHECK(std::abs(w.residual) <= 3.0 * w.sigma);
    }
  }
}

TEST_CASE("boost ward identity stays exact with external-field gauge") {
  RunParameters p;
  p.spec.dims = {12};
  p.spec.gauge = GaugeFix::ExternalField;
  p.spec.epsilon = 0.4;
  p.beta = 1.0;
  p.sweeps = 60000;
  p.thermalization = 1000;
  p.measure_every = 2;
  p.seed = 888;
  p.ward_observables = true;
  const RunRecord rec = run_mc(p);
  for (int a = 0; a < 2; ++a) {  // the two boost generators
    for (WardProbe probe : {WardProbe::CenterTime, WardProbe::CenterSpatial}) {
      const WardEstimate w = ward_residual_from_record(rec, a, probe);
      INFO("boost ", a, " probe ", to_string(probe), " residual ", w.residual,
           " sigma ", w.sigma, " lhs ", w.lhs, " rhs ", w.rhs);
      CHECK(std::abs(w.residual) <= 3.0 * w.sigma);
    }
  }
  // the identity relates genuinely nonzero sides for the K-odd probe
  const WardEstimate w = ward_residual_from_record(rec, 0, WardProbe::CenterSpatial);
  CHECK(std::abs(w.lhs) > 5.0 * w.sigma);
}

TEST_CASE("missing series and bad indices are reported") {
  RunParameters p;
  p.spec.dims = {8};
  p.sweeps = 32;
  p.thermalization = 0;
  p.ward_observables = false;
  const RunRecord rec = run_mc(p);
  CHECK_THROWS_AS(ward_residual_from_record(rec, 0, WardProbe::CenterTime),
                  ConfigError);
  CHECK_THROWS_AS(generator_basis(2, 99), ConfigError);
}
