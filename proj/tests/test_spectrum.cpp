#include <doctest.h>

#include <cmath>
#include <vector>

#include "hypsig/conical.hpp"
#include "hypsig/errors.hpp"
#include "hypsig/radial.hpp"

using namespace hypsig;

namespace {

// independent oracle: P_{-1/2}(x) = 1/AGM(1, sqrt((x+1)/2))
double conical_p_agm(double x) {
  double a = 1.0, b = std::sqrt(0.5 * (x + 1.0));
  for (int it = 0; it < 80; ++it) {
    const double a2 = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = a2;
    if (std::abs(a - b) < 1e-17 * a) break;
  }
  return 1.0 / a;
}

}  // namespace

TEST_CASE("spectral bottom, N = 2 band") {
  const RadialOperator op = RadialOperator::make(2, 40.0, 4000);
  const double lam = lowest_eigenvalue(op);
  CHECK(lam >= 0.25);
  CHECK(lam <= 0.2575);
  // regression against the pinned discretization
  CHECK(lam == doctest::Approx(0.255912).epsilon(2e-3));
}

TEST_CASE("spectral bottom, N = 3 and N = 4") {
  const double lam3 = lowest_eigenvalue(RadialOperator::make(3, 40.0, 4000));
  CHECK(std::abs(lam3 - 1.0) <= 0.03);
  const double lam4 = lowest_eigenvalue(RadialOperator::make(4, 40.0, 4000));
  CHECK(std::abs(lam4 - 2.25) <= 0.03 * 2.25);
}

TEST_CASE("Dirichlet domain monotonicity and the gap floor") {
  for (int N : {2, 3}) {
    const double target = 0.25 * (N - 1) * (N - 1);
    double prev = 1e9;
    for (double rm : {40.0, 80.0}) {
      // fixed spacing h = 0.01
      const int nodes = static_cast<int>(rm / 0.01) - 1;
      const double lam = lowest_eigenvalue(RadialOperator::make(N, rm, nodes));
      CHECK(lam < prev);
      CHECK(lam >= target - 1e-6);
      prev = lam;
    }
  }
}

TEST_CASE("eigenvalue continuity under grid-density changes") {
  const double a = lowest_eigenvalue(RadialOperator::make(2, 40.0, 4000));
  const double b = lowest_eigenvalue(RadialOperator::make(2, 40.0, 4400));
  CHECK(std::abs(a - b) < 1e-3);
}

TEST_CASE("conical evaluator, N = 2") {
  const ConicalEvaluator ev(2);
  CHECK(ev.eval(1.0) == 1.0);
  CHECK(ev.order() == 0.0);
  CHECK(ev.limit_coefficient() == doctest::Approx(1.0));

  // AGM cross-check of the same function through a different algorithm
  CHECK(ev.eval(2.0) == doctest::Approx(conical_p_agm(2.0)).epsilon(1e-12));
  for (double rho : {0.01, 0.5, 2.0, 5.0, 12.0, 20.0, 40.0}) {
    const double x = std::cosh(rho);
    CHECK(ev.eval(x) == doctest::Approx(conical_p_agm(x)).epsilon(1e-8));
  }
  CHECK(ev.eval(2.0) == doctest::Approx(0.9012862993604475).epsilon(1e-12));
  CHECK_THROWS_AS(ev.eval(0.5), ConfigError);
}

TEST_CASE("conical evaluator, N = 3 closed form") {
  // P^{-1/2}_{-1/2}(cosh a) = sqrt(2/(pi sinh a)) * a
  const ConicalEvaluator ev(3);
  for (double a : {0.1, 1.0, 3.0, 10.0, 25.0}) {
    const double x = std::cosh(a);
    const double expected = std::sqrt(2.0 / (M_PI * std::sinh(a))) * a;
    CHECK(ev.eval(x) == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK(ev.eval(1.0) == 0.0);
}

TEST_CASE("conical small-argument coefficient is 1/Gamma(1 - mu)") {
  for (int N : {2, 3, 4, 5, 8}) {
    const ConicalEvaluator ev(N);
    const double x = 1.0 + 1e-6;
    // P ~ ((x-1)/(x+1))^{-mu/2} / Gamma(1-mu) as x -> 1
    const double mu = ev.order();
    const double lead = std::pow((x - 1.0) / (x + 1.0), -0.5 * mu);
    CHECK(ev.eval(x) / lead ==
          doctest::Approx(ev.limit_coefficient()).epsilon(1e-4));
  }
}

TEST_CASE("conical decay envelope stays bounded") {
  // P^mu_{-1/2}(cosh rho) ~ const * rho e^{-rho/2} for every N
  for (int N : {2, 3, 5}) {
    const ConicalEvaluator ev(N);
    double lo = 1e300, hi = 0.0;
    for (double rho = 5.0; rho <= 15.0; rho += 0.1) {
      const double v = ev.eval(std::cosh(rho)) * std::exp(0.5 * rho) / rho;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    CHECK(hi / lo < 3.0);
    CHECK(std::isfinite(hi));
  }
}

TEST_CASE("generalized ground-state residual, N = 2") {
  const ConicalEvaluator ev(2);
  const LorentzTransform id = LorentzTransform::identity(2);

  const double res_default = ground_state_residual(ev, 2, id);
  CHECK(res_default <= 1e-4);

  // second-order stencil: halving the spacing divides the residual by ~4
  const double res_h = ground_state_residual(ev, 2, id, 10.0, 250);
  const double res_h2 = ground_state_residual(ev, 2, id, 10.0, 500);
  CHECK(res_h / res_h2 == doctest::Approx(4.0).epsilon(0.15));

  // center moved by a boost: same bound by invariance of the construction
  const double res_boost =
      ground_state_residual(ev, 2, LorentzTransform::boost(2, 1, 1.0));
  CHECK(res_boost <= 1e-4);
}

TEST_CASE("generalized ground-state residual, N = 3 and N = 5") {
  // larger second-derivative constants than N = 2: run at h = 0.01
  for (int N : {3, 5}) {
    const ConicalEvaluator ev(N);
    const double res =
        ground_state_residual(ev, N, LorentzTransform::identity(N), 10.0, 1000);
    CHECK(res <= 1e-4);
  }
}

TEST_CASE("linear combinations keep the eigenvalue (2D stencil)") {
  // psi = zero mode at n-up + zero mode at boost(1,1) n-up on H_2,
  // checked with an independent polar-coordinate five-point stencil
  const ConicalEvaluator ev(2);
  const HPoint up = HPoint::origin(2);
  const HPoint p2 = LorentzTransform::boost(2, 1, 1.0).apply(up);

  auto psi = [&](double rho, double phi) {
    HPoint n;
    n.v = MVector(2);
    n.v.c[0] = std::cosh(rho);
    n.v.c[1] = std::sinh(rho) * std::cos(phi);
    n.v.c[2] = std::sinh(rho) * std::sin(phi);
    return ev.eval(mdot(n, up)) + ev.eval(std::max(1.0, mdot(n, p2)));
  };

  const double h = 0.01, hphi = 0.01;
  double worst = 0.0;
  // annulus keeping clear of both centers and the polar axis singularity
  for (double rho = 2.0; rho <= 4.0; rho += 0.25)
    for (double phi = 0.7; phi <= M_PI; phi += 0.35) {
      const double f0 = psi(rho, phi);
      const double frp = psi(rho + h, phi), frm = psi(rho - h, phi);
      const double fpp = psi(rho, phi + hphi), fpm = psi(rho, phi - hphi);
      const double d2r = (frp - 2.0 * f0 + frm) / (h * h);
      const double d1r = (frp - frm) / (2.0 * h);
      const double d2p = (fpp - 2.0 * f0 + fpm) / (hphi * hphi);
      const double s = std::sinh(rho);
      const double lap = -(d2r + d1r / std::tanh(rho) + d2p / (s * s));
      worst = std::max(worst, std::abs(lap - 0.25 * f0) / (0.25 * std::abs(f0)));
    }
  CHECK(worst <= 5e-3);
}
