#include "hypsig/quadrature.hpp"

#include <cmath>

namespace hypsig {

GaussLegendre::GaussLegendre(int n) : x(n), w(n) {
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Tricomi initial guess, then Newton on P_n
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15 * std::max(1.0, std::abs(z))) {
        // one clean-up step
        double q0 = 1.0, q1 = 0.0;
        for (int j = 0; j < n; ++j) {
          const double q2 = q1;
          q1 = q0;
          q0 = ((2.0 * j + 1.0) * z * q1 - j * q2) / (j + 1.0);
        }
        pp = n * (z * q0 - q1) / (z * z - 1.0);
        z -= q0 / pp;
        break;
      }
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    const double wi = 2.0 / ((1.0 - z * z) * pp * pp);
    w[i] = wi;
    w[n - 1 - i] = wi;
  }
}

}  // namespace hypsig
