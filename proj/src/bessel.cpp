#include "hypsig/bessel.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_bessel.h>

#include <cmath>
#include <mutex>
#include <string>

#include "hypsig/errors.hpp"

namespace hypsig {

void scaled_bessel_i(double x, int m_max, double* out) {
  static std::once_flag gsl_handler_off;
  std::call_once(gsl_handler_off, [] { gsl_set_error_handler_off(); });

  if (x < 1e-290) {
    out[0] = 1.0;
    for (int m = 1; m <= m_max; ++m) out[m] = 0.0;
    return;
  }
  if (m_max == 0) {
    out[0] = gsl_sf_bessel_I0_scaled(x);
    return;
  }
  const int status = gsl_sf_bessel_In_scaled_array(0, m_max, x, out);
  if (status != GSL_SUCCESS && status != GSL_EUNDRFLW)
    throw NumericalError("scaled_bessel_i: GSL failure, status " +
                         std::to_string(status));
}

double scaled_bessel_i0_minus_i1(double x) {
  if (x < 1e-290) return 1.0;
  if (x < 32.0) {
    // relative size of the difference is ~ 1/(2x): direct subtraction
    // loses at most a couple of digits here
    return gsl_sf_bessel_I0_scaled(x) - gsl_sf_bessel_I1_scaled(x);
  }
  // termwise difference of the large-x expansions
  //   I_m(x) e^{-x} sqrt(2 pi x) ~ sum_k u_k(m),
  //   u_k(m) = -u_{k-1}(m) (4 m^2 - (2k-1)^2) / (8 x k)
  double u0 = 1.0, u1 = 1.0, sum = 0.0;
  for (int k = 1; k <= 60; ++k) {
    const double odd2 = (2.0 * k - 1.0) * (2.0 * k - 1.0);
    u0 *= odd2 / (8.0 * x * k);
    u1 *= -(4.0 - odd2) / (8.0 * x * k);
    const double term = u0 - u1;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum / std::sqrt(2.0 * M_PI * x);
}

}  // namespace hypsig
