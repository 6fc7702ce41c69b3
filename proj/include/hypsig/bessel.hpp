#pragma once

namespace hypsig {

// out[m] = e^{-x} I_m(x) for m = 0..m_max, x >= 0.  Kernel arguments reach
// x ~ sinh(rho_max)^2, far beyond double overflow for the unscaled Bessel,
// so everything downstream works with the scaled values only.
void scaled_bessel_i(double x, int m_max, double* out);

// e^{-x} (I_0(x) - I_1(x)), computed without the catastrophic cancellation
// of the direct subtraction at large x (the difference is ~ I_0 / 2x there);
// used by the stable bond-observable kernels.
double scaled_bessel_i0_minus_i1(double x);

}  // namespace hypsig
