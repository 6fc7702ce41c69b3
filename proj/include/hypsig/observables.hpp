#pragma once

#include "hypsig/lattice.hpp"

namespace hypsig {

// tanh(mdot(n(site), e)), the SSB order parameter
double order_parameter_Te(const SpinField& field, const SpacelikeAxis& e,
                          int site);

// mdot(n(x), n(y)), invariant two-point function
double invariant_two_point(const SpinField& field, int x, int y);

// Invariant quadratic-fluctuation measure: with m-bar the spin sum over
// free sites and m-hat its unit timelike direction, the free-site average
// of mdot(n(x), m-hat) - 1.  Zero exactly on an aligned field.
double sz_fluctuation(const SpinField& field);

// Raw pieces behind sz_fluctuation (logged so alternative fluctuation
// definitions can be recomputed offline): the spin-sum invariant norm and
// the free-site count.
struct FluctuationParts {
  double mbar_norm = 0.0;
  std::int64_t free_sites = 0;
  double value = 0.0;
};
FluctuationParts sz_fluctuation_parts(const SpinField& field);

}  // namespace hypsig
