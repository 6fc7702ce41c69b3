#include "hypsig/observables.hpp"

#include <cmath>

#include "hypsig/errors.hpp"

namespace hypsig {

double order_parameter_Te(const SpinField& field, const SpacelikeAxis& e,
                          int site) {
  return std::tanh(mdot(field.spins[site].v, e.v));
}

double invariant_two_point(const SpinField& field, int x, int y) {
  return mdot(field.spins[x], field.spins[y]);
}

FluctuationParts sz_fluctuation_parts(const SpinField& field) {
  FluctuationParts out;
  MVector mbar(field.spec.target_dim);
  for (std::size_t s = 0; s < field.spins.size(); ++s) {
    if (field.frozen[s]) continue;
    mbar += field.spins[s].v;
    ++out.free_sites;
  }
  if (out.free_sites == 0)
    throw ConfigError("sz_fluctuation: no free sites");
  out.mbar_norm = std::sqrt(mdot(mbar, mbar));  // future-timelike by convexity
  const HPoint mhat = project_to_hyperboloid(mbar);
  double s = 0.0;
  for (std::size_t i = 0; i < field.spins.size(); ++i) {
    if (field.frozen[i]) continue;
    s += mdot(field.spins[i], mhat) - 1.0;
  }
  out.value = s / static_cast<double>(out.free_sites);
  return out;
}

double sz_fluctuation(const SpinField& field) {
  return sz_fluctuation_parts(field).value;
}

}  // namespace hypsig
