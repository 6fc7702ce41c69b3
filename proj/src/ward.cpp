#include "hypsig/ward.hpp"

#include <cmath>

#include "hypsig/errors.hpp"
#include "hypsig/stats.hpp"

namespace hypsig {

MVector Generator::apply(const MVector& v) const {
  MVector out(n);
  for (int r = 0; r <= n; ++r) {
    double s = 0.0;
    for (int c = 0; c <= n; ++c) s += m[r * kMaxAmbient + c] * v.c[c];
    out.c[r] = s;
  }
  return out;
}

int generator_count(int target_dim) {
  return target_dim * (target_dim + 1) / 2;
}

Generator generator_basis(int target_dim, int index) {
  if (index < 0 || index >= generator_count(target_dim))
    throw ConfigError("generator_basis: index out of range");
  Generator g;
  g.n = target_dim;
  if (index < target_dim) {
    const int i = index + 1;
    g.m[0 * kMaxAmbient + i] = 1.0;
    g.m[i * kMaxAmbient + 0] = 1.0;
    g.compact = false;
    g.name = "boost" + std::to_string(i);
    return g;
  }
  int k = index - target_dim;
  for (int i = 1; i <= target_dim; ++i)
    for (int j = i + 1; j <= target_dim; ++j) {
      if (k == 0) {
        g.m[i * kMaxAmbient + j] = -1.0;
        g.m[j * kMaxAmbient + i] = 1.0;
        g.compact = true;
        g.name = "rot" + std::to_string(i) + std::to_string(j);
        return g;
      }
      --k;
    }
  throw ConfigError("generator_basis: index out of range");
}

std::string to_string(WardProbe p) {
  switch (p) {
    case WardProbe::One: return "one";
    case WardProbe::CenterTime: return "n0_center";
    case WardProbe::CenterSpatial: return "n1_center";
    case WardProbe::CenterBond: return "bond_center";
  }
  return "?";
}

const std::vector<WardProbe>& registered_probes() {
  static const std::vector<WardProbe> probes = {
      WardProbe::One, WardProbe::CenterTime, WardProbe::CenterSpatial,
      WardProbe::CenterBond};
  return probes;
}

namespace {

int center_partner(const LatticeSpec& spec, int c) {
  int coord[3];
  spec.coord(c, coord);
  coord[0] += 1;
  if (coord[0] >= spec.dims[0]) coord[0] -= 2;  // step inward on tiny lattices
  return spec.index(coord);
}

MVector spatial_probe_axis(int target_dim) {
  MVector w(target_dim);
  w.c[1] = 1.0;
  return w;
}

}  // namespace

double probe_value(const SpinField& field, WardProbe probe) {
  const int c = field.spec.center_site();
  switch (probe) {
    case WardProbe::One:
      return 1.0;
    case WardProbe::CenterTime:
      return mdot(field.spins[c].v, HPoint::origin(field.spec.target_dim).v);
    case WardProbe::CenterSpatial:
      return mdot(field.spins[c].v, spatial_probe_axis(field.spec.target_dim));
    case WardProbe::CenterBond:
      return mdot(field.spins[c], field.spins[center_partner(field.spec, c)]);
  }
  return 0.0;
}

double probe_killing_sum(const SpinField& field, WardProbe probe,
                         const Generator& g) {
  const int c = field.spec.center_site();
  switch (probe) {
    case WardProbe::One:
      return 0.0;
    case WardProbe::CenterTime: {
      if (field.frozen[c]) return 0.0;
      return mdot(g.apply(field.spins[c].v),
                  HPoint::origin(field.spec.target_dim).v);
    }
    case WardProbe::CenterSpatial: {
      if (field.frozen[c]) return 0.0;
      return mdot(g.apply(field.spins[c].v),
                  spatial_probe_axis(field.spec.target_dim));
    }
    case WardProbe::CenterBond: {
      const int c2 = center_partner(field.spec, c);
      double s = 0.0;
      if (!field.frozen[c])
        s += mdot(g.apply(field.spins[c].v), field.spins[c2].v);
      if (!field.frozen[c2])
        s += mdot(field.spins[c].v, g.apply(field.spins[c2].v));
      return s;
    }
  }
  return 0.0;
}

double action_killing_sum(const SpinField& field, const Generator& g) {
  const LatticeSpec& spec = field.spec;
  const MVector source = [&] {
    MVector v(spec.target_dim);
    v.c[0] = spec.gauge == GaugeFix::ExternalField ? spec.epsilon : 0.0;
    return v;
  }();
  double total = 0.0;
  int nb[6];
  const auto sites = spec.sites();
  for (std::int64_t site = 0; site < sites; ++site) {
    if (field.frozen[site]) continue;
    const MVector gn = g.apply(field.spins[site].v);
    const int cnt = spec.neighbors(static_cast<int>(site), nb);
    double s = mdot(gn, source);
    for (int k = 0; k < cnt; ++k) s += mdot(gn, field.spins[nb[k]].v);
    total += s;
  }
  return total;
}

WardEstimate ward_residual(std::span<const double> xf_series,
                           std::span<const double> f_series,
                           std::span<const double> xs_series, double beta) {
  if (xf_series.size() != f_series.size() ||
      xf_series.size() != xs_series.size())
    throw ConfigError("ward_residual: series length mismatch");
  WardEstimate out;
  if (xf_series.empty()) return out;
  std::vector<double> r(xf_series.size());
  std::vector<double> rhs(xf_series.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    rhs[i] = beta * f_series[i] * xs_series[i];
    r[i] = xf_series[i] - rhs[i];
  }
  // blocked jackknife; 20 blocks stay much longer than tau_int at the
  // measurement cadences used here
  const ObservableStats st = summarize(r);
  out.residual = st.mean;
  out.sigma = st.error;
  out.lhs = mean(xf_series);
  out.rhs = mean(rhs);
  return out;
}

}  // namespace hypsig
