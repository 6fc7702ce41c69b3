#include "hypsig/lattice.hpp"

#include <atomic>
#include <cmath>

#include "hypsig/errors.hpp"
#include "hypsig/parallel.hpp"

namespace hypsig {

std::string to_string(GaugeFix g) {
  switch (g) {
    case GaugeFix::FixedSpinBoundary: return "fixed_spin_boundary";
    case GaugeFix::FixedSiteInterior: return "fixed_site_interior";
    case GaugeFix::ExternalField: return "external_field";
  }
  return "?";
}

GaugeFix gauge_fix_from_string(const std::string& s) {
  if (s == "fixed_spin_boundary") return GaugeFix::FixedSpinBoundary;
  if (s == "fixed_site_interior") return GaugeFix::FixedSiteInterior;
  if (s == "external_field") return GaugeFix::ExternalField;
  throw ConfigError("unknown gauge-fix variant: " + s);
}

void LatticeSpec::validate() const {
  if (dims.empty() || dims.size() > 3)
    throw ConfigError("LatticeSpec: d must be 1, 2 or 3");
  std::int64_t total = 1;
  for (int e : dims) {
    if (e < 1) throw ConfigError("LatticeSpec: extents must be positive");
    total *= e;
    if (total > kMaxSites)
      throw ConfigError("LatticeSpec: more than 2^26 sites");
  }
  if (target_dim < kMinTargetDim || target_dim > kMaxTargetDim)
    throw ConfigError("LatticeSpec: N must be in 2..8");
  if (epsilon < 0.0) throw ConfigError("LatticeSpec: epsilon must be >= 0");
  if (gauge == GaugeFix::FixedSpinBoundary) {
    for (int e : dims)
      if (e < 2)
        throw ConfigError(
            "LatticeSpec: fixed-spin boundary needs extent >= 2 everywhere");
  }
}

std::int64_t LatticeSpec::sites() const {
  std::int64_t total = 1;
  for (int e : dims) total *= e;
  return total;
}

int LatticeSpec::index(const int* coord) const {
  int idx = 0;
  for (int k = 0; k < d(); ++k) idx = idx * dims[k] + coord[k];
  return idx;
}

void LatticeSpec::coord(int site, int* out) const {
  for (int k = d() - 1; k >= 0; --k) {
    out[k] = site % dims[k];
    site /= dims[k];
  }
}

bool LatticeSpec::on_boundary(int site) const {
  int c[3];
  coord(site, c);
  for (int k = 0; k < d(); ++k)
    if (c[k] == 0 || c[k] == dims[k] - 1) return true;
  return false;
}

int LatticeSpec::center_site() const {
  int c[3];
  for (int k = 0; k < d(); ++k) c[k] = dims[k] / 2;
  return index(c);
}

int LatticeSpec::neighbors(int site, int* out) const {
  int c[3];
  coord(site, c);
  int n = 0;
  for (int k = 0; k < d(); ++k) {
    if (c[k] > 0) {
      c[k] -= 1;
      out[n++] = index(c);
      c[k] += 1;
    }
    if (c[k] < dims[k] - 1) {
      c[k] += 1;
      out[n++] = index(c);
      c[k] -= 1;
    }
  }
  return n;
}

SpinField SpinField::cold_start(const LatticeSpec& spec) {
  spec.validate();
  SpinField f;
  f.spec = spec;
  const auto total = spec.sites();
  f.spins.assign(total, HPoint::origin(spec.target_dim));
  f.frozen.assign(total, 0);
  switch (spec.gauge) {
    case GaugeFix::FixedSpinBoundary:
      for (std::int64_t s = 0; s < total; ++s)
        if (spec.on_boundary(static_cast<int>(s))) f.frozen[s] = 1;
      break;
    case GaugeFix::FixedSiteInterior:
      f.frozen[spec.center_site()] = 1;
      break;
    case GaugeFix::ExternalField:
      break;
  }
  return f;
}

SpinField SpinField::random_start(const LatticeSpec& spec, double spread,
                                  std::uint64_t seed) {
  SpinField f = cold_start(spec);
  for (std::size_t s = 0; s < f.spins.size(); ++s) {
    if (f.frozen[s]) continue;
    CounterRng rng(seed, static_cast<std::uint32_t>(s), 0xFFFFFFFFu);
    f.spins[s] = random_hpoint(spec.target_dim, spread, rng);
  }
  return f;
}

std::int64_t SpinField::free_sites() const {
  std::int64_t n = 0;
  for (auto fz : frozen)
    if (!fz) ++n;
  return n;
}

MVector SpinField::local_field(int site) const {
  int nb[6];
  const int cnt = spec.neighbors(site, nb);
  MVector m(spec.target_dim);
  for (int k = 0; k < cnt; ++k) m += spins[nb[k]].v;
  if (spec.gauge == GaugeFix::ExternalField) m.c[0] += spec.epsilon;
  return m;
}

std::int64_t bond_count(const LatticeSpec& spec) {
  std::int64_t total = 0;
  for (int k = 0; k < spec.d(); ++k) {
    std::int64_t b = spec.dims[k] - 1;
    for (int j = 0; j < spec.d(); ++j)
      if (j != k) b *= spec.dims[j];
    total += b;
  }
  return total;
}

double action(const SpinField& field) {
  const LatticeSpec& spec = field.spec;
  double s = 0.0;
  int c[3];
  const auto total = spec.sites();
  for (std::int64_t site = 0; site < total; ++site) {
    spec.coord(static_cast<int>(site), c);
    for (int k = 0; k < spec.d(); ++k) {
      if (c[k] >= spec.dims[k] - 1) continue;
      c[k] += 1;
      const int other = spec.index(c);
      c[k] -= 1;
      s += mdot(field.spins[site], field.spins[other]);
    }
  }
  return s;
}

double gauge_action(const SpinField& field) {
  if (field.spec.gauge != GaugeFix::ExternalField) return 0.0;
  double s = 0.0;
  for (const HPoint& p : field.spins) s += p[0] - 1.0;
  return field.spec.epsilon * s;
}

double action_density(const SpinField& field) {
  return action(field) / static_cast<double>(bond_count(field.spec));
}

std::string to_string(const UpdateKernel& k) {
  if (k.kind == UpdateKernel::Kind::HeatBath) return "heat_bath";
  return "metropolis(scale=" + std::to_string(k.scale) + ")";
}

std::int64_t sweep(SpinField& field, double beta, const UpdateKernel& kernel,
                   std::uint64_t seed, std::uint32_t sweep_index,
                   int n_threads) {
  if (!(beta > 0.0)) throw ConfigError("sweep: beta must be > 0");
  const LatticeSpec& spec = field.spec;
  const int total = static_cast<int>(spec.sites());
  std::atomic<std::int64_t> accepted{0};

  for (int parity = 0; parity < 2; ++parity) {
    parallel_for_ranges(0, total, n_threads, [&](int lo, int hi) {
      int c[3];
      std::int64_t local_accepted = 0;
      for (int site = lo; site < hi; ++site) {
        if (field.frozen[site]) continue;
        spec.coord(site, c);
        int sum = 0;
        for (int k = 0; k < spec.d(); ++k) sum += c[k];
        if ((sum & 1) != parity) continue;

        ConditionalTarget target{field.local_field(site), beta};
        CounterRng rng(seed, static_cast<std::uint32_t>(site), sweep_index);
        if (kernel.kind == UpdateKernel::Kind::HeatBath) {
          field.spins[site] = heatbath_sample(target, rng);
          ++local_accepted;
        } else {
          const MetropolisResult r =
              metropolis_step(field.spins[site], target, kernel.scale, rng);
          field.spins[site] = r.point;
          if (r.accepted) ++local_accepted;
        }
      }
      accepted += local_accepted;
    });
  }
  return accepted.load();
}

}  // namespace hypsig
