#include "hypsig/chain.hpp"

#include <cmath>
#include <cstddef>

#include "hypsig/bessel.hpp"
#include "hypsig/errors.hpp"
#include "hypsig/parallel.hpp"
#include "hypsig/quadrature.hpp"

namespace hypsig {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
// tanh saturates to +-1 within 4e-35 beyond this; outside the window the
// arc-measure part is exact to double precision
constexpr double kTanhWindow = 40.0;

const GaussLegendre& window_rule() {
  static const GaussLegendre rule(64);
  return rule;
}

// e^{-beta cosh(dr)} e^{-z} I_m(z) for all modes at one (rho_i, rho_j) pair
void kernel_column(double beta, double ri, double rj, int n_modes,
                   double* out) {
  const double pref = std::exp(-beta * std::cosh(ri - rj));
  if (pref == 0.0) {
    for (int m = 0; m < n_modes; ++m) out[m] = 0.0;
    return;
  }
  const double z = beta * std::sinh(ri) * std::sinh(rj);
  scaled_bessel_i(z, n_modes - 1, out);
  for (int m = 0; m < n_modes; ++m) out[m] *= pref;
}

void apply_mode(const TransferOperator& op, int m,
                const std::vector<double>& f, std::vector<double>& out) {
  const int n = op.grid.n_rho();
  const std::vector<double>& k = op.modes[m];
  const std::vector<double>& w = op.grid.weight;
  out.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    const double* row = k.data() + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) s += row[j] * w[j] * f[j];
    out[i] = kTwoPi * s;
  }
}

// one transfer application to all populated modes + mode-0 mass renorm
void step(const TransferOperator& op, ModeFunction& f) {
  const int n_modes = op.grid.n_modes;
  std::vector<double> tmp;
  const bool invariant = f.rotation_invariant();
  for (int m = 0; m < n_modes; ++m) {
    if (invariant && m > 0) break;
    apply_mode(op, m, f.cosm[m], tmp);
    f.cosm[m].swap(tmp);
    if (m > 0) {
      apply_mode(op, m, f.sinm[m], tmp);
      f.sinm[m].swap(tmp);
    }
  }
  double mass = 0.0;
  for (int i = 0; i < op.grid.n_rho(); ++i)
    mass += op.grid.weight[i] * std::abs(f.cosm[0][i]);
  mass *= kTwoPi;
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw NumericalError(
        "transfer step: evolved density lost all mass (grid/beta mismatch)");
  const double inv = 1.0 / mass;
  for (auto& v : f.cosm)
    for (double& x : v) x *= inv;
  for (auto& v : f.sinm)
    for (double& x : v) x *= inv;
  f.log_norm += std::log(mass);
}

// analytic kernel slice e^{-beta p.n} decomposed into azimuthal modes
ModeFunction delta_slice(const TransferOperator& op, const HPoint& p) {
  const PolarGrid& g = op.grid;
  ModeFunction f = ModeFunction::zero(g);
  const double b_space = std::hypot(p[1], p[2]);
  const double phi0 = (b_space > 0.0) ? std::atan2(p[2], p[1]) : 0.0;
  const double rho_p = acosh1p(std::max(0.0, p[0] - 1.0));
  std::vector<double> kap(g.n_modes);
  for (int i = 0; i < g.n_rho(); ++i) {
    const double pref = std::exp(-op.beta * std::cosh(g.rho[i] - rho_p));
    if (pref == 0.0) continue;
    scaled_bessel_i(op.beta * std::sinh(g.rho[i]) * b_space, g.n_modes - 1,
                    kap.data());
    f.cosm[0][i] = pref * kap[0];
    for (int m = 1; m < g.n_modes; ++m) {
      f.cosm[m][i] = 2.0 * pref * kap[m] * std::cos(m * phi0);
      f.sinm[m][i] = 2.0 * pref * kap[m] * std::sin(m * phi0);
    }
  }
  return f;
}

// on-grid spike for a zero-step delta boundary
ModeFunction delta_spike(const PolarGrid& g, const HPoint& p) {
  ModeFunction f = ModeFunction::zero(g);
  const double rho_p = acosh1p(std::max(0.0, p[0] - 1.0));
  const double b_space = std::hypot(p[1], p[2]);
  const double phi0 = (b_space > 0.0) ? std::atan2(p[2], p[1]) : 0.0;
  int i0 = 0;
  for (int i = 1; i < g.n_rho(); ++i)
    if (std::abs(g.rho[i] - rho_p) < std::abs(g.rho[i0] - rho_p)) i0 = i;
  f.cosm[0][i0] = 1.0 / (kTwoPi * g.weight[i0]);
  for (int m = 1; m < g.n_modes; ++m) {
    f.cosm[m][i0] = std::cos(m * phi0) / (M_PI * g.weight[i0]);
    f.sinm[m][i0] = std::sin(m * phi0) / (M_PI * g.weight[i0]);
  }
  return f;
}

// C = A * diag(w) * B for n x n row-major matrices
void weighted_matmul(const std::vector<double>& a, const std::vector<double>& w,
                     const std::vector<double>& b, int n,
                     std::vector<double>& out) {
  out.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    const double* arow = a.data() + static_cast<std::size_t>(i) * n;
    double* orow = out.data() + static_cast<std::size_t>(i) * n;
    for (int k = 0; k < n; ++k) {
      const double f = arow[k] * w[k];
      if (f == 0.0) continue;
      const double* brow = b.data() + static_cast<std::size_t>(k) * n;
      for (int j = 0; j < n; ++j) orow[j] += f * brow[j];
    }
  }
}

// mass fraction of the mode-0 density within `margin` of the grid edge;
// once the evolved density reaches the wall the truncation is no longer
// a tail effect and downstream observables are meaningless
double wall_mass_fraction(const PolarGrid& g, const std::vector<double>& f,
                          double margin = 2.0) {
  double total = 0.0, edge = 0.0;
  for (int i = 0; i < g.n_rho(); ++i) {
    const double m = g.weight[i] * std::abs(f[i]);
    total += m;
    if (g.rho[i] > g.rho_max - margin) edge += m;
  }
  return total > 0.0 ? edge / total : 0.0;
}

constexpr double kWallMassLimit = 2e-2;

}  // namespace

PolarGrid PolarGrid::make(double rho_max, int n_rho, int n_modes) {
  if (!(rho_max > 0.0) || n_rho < 8 || n_modes < 1)
    throw ConfigError("PolarGrid: need rho_max > 0, n_rho >= 8, n_modes >= 1");
  PolarGrid g;
  g.rho_max = rho_max;
  g.n_modes = n_modes;
  const GaussLegendre rule(n_rho);
  g.rho.resize(n_rho);
  g.weight.resize(n_rho);
  for (int i = 0; i < n_rho; ++i) {
    g.rho[i] = rule.node(i, 0.0, rho_max);
    g.weight[i] = rule.weight(i, 0.0, rho_max) * std::sinh(g.rho[i]);
  }
  return g;
}

double PolarGrid::self_check() const {
  double q = 0.0;
  for (int i = 0; i < n_rho(); ++i) q += weight[i] * std::exp(-std::cosh(rho[i]));
  const double exact = std::exp(-1.0) - std::exp(-std::cosh(rho_max));
  return std::abs(q - exact);
}

ModeFunction ModeFunction::zero(const PolarGrid& g) {
  ModeFunction f;
  f.cosm.assign(g.n_modes, std::vector<double>(g.n_rho(), 0.0));
  f.sinm.assign(g.n_modes, std::vector<double>(g.n_rho(), 0.0));
  return f;
}

bool ModeFunction::rotation_invariant(double tol) const {
  for (std::size_t m = 1; m < cosm.size(); ++m) {
    for (double v : cosm[m])
      if (std::abs(v) > tol) return false;
    for (double v : sinm[m])
      if (std::abs(v) > tol) return false;
  }
  return true;
}

TransferOperator build_operator(double beta, const PolarGrid& grid,
                                int n_threads) {
  if (!(beta > 0.0)) throw ConfigError("build_operator: beta must be > 0");
  TransferOperator op;
  op.grid = grid;
  op.beta = beta;
  const int n = grid.n_rho();
  op.modes.assign(grid.n_modes,
                  std::vector<double>(static_cast<std::size_t>(n) * n, 0.0));
  parallel_for_ranges(0, n, n_threads, [&](int lo, int hi) {
    std::vector<double> kap(grid.n_modes);
    for (int i = lo; i < hi; ++i)
      for (int j = 0; j <= i; ++j) {
        kernel_column(beta, grid.rho[i], grid.rho[j], grid.n_modes, kap.data());
        for (int m = 0; m < grid.n_modes; ++m) {
          op.modes[m][static_cast<std::size_t>(i) * n + j] = kap[m];
          op.modes[m][static_cast<std::size_t>(j) * n + i] = kap[m];
        }
      }
  });
  return op;
}

std::vector<double> bond_weighted_mode(const TransferOperator& op, int m) {
  const PolarGrid& g = op.grid;
  const int n = g.n_rho();
  std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
  const int m_hi = m + 1;
  std::vector<double> kap(m_hi + 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double pref = std::exp(-op.beta * std::cosh(g.rho[i] - g.rho[j]));
      if (pref == 0.0) continue;
      const double a = std::cosh(g.rho[i]) * std::cosh(g.rho[j]);
      const double b = std::sinh(g.rho[i]) * std::sinh(g.rho[j]);
      scaled_bessel_i(op.beta * b, m_hi, kap.data());
      const double i_lo = kap[m > 0 ? m - 1 : 1];
      out[static_cast<std::size_t>(i) * n + j] =
          pref * (a * kap[m] - 0.5 * b * (i_lo + kap[m + 1]));
    }
  return out;
}

BoundaryState BoundaryState::delta_at(const HPoint& p) {
  BoundaryState b;
  b.kind = Kind::DeltaAt;
  b.point = p;
  return b;
}

BoundaryState BoundaryState::free_weight() {
  BoundaryState b;
  b.kind = Kind::FreeWeight;
  return b;
}

BoundaryState BoundaryState::custom(std::vector<double> radial_density) {
  BoundaryState b;
  b.kind = Kind::CustomDensity;
  b.density = std::move(radial_density);
  return b;
}

ModeFunction propagate(const TransferOperator& op, const BoundaryState& bc,
                       int steps) {
  if (steps < 0) throw ConfigError("propagate: steps must be >= 0");
  const PolarGrid& g = op.grid;
  ModeFunction f = ModeFunction::zero(g);

  switch (bc.kind) {
    case BoundaryState::Kind::FreeWeight: {
      // T 1 = (2 pi e^-beta / beta) 1 exactly; iterating on the truncated
      // grid erodes from the edge instead, so apply the identity
      for (double& v : f.cosm[0]) v = 1.0;
      f.log_norm = steps * (std::log(kTwoPi) - op.beta - std::log(op.beta));
      return f;
    }
    case BoundaryState::Kind::DeltaAt: {
      if (bc.point.dim() != 2)
        throw ConfigError("propagate: chain boundaries live on H_2");
      if (steps == 0) return delta_spike(g, bc.point);
      f = delta_slice(op, bc.point);
      break;
    }
    case BoundaryState::Kind::CustomDensity: {
      if (static_cast<int>(bc.density.size()) != g.n_rho())
        throw ConfigError("propagate: custom density size mismatch");
      double mass = 0.0;
      for (int i = 0; i < g.n_rho(); ++i) {
        if (bc.density[i] < 0.0)
          throw ConfigError("propagate: custom density must be nonnegative");
        mass += g.weight[i] * bc.density[i];
      }
      if (!(mass > 0.0))
        throw ConfigError("propagate: custom density not normalizable");
      f.cosm[0] = bc.density;
      if (steps == 0) return f;
      break;
    }
  }

  // normalize the first application, then keep stepping
  {
    double mass = 0.0;
    for (int i = 0; i < g.n_rho(); ++i)
      mass += g.weight[i] * std::abs(f.cosm[0][i]);
    mass *= kTwoPi;
    if (!(mass > 0.0))
      throw NumericalError("propagate: boundary slice carries no mass");
    for (auto& v : f.cosm)
      for (double& x : v) x /= mass;
    for (auto& v : f.sinm)
      for (double& x : v) x /= mass;
    f.log_norm += std::log(mass);
  }
  const int remaining = (bc.kind == BoundaryState::Kind::DeltaAt) ? steps - 1 : steps;
  for (int k = 0; k < remaining; ++k) step(op, f);
  // a delta-started density is compact; once its drift reaches the wall the
  // truncation stops being a tail effect (custom densities may legitimately
  // carry edge mass and are the caller's responsibility)
  if (bc.kind == BoundaryState::Kind::DeltaAt &&
      wall_mass_fraction(g, f.cosm[0]) > kWallMassLimit)
    throw NumericalError(
        "propagate: evolved density reached the grid wall; enlarge rho_max "
        "for this beta/length (grid/beta mismatch)");
  return f;
}

std::vector<double> SiteMarginal::radial_density() const {
  const int n = grid.n_rho();
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double v = left.cosm[0][i] * right.cosm[0][i];
    for (std::size_t m = 1; m < left.cosm.size(); ++m)
      v += 0.5 * (left.cosm[m][i] * right.cosm[m][i] +
                  left.sinm[m][i] * right.sinm[m][i]);
    out[i] = v;
  }
  double z = 0.0;
  for (int i = 0; i < n; ++i) z += grid.weight[i] * out[i];
  z *= kTwoPi;
  if (!(z > 0.0) || !std::isfinite(z))
    throw NumericalError("SiteMarginal: non-normalizable marginal");
  for (double& v : out) v /= z;
  return out;
}

std::vector<double> SiteMarginal::values(int n_phi) const {
  const int n = grid.n_rho();
  std::vector<double> out(static_cast<std::size_t>(n) * n_phi);
  double z = 0.0;
  const double dphi = kTwoPi / n_phi;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n_phi; ++k) {
      const double phi = dphi * k;
      double lv = left.cosm[0][i], rv = right.cosm[0][i];
      for (std::size_t m = 1; m < left.cosm.size(); ++m) {
        const double cm = std::cos(m * phi), sm = std::sin(m * phi);
        lv += left.cosm[m][i] * cm + left.sinm[m][i] * sm;
        rv += right.cosm[m][i] * cm + right.sinm[m][i] * sm;
      }
      const double v = lv * rv;
      out[static_cast<std::size_t>(i) * n_phi + k] = v;
      z += grid.weight[i] * dphi * v;
    }
  if (!(z > 0.0) || !std::isfinite(z))
    throw NumericalError("SiteMarginal: non-normalizable marginal");
  for (double& v : out) v /= z;
  return out;
}

double SiteMarginal::expectation(int n_phi,
                                 double (*f)(double, double, const void*),
                                 const void* ctx) const {
  const std::vector<double> v = values(n_phi);
  const double dphi = kTwoPi / n_phi;
  double s = 0.0;
  for (int i = 0; i < grid.n_rho(); ++i)
    for (int k = 0; k < n_phi; ++k)
      s += grid.weight[i] * dphi *
           v[static_cast<std::size_t>(i) * n_phi + k] *
           f(grid.rho[i], dphi * k, ctx);
  return s;
}

SiteMarginal evolve(const TransferOperator& op, const BoundaryState& left,
                    const BoundaryState& right, int L_left, int L_right) {
  SiteMarginal m;
  m.grid = op.grid;
  m.left = propagate(op, left, L_left);
  m.right = propagate(op, right, L_right);
  return m;
}

double te_phi_average(double alpha, double rho) {
  const double a = std::sinh(alpha) * std::cosh(rho);
  const double b = std::cosh(alpha) * std::sinh(rho);
  if (b < 1e-300) return std::tanh(a);

  const double c = a / b;
  double arc;
  if (c >= 1.0)
    arc = 1.0;
  else if (c <= -1.0)
    arc = -1.0;
  else
    arc = 1.0 - (2.0 / M_PI) * std::acos(c);

  // correction integral over the window |a - b cos(phi)| <= kTanhWindow;
  // the integrand tanh - sign jumps at the sign transition, so the window
  // is split there and each smooth side gets its own rule
  const double lo_arg = (a + kTanhWindow) / b;
  const double hi_arg = (a - kTanhWindow) / b;
  const double phi_lo =
      lo_arg >= 1.0 ? 0.0 : (lo_arg <= -1.0 ? M_PI : std::acos(lo_arg));
  const double phi_hi =
      hi_arg >= 1.0 ? 0.0 : (hi_arg <= -1.0 ? M_PI : std::acos(hi_arg));
  if (phi_hi <= phi_lo) return arc;

  const GaussLegendre& rule = window_rule();
  const auto segment = [&](double p0, double p1) {
    double s = 0.0;
    for (int q = 0; q < rule.size(); ++q) {
      const double phi = rule.node(q, p0, p1);
      const double x = a - b * std::cos(phi);
      const double sgn = x >= 0.0 ? 1.0 : -1.0;
      s += rule.weight(q, p0, p1) * (std::tanh(x) - sgn);
    }
    return s;
  };
  double corr;
  if (c > -1.0 && c < 1.0) {
    const double phi_c = std::acos(c);
    if (phi_c > phi_lo && phi_c < phi_hi)
      corr = segment(phi_lo, phi_c) + segment(phi_c, phi_hi);
    else
      corr = segment(phi_lo, phi_hi);
  } else {
    corr = segment(phi_lo, phi_hi);
  }
  return arc + corr / M_PI;
}

double expectation_Te(const TransferOperator& op, const BoundaryState& left,
                      const BoundaryState& right, int L_left, int L_right,
                      double alpha) {
  const SiteMarginal m = evolve(op, left, right, L_left, L_right);
  if (m.rotation_invariant()) {
    double num = 0.0, den = 0.0;
    for (int i = 0; i < op.grid.n_rho(); ++i) {
      const double w = op.grid.weight[i] * m.left.cosm[0][i] * m.right.cosm[0][i];
      num += w * te_phi_average(alpha, op.grid.rho[i]);
      den += w;
    }
    if (!(den > 0.0) || !std::isfinite(den))
      throw NumericalError("expectation_Te: non-normalizable marginal");
    return num / den;
  }
  struct Ctx {
    double sh, ch;
  } ctx{std::sinh(alpha), std::cosh(alpha)};
  const int n_phi = std::max(512, 8 * op.grid.n_modes);
  return m.expectation(
      n_phi,
      [](double rho, double phi, const void* p) {
        const Ctx& c = *static_cast<const Ctx*>(p);
        return std::tanh(c.sh * std::cosh(rho) -
                         c.ch * std::sinh(rho) * std::cos(phi));
      },
      &ctx);
}

double limit_formula(double alpha) {
  return 1.0 - (2.0 / M_PI) * std::acos(std::tanh(alpha));
}

double invariant_pair_expectation(const TransferOperator& op,
                                  const BoundaryState& left, int L_left,
                                  const BoundaryState& right, int L_right,
                                  int x) {
  if (x < 0 || x > 8)
    throw ConfigError("invariant_pair_expectation: x must be in 0..8");
  if (x == 0) return 1.0;
  const ModeFunction fl = propagate(op, left, L_left);
  const ModeFunction fr = propagate(op, right, L_right);
  if (!fl.rotation_invariant() || !fr.rotation_invariant())
    throw ConfigError(
        "invariant_pair_expectation: boundaries must be rotation invariant");
  if (op.grid.n_modes < 2)
    throw ConfigError("invariant_pair_expectation: need n_modes >= 2");

  // <n0.nx> = [int fl (cosh(dr) A_x + sinh sinh' D_x) fr] / [int fl A_x fr]
  // with A_x the mode-0 x-step chain and D_x = A_x - B_x (mode-0 minus
  // mode-1 chains).  The naive cosh cosh' A - sinh sinh' B form cancels
  // catastrophically at large radius, so D is built by its own positive
  // recursion D_k = K0 W D_{k-1} + (K0 - K1) W B_{k-1} seeded with the
  // stable Bessel difference.
  const int n = op.grid.n_rho();
  const std::vector<double>& w = op.grid.weight;

  std::vector<double> diff1(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      const double pref =
          std::exp(-op.beta * std::cosh(op.grid.rho[i] - op.grid.rho[j]));
      if (pref == 0.0) continue;
      const double z =
          op.beta * std::sinh(op.grid.rho[i]) * std::sinh(op.grid.rho[j]);
      const double v = pref * scaled_bessel_i0_minus_i1(z);
      diff1[static_cast<std::size_t>(i) * n + j] = v;
      diff1[static_cast<std::size_t>(j) * n + i] = v;
    }

  std::vector<double> a = op.modes[0];
  std::vector<double> b = op.modes[1];
  std::vector<double> d = diff1;
  std::vector<double> tmp1, tmp2;
  for (int k = 1; k < x; ++k) {
    weighted_matmul(op.modes[0], w, d, n, tmp1);
    weighted_matmul(diff1, w, b, n, tmp2);
    for (std::size_t e = 0; e < d.size(); ++e) d[e] = tmp1[e] + tmp2[e];
    weighted_matmul(op.modes[0], w, a, n, tmp1);
    a.swap(tmp1);
    weighted_matmul(op.modes[1], w, b, n, tmp1);
    b.swap(tmp1);
  }

  double num = 0.0, z_norm = 0.0;
  for (int i = 0; i < n; ++i) {
    const double li = w[i] * fl.cosm[0][i];
    if (li == 0.0) continue;
    const double shi = std::sinh(op.grid.rho[i]);
    const double* arow = a.data() + static_cast<std::size_t>(i) * n;
    const double* drow = d.data() + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      const double rj = w[j] * fr.cosm[0][j];
      if (rj == 0.0) continue;
      const double adr = arow[j];
      if (adr == 0.0 && drow[j] == 0.0) continue;
      const double cosh_dr = std::cosh(op.grid.rho[i] - op.grid.rho[j]);
      num += li * rj *
             (cosh_dr * adr + shi * std::sinh(op.grid.rho[j]) * drow[j]);
      z_norm += li * rj * adr;
    }
  }
  if (!(z_norm > 0.0) || !std::isfinite(z_norm))
    throw NumericalError("invariant_pair_expectation: vanishing normalization");
  return num / z_norm;
}

std::vector<BcDependenceRow> bc_dependence_report(const TransferOperator& op,
                                                  int L,
                                                  std::span<const int> xs) {
  if (L < 1) throw ConfigError("bc_dependence_report: L must be >= 1");
  const BoundaryState delta = BoundaryState::delta_at(HPoint::origin(2));
  const BoundaryState free_bc = BoundaryState::free_weight();

  std::vector<BcDependenceRow> rows;
  for (int x : xs) {
    BcDependenceRow r;
    r.x = x;
    if (x == 0) {
      r.value_delta = r.value_free = r.value_delta_2L = r.value_free_2L = 1.0;
      r.gap = r.gap_2L = 0.0;
      r.gap_ratio = 1.0;
      r.stable = true;
      rows.push_back(r);
      continue;
    }
    r.value_delta = invariant_pair_expectation(op, delta, L, delta, L, x);
    r.value_free = invariant_pair_expectation(op, delta, L, free_bc, L, x);
    r.value_delta_2L =
        invariant_pair_expectation(op, delta, 2 * L, delta, 2 * L, x);
    r.value_free_2L =
        invariant_pair_expectation(op, delta, 2 * L, free_bc, 2 * L, x);
    r.gap = r.value_delta - r.value_free;
    r.gap_2L = r.value_delta_2L - r.value_free_2L;
    r.gap_ratio = (r.gap != 0.0) ? r.gap_2L / r.gap : 1.0;
    const double drift = std::max(std::abs(r.value_delta_2L - r.value_delta),
                                  std::abs(r.value_free_2L - r.value_free));
    r.max_rel_drift = (r.gap != 0.0) ? drift / std::abs(r.gap) : 0.0;
    r.stable = r.max_rel_drift < 0.10;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace hypsig
