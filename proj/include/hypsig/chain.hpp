#pragma once

#include <span>
#include <vector>

#include "hypsig/minkowski.hpp"

namespace hypsig {

// Quadrature grid for the invariant measure on H_2 in polar coordinates:
// Gauss-Legendre nodes in rho on [0, rho_max] with the sinh(rho) measure
// factor folded into the weights, plus the azimuthal mode count.
struct PolarGrid {
  std::vector<double> rho;
  std::vector<double> weight;  // GL weight * sinh(rho)
  int n_modes = 64;
  double rho_max = 40.0;

  static PolarGrid make(double rho_max, int n_rho = 400, int n_modes = 64);
  static double default_rho_max(double beta) { return 30.0 + 10.0 / beta; }

  int n_rho() const { return static_cast<int>(rho.size()); }
  // |quadrature - exact| for the calibration integral of e^{-cosh rho};
  // must stay below 1e-10 at default resolution.
  double self_check() const;
};

// Azimuthal Fourier components of a function on the grid:
//   f(rho, phi) = f_0(rho) + sum_{m>=1} f_m^cos(rho) cos(m phi)
//                          + sum_{m>=1} f_m^sin(rho) sin(m phi)
struct ModeFunction {
  std::vector<std::vector<double>> cosm;  // [m][i], m = 0..n_modes-1
  std::vector<std::vector<double>> sinm;  // [m][i], sinm[0] unused (zero)
  double log_norm = 0.0;                  // accumulated renormalization

  static ModeFunction zero(const PolarGrid& g);
  bool rotation_invariant(double tol = 0.0) const;
};

// Discretized transfer operator with kernel e^{-beta n.n'}: one kernel
// matrix per azimuthal mode,
//   K_m(rho, rho') = e^{-beta cosh(rho-rho')} * [e^{-z} I_m(z)],
//   z = beta sinh(rho) sinh(rho'),
// acting as (T f)_m(i) = 2 pi sum_j K_m(i,j) w_j f_m(j) on both the cos and
// sin components.  Mode matrices are independent; construction parallelizes
// over rows.
struct TransferOperator {
  PolarGrid grid;
  double beta = 1.0;
  std::vector<std::vector<double>> modes;  // modes[m]: n_rho x n_rho row-major

  double kernel(int m, int i, int j) const {
    return modes[m][static_cast<std::size_t>(i) * grid.n_rho() + j];
  }
};

TransferOperator build_operator(double beta, const PolarGrid& grid,
                                int n_threads = 1);

// Mode matrices of the bond-weighted kernel (n.n') e^{-beta n.n'}, used for
// adjacent two-point functions:
//   A_m = a K_m - b (K_{m-1} + K_{m+1})/2 with a = cosh cosh', b = sinh sinh'.
std::vector<double> bond_weighted_mode(const TransferOperator& op, int m);

// Boundary condition at a chain end.
struct BoundaryState {
  enum class Kind { DeltaAt, FreeWeight, CustomDensity };
  Kind kind = Kind::FreeWeight;
  HPoint point;                 // DeltaAt
  std::vector<double> density;  // CustomDensity: rotation-invariant radial values

  static BoundaryState delta_at(const HPoint& p);
  static BoundaryState free_weight();
  static BoundaryState custom(std::vector<double> radial_density);
};

// T^steps applied to the boundary state, renormalized each step by the
// mode-0 mass (log accumulated).  FreeWeight is an exact eigenfunction,
// T 1 = (2 pi e^{-beta}/beta) 1, and is propagated by that identity; the
// iterated form erodes from the grid edge and is numerically meaningless
// for long chains.
ModeFunction propagate(const TransferOperator& op, const BoundaryState& bc,
                       int steps);

// Normalized marginal density of the spin at the junction site of a chain
// with L_left transfer steps to the left boundary and L_right to the right.
struct SiteMarginal {
  PolarGrid grid;
  ModeFunction left, right;

  bool rotation_invariant() const {
    return left.rotation_invariant() && right.rotation_invariant();
  }
  // mode-0 radial density, normalized against the grid weights (with the
  // 2 pi azimuthal factor): sum_i w_i * 2pi * radial[i] = 1
  std::vector<double> radial_density() const;
  // full density on the (rho, phi) tensor grid, phi_k = 2 pi k / n_phi
  std::vector<double> values(int n_phi) const;
  // expectation of a smooth observable F(rho, phi) against the marginal
  double expectation(int n_phi, double (*f)(double rho, double phi,
                                            const void* ctx),
                     const void* ctx) const;
};

SiteMarginal evolve(const TransferOperator& op, const BoundaryState& left,
                    const BoundaryState& right, int L_left, int L_right);

// (1/2pi) Int_0^{2pi} tanh(sinh(a) cosh(rho) - cosh(a) sinh(rho) cos(phi)) dphi
// split into the exact arc-measure part and a localized correction so the
// result stays accurate when the argument is large and nearly a step in phi.
double te_phi_average(double alpha, double rho);

// <tanh(n(0).e_alpha)> for the chain marginal
double expectation_Te(const TransferOperator& op, const BoundaryState& left,
                      const BoundaryState& right, int L_left, int L_right,
                      double alpha);

// The closed-form thermodynamic limit 1 - (2/pi) arccos(tanh(alpha)).
double limit_formula(double alpha);

// <n(0).n(x)> for two sites x bonds apart, rotation-invariant boundaries at
// L_left steps to the left of site 0 and L_right to the right of site x.
double invariant_pair_expectation(const TransferOperator& op,
                                  const BoundaryState& left, int L_left,
                                  const BoundaryState& right, int L_right,
                                  int x);

struct BcDependenceRow {
  int x = 0;
  double value_delta = 0.0;  // right end DeltaAt(n-up)
  double value_free = 0.0;   // right end FreeWeight
  double gap = 0.0;
  double value_delta_2L = 0.0;
  double value_free_2L = 0.0;
  double gap_2L = 0.0;
  double gap_ratio = 1.0;         // gap_2L / gap
  double max_rel_drift = 0.0;     // observable change L -> 2L over |gap|
  bool stable = true;             // drift below 10% of the gap
};

// Boundary-condition dependence of n(0).n(x) at matched distances L on both
// sides of the pair, with the L -> 2L stability diagnostic.
std::vector<BcDependenceRow> bc_dependence_report(const TransferOperator& op,
                                                  int L,
                                                  std::span<const int> xs);

}  // namespace hypsig
