#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "weightlab/grid.hpp"

namespace weightlab {

// Hardy–Littlewood maximal function over the given cube family:
// (Mf)(c) = max over family cubes Q containing c of avg_Q |f|.
// Cellwise Mf >= |f| holds exactly (the singleton cube is in both families).
GridFunction maximal_function(const GridFunction& f, CubeFamily fam);

// Principal-value singular integrals by midpoint summation with the diagonal
// cell excluded. Terms are accumulated in +/- offset pairs, which makes the
// even-to-odd mapping exact (bitwise) on grids symmetric about the origin.
GridFunction hilbert_transform(const GridFunction& f);          // 1D only
GridFunction riesz_transform(const GridFunction& f, int axis);  // 2D only, axis 0 or 1

// Nonnegative, radial, radially non-increasing averaging profile of unit
// mass; scaled copies Phi_eps(x) = eps^{-n} Phi(x/eps) define the averaging
// operator T_eps f = f * Phi_eps.
struct RadialProfile {
  enum class Kind { Box, Tent, GaussTrunc };
  Kind kind = Kind::Box;
  double trunc_radius = 1.0;  // GaussTrunc support radius

  double value(double r) const;  // un-normalized profile height at radius r
  double support_radius() const;
  std::string render() const;
};

// Discrete convolution stencil for one (profile, eps, grid) triple.
// weights[k] is the exact (or Gauss-quadrature) integral of Phi_eps over the
// cell at offsets[k], divided by the total so the weights sum to 1 within
// rounding. Offsets are mirrored from one quadrant, so the stencil is exactly
// symmetric under per-axis sign flips.
struct Stencil {
  std::vector<std::array<int, 2>> offsets;  // [d, 0] in 1D
  std::vector<double> weights;
  // Domination margin: |T_eps f| <= (1 + eta) * Mf cellwise, where eta is
  // computed from the stencil's own level sets (cube-vs-level-set cell
  // count ratio, integrated over weight levels). Symmetric 1D stencils give
  // eta = 0; 2D stencils approach 4/pi - 1.
  double eta = 0.0;
};

Stencil build_stencil(const Grid& g, const RadialProfile& prof, double eps);
GridFunction convolve_radial(const GridFunction& f, const RadialProfile& prof,
                             double eps);

// Report for the pointwise domination |T_eps f| <= (1 + eta) * Mf.
struct DominationReport {
  double eta = 0.0;        // stencil domination margin
  double max_ratio = 0.0;  // max over cells of |T_eps f| / Mf (0/0 counts as 0)
  bool dominated = false;  // max_ratio <= 1 + eta + 1e-9
  // Largest-mass lower envelope Phi >= c1 * indicator(|x| <= c2) fitted from
  // the profile, reported in profile (un-scaled) coordinates.
  double c1 = 0.0;
  double c2 = 0.0;
};

DominationReport maximal_dominates_radial(const GridFunction& f,
                                          const RadialProfile& prof, double eps,
                                          CubeFamily fam);

// Averaging weight psi: [0,1] -> [0, inf) together with its composite
// midpoint quadrature (quad_nodes nodes over the support).
struct PsiProfile {
  enum class Kind { Const, Poly, Window, Table };
  Kind kind = Kind::Const;
  double c0 = 1.0;                 // Const: psi = c0 >= 0
  double expo = 0.0;               // Poly: psi = t^expo, expo >= 0
  double win_a = 0.0, win_b = 1.0; // Window: plain indicator of [a,b]
  std::vector<double> tv, yv;      // Table: piecewise-linear nodes
  int quad_nodes = 1024;

  static PsiProfile constant(double c, int nodes = 1024);
  static PsiProfile poly(double expo, int nodes = 1024);
  static PsiProfile window(double a, double b, int nodes = 1024);
  static PsiProfile table(std::vector<double> t, std::vector<double> y,
                          int nodes = 1024);

  double value(double t) const;
  // Quadrature nodes t_k with weights w_k already including psi(t_k); all
  // integrals below use exactly these nodes, so profile comparisons see the
  // same quadrature on both sides.
  void nodes(std::vector<double>& t, std::vector<double>& w) const;
  double mass() const;                                // int_0^1 psi
  double integral_against_power(double alpha) const;  // int_0^1 t^alpha psi(t) dt
  std::string render() const;
};

// Hardy-type average (U psi f)(x) = int_0^1 psi(t) f(tx) dt. Point values
// f(tx) come from multilinear interpolation of cell-center values with
// coordinates clamped to the domain box. Requires the origin inside the box.
GridFunction hardy_average(const GridFunction& f, const PsiProfile& psi);

// Companion average (V psi f)(x) = int_0^1 psi(t) f(x/t) t^{-n} dt with f
// zero-extended outside the domain box. escape_fraction[c] is the fraction
// of quadrature mass whose sample point x/t left the box.
struct CesaroResult {
  GridFunction values;
  std::vector<double> escape_fraction;
};
CesaroResult cesaro_average(const GridFunction& f, const PsiProfile& psi);

// Multilinear interpolation of cell-center values at point x (clamped).
double interpolate(const GridFunction& f, const std::array<double, 2>& x);

}  // namespace weightlab
