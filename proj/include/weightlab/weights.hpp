#pragma once

#include "weightlab/grid.hpp"

namespace weightlab {

// Hoelder conjugate pair: 1/p + 1/p' = 1, with 1 <-> infinity.
struct ConjugateExponent {
  double p = 0.0;
  double p_prime = 0.0;
};
ConjugateExponent conjugate(double p);

// Nonnegative cell-average function. POWER weights |x|^a additionally carry
// their analytic descriptor; their cell values are exact cell averages
// (1D antiderivative formula, with a split at the origin; 2D exact polar
// integration on origin-corner rectangles, adaptive Gauss-Legendre else).
struct Weight {
  GridFunction values;
  enum class Analytic { None, Power } analytic = Analytic::None;
  double power_exponent = 0.0;

  static Weight from_function(GridFunction f);
  static Weight constant(const Grid& g, double c);
  static Weight power(const Grid& g, double a);    // requires a > -1
  static Weight step(const Grid& g, double v1, double v2, double x0);  // jump on axis 0
};

double weighted_measure(const Weight& w, const Cube& q);

// Cellwise (w + eps)^(1 - p'). eps = 0 with a zero cell is a hard error:
// regularize with eps > 0 instead of silently clipping.
Weight dual_weight(const Weight& w, double p, double eps);

// Defining per-cube functionals: the sup scans below maximize exactly these,
// so re-evaluating one on the returned witness reproduces the returned value
// bit for bit.
double ap_product(const Weight& w, double p, const Cube& q);
double a1_ratio(const Weight& w, const Cube& q);
double ainfty_product(const Weight& w, const Cube& q);

// Muckenhoupt constants: sup over the cube family, with witness.
SupResult ap_constant(const Weight& w, double p, CubeFamily fam);      // p in (1, inf)
SupResult a1_constant(const Weight& w, CubeFamily fam);
SupResult ainfty_constant(const Weight& w, CubeFamily fam);

}  // namespace weightlab
