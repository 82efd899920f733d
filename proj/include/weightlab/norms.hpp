#pragma once

#include <string>

#include "weightlab/grid.hpp"
#include "weightlab/weights.hpp"

namespace weightlab {

enum class NormFamily { Lebesgue, WeakLebesgue, Morrey, WeakMorrey, Bmo, BmoInf };

// Validated (family, p, q) triple. CLI syntax: Lp:p, wLp:p, Morrey:p,q,
// wMorrey:p,q, BMO:p, BMOinf.
struct NormSpec {
  NormFamily family = NormFamily::Lebesgue;
  double p = 0.0;
  double q = 0.0;

  static NormSpec lebesgue(double p);        // p >= 1
  static NormSpec weak_lebesgue(double p);   // p >= 1
  static NormSpec morrey(double p, double q);       // 0 < q <= p
  static NormSpec weak_morrey(double p, double q);  // 0 < q <= p
  static NormSpec bmo(double p);             // p >= 1
  static NormSpec bmo_inf();

  std::string render() const;
  bool operator==(const NormSpec&) const = default;
};

// Weighted Lebesgue norm (sum over all cells).
double lebesgue_norm(const GridFunction& f, const Weight& w, double p);
// Weak norm via the finite level scan over the distinct values of |f|; the
// level at value v uses lambda -> v^- semantics, i.e. counts cells with
// |f| >= v at factor v.
double weak_lebesgue_norm(const GridFunction& f, const Weight& w, double p);

// Morrey scale: sup over cubes of w(Q)^(1/p-1/q) (int_Q |f|^q w)^(1/q), and
// the weak variant with the level scan inside each cube. q = p degenerates
// to the sup over cubes of the local (weak-)Lebesgue norm.
SupResult morrey_norm(const GridFunction& f, const Weight& w, double p, double q,
                      CubeFamily fam);
SupResult weak_morrey_norm(const GridFunction& f, const Weight& w, double p, double q,
                           CubeFamily fam);

// Weighted bounded-mean-oscillation scale: for finite p >= 1,
// sup over cubes of ( w(Q)^{-1} int_Q |f - f_Q|^p w^{1-p} )^{1/p}
// (the p = 1 integrand is plain |f - f_Q| dx), and for p = infinity
// sup over cubes of max over cells |f_c - f_Q| / w_c.
SupResult bmo_norm(const GridFunction& f, const Weight& w, double p, CubeFamily fam);
SupResult bmo_inf_norm(const GridFunction& f, const Weight& w, CubeFamily fam);

// Per-cube functionals, bitwise equal to what the sup scans maximize.
double morrey_local(const GridFunction& f, const Weight& w, double p, double q, const Cube&);
double weak_morrey_local(const GridFunction& f, const Weight& w, double p, double q, const Cube&);
double bmo_local(const GridFunction& f, const Weight& w, double p, const Cube&);
double bmo_inf_local(const GridFunction& f, const Weight& w, const Cube&);

// Dispatch on a NormSpec (value only).
double norm_value(const GridFunction& f, const Weight& w, const NormSpec&, CubeFamily fam);

}  // namespace weightlab
