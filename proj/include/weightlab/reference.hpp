#pragma once

#include "weightlab/grid.hpp"
#include "weightlab/norms.hpp"
#include "weightlab/weights.hpp"

// Naive, strictly sequential implementations kept as test oracles. Each sup
// walks enumerate_cubes in order, evaluates the same per-cube functional the
// production scan maximizes, and keeps the first witness on ties. The
// production (OpenMP) paths must agree with these bit-for-bit.
namespace weightlab {
namespace ref {

SupResult ap_constant(const Weight& w, double p, CubeFamily fam);
SupResult a1_constant(const Weight& w, CubeFamily fam);
SupResult ainfty_constant(const Weight& w, CubeFamily fam);

double lebesgue_norm(const GridFunction& f, const Weight& w, double p);
double weak_lebesgue_norm(const GridFunction& f, const Weight& w, double p);
SupResult morrey_norm(const GridFunction& f, const Weight& w, double p, double q,
                      CubeFamily fam);
SupResult weak_morrey_norm(const GridFunction& f, const Weight& w, double p, double q,
                           CubeFamily fam);
SupResult bmo_norm(const GridFunction& f, const Weight& w, double p, CubeFamily fam);
SupResult bmo_inf_norm(const GridFunction& f, const Weight& w, CubeFamily fam);

GridFunction maximal_function(const GridFunction& f, CubeFamily fam);

}  // namespace ref
}  // namespace weightlab
