#pragma once

#include <string>

#include "weightlab/grid.hpp"
#include "weightlab/norms.hpp"
#include "weightlab/operators.hpp"
#include "weightlab/weights.hpp"

namespace weightlab {

// Text selectors used by the CLI and by report echoes. Every parse_* throws
// ParseError on malformed input; every selector renders back to a canonical
// string, and render(parse(s)) == render(parse(render(parse(s)))) holds.

// "1d:<lo>,<hi>,<cells>" or "2d:<lo0>,<hi0>,<cells0>,<lo1>,<hi1>,<cells1>".
Grid parse_grid(const std::string&);

// "ALL" or "DYADIC" (case-insensitive).
CubeFamily parse_family(const std::string&);

// Weight selectors: "const:<c>", "step:<v1>,<v2>@<x0>", "power:<a>",
// "file:<path>" (a weightlab-grid file carrying its own grid).
struct WeightSelector {
  enum class Kind { Const, Step, Power, File } kind = Kind::Const;
  double c = 1.0;          // Const
  double v1 = 1.0, v2 = 1.0, x0 = 0.0;  // Step
  double a = 0.0;          // Power
  std::string path;        // File

  static WeightSelector parse(const std::string&);
  std::string render() const;
  // File selectors carry their own grid; pass nullptr to accept it, or a
  // grid that must match (ParseError otherwise).
  Weight build(const Grid* g) const;
  bool is_file() const { return kind == Kind::File; }
};

// Function selectors: the weight forms plus "indicator:<a>,<b>" (cell
// averages of the indicator of [a,b] on each axis, i.e. overlap fractions).
struct FunctionSelector {
  enum class Kind { Const, Step, Power, File, Indicator } kind = Kind::Const;
  double c = 1.0;
  double v1 = 1.0, v2 = 1.0, x0 = 0.0;
  double a = 0.0;
  double lo = 0.0, hi = 1.0;  // Indicator
  std::string path;

  static FunctionSelector parse(const std::string&);
  std::string render() const;
  GridFunction build(const Grid* g) const;
  bool is_file() const { return kind == Kind::File; }
};

// "Lp:<p>", "wLp:<p>", "Morrey:<p>,<q>", "wMorrey:<p>,<q>", "BMO:<p>",
// "BMOinf" (exponent orderings validated at parse time).
NormSpec parse_norm_spec(const std::string&);

// "const:<c>", "poly:<e>", "window:<a>,<b>", "table:<path>" (two columns,
// t ascending).
PsiProfile parse_psi(const std::string&);

// "box", "tent", "gauss-trunc:<R>".
RadialProfile parse_radial(const std::string&);

}  // namespace weightlab
