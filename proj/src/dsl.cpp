#include "weightlab/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "weightlab/errors.hpp"

namespace weightlab {

namespace {

[[noreturn]] void bad(const std::string& what, const std::string& s) {
  throw ParseError(what + ": '" + s + "'");
}

double parse_num(const std::string& tok, const std::string& ctx) {
  if (tok.empty()) bad("empty number in " + ctx, tok);
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size()) bad("malformed number in " + ctx, tok);
  return v;
}

int parse_int(const std::string& tok, const std::string& ctx) {
  if (tok.empty()) bad("empty integer in " + ctx, tok);
  char* end = nullptr;
  const long v = std::strtol(tok.c_str(), &end, 10);
  if (end != tok.c_str() + tok.size()) bad("malformed integer in " + ctx, tok);
  return static_cast<int>(v);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (true) {
    const size_t nxt = s.find(sep, pos);
    if (nxt == std::string::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, nxt - pos));
    pos = nxt + 1;
  }
}

// Splits "head:rest"; rest empty when there is no colon.
void head_rest(const std::string& s, std::string& head, std::string& rest) {
  const size_t pos = s.find(':');
  if (pos == std::string::npos) {
    head = s;
    rest.clear();
  } else {
    head = s.substr(0, pos);
    rest = s.substr(pos + 1);
  }
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Per-axis overlap fraction of [lo, hi] with cell i.
double overlap_fraction(const Grid& g, int axis, int i, double lo, double hi) {
  const double u = g.edge(axis, i), v = g.edge(axis, i + 1);
  const double cover = std::min(hi, v) - std::max(lo, u);
  if (cover <= 0.0) return 0.0;
  return std::min(1.0, cover / (v - u));
}

}  // namespace

Grid parse_grid(const std::string& s) {
  std::string head, rest;
  head_rest(s, head, rest);
  const std::vector<std::string> t = split(rest, ',');
  try {
    if (head == "1d") {
      if (t.size() != 3) bad("grid selector needs 1d:lo,hi,cells", s);
      return Grid::make_1d(parse_num(t[0], "grid"), parse_num(t[1], "grid"),
                           parse_int(t[2], "grid"));
    }
    if (head == "2d") {
      if (t.size() != 6) bad("grid selector needs 2d:lo0,hi0,cells0,lo1,hi1,cells1", s);
      return Grid::make_2d(parse_num(t[0], "grid"), parse_num(t[1], "grid"),
                           parse_int(t[2], "grid"), parse_num(t[3], "grid"),
                           parse_num(t[4], "grid"), parse_int(t[5], "grid"));
    }
  } catch (const std::invalid_argument& e) {
    bad(std::string("invalid grid: ") + e.what(), s);
  } catch (const std::domain_error& e) {
    bad(std::string("invalid grid: ") + e.what(), s);
  }
  bad("unknown grid selector (expected 1d: or 2d:)", s);
}

CubeFamily parse_family(const std::string& s) {
  const std::string l = lower(s);
  if (l == "all") return CubeFamily::All;
  if (l == "dyadic") return CubeFamily::Dyadic;
  bad("unknown cube family (expected ALL or DYADIC)", s);
}

WeightSelector WeightSelector::parse(const std::string& s) {
  std::string head, rest;
  head_rest(s, head, rest);
  WeightSelector w;
  if (head == "const") {
    w.kind = Kind::Const;
    w.c = parse_num(rest, "const weight");
    if (!(w.c >= 0.0)) bad("constant weight must be nonnegative", s);
  } else if (head == "step") {
    w.kind = Kind::Step;
    const size_t at = rest.find('@');
    if (at == std::string::npos) bad("step selector needs step:v1,v2@x0", s);
    const std::vector<std::string> t = split(rest.substr(0, at), ',');
    if (t.size() != 2) bad("step selector needs step:v1,v2@x0", s);
    w.v1 = parse_num(t[0], "step weight");
    w.v2 = parse_num(t[1], "step weight");
    w.x0 = parse_num(rest.substr(at + 1), "step weight");
    if (!(w.v1 >= 0.0 && w.v2 >= 0.0)) bad("step weight values must be nonnegative", s);
  } else if (head == "power") {
    w.kind = Kind::Power;
    w.a = parse_num(rest, "power weight");
    if (!(w.a > -1.0)) bad("power weight exponent must be > -1", s);
  } else if (head == "file") {
    if (rest.empty()) bad("file selector needs a path", s);
    w.kind = Kind::File;
    w.path = rest;
  } else {
    bad("unknown weight selector", s);
  }
  return w;
}

std::string WeightSelector::render() const {
  switch (kind) {
    case Kind::Const: return "const:" + fmt_double(c);
    case Kind::Step:
      return "step:" + fmt_double(v1) + "," + fmt_double(v2) + "@" + fmt_double(x0);
    case Kind::Power: return "power:" + fmt_double(a);
    case Kind::File: return "file:" + path;
  }
  return "";
}

Weight WeightSelector::build(const Grid* g) const {
  switch (kind) {
    case Kind::Const:
      if (!g) throw ParseError("const weight needs a grid");
      return Weight::constant(*g, c);
    case Kind::Step:
      if (!g) throw ParseError("step weight needs a grid");
      return Weight::step(*g, v1, v2, x0);
    case Kind::Power:
      if (!g) throw ParseError("power weight needs a grid");
      return Weight::power(*g, a);
    case Kind::File: {
      GridFunction f = read_grid_file(path);
      if (g && !(f.grid == *g))
        throw ParseError("weight file '" + path +
                         "' carries a different grid than the configured one");
      return Weight::from_function(std::move(f));
    }
  }
  throw ParseError("unknown weight selector kind");
}

FunctionSelector FunctionSelector::parse(const std::string& s) {
  std::string head, rest;
  head_rest(s, head, rest);
  FunctionSelector f;
  if (head == "indicator") {
    const std::vector<std::string> t = split(rest, ',');
    if (t.size() != 2) bad("indicator selector needs indicator:a,b", s);
    f.kind = Kind::Indicator;
    f.lo = parse_num(t[0], "indicator");
    f.hi = parse_num(t[1], "indicator");
    if (!(f.hi > f.lo)) bad("indicator needs a < b", s);
    return f;
  }
  // Functions may be negative, so re-validate instead of reusing the weight
  // parser's sign checks.
  if (head == "const") {
    f.kind = Kind::Const;
    f.c = parse_num(rest, "const function");
  } else if (head == "step") {
    const size_t at = rest.find('@');
    if (at == std::string::npos) bad("step selector needs step:v1,v2@x0", s);
    const std::vector<std::string> t = split(rest.substr(0, at), ',');
    if (t.size() != 2) bad("step selector needs step:v1,v2@x0", s);
    f.kind = Kind::Step;
    f.v1 = parse_num(t[0], "step function");
    f.v2 = parse_num(t[1], "step function");
    f.x0 = parse_num(rest.substr(at + 1), "step function");
  } else if (head == "power") {
    f.kind = Kind::Power;
    f.a = parse_num(rest, "power function");
    if (!(f.a > -1.0)) bad("power exponent must be > -1", s);
  } else if (head == "file") {
    if (rest.empty()) bad("file selector needs a path", s);
    f.kind = Kind::File;
    f.path = rest;
  } else {
    bad("unknown function selector", s);
  }
  return f;
}

std::string FunctionSelector::render() const {
  switch (kind) {
    case Kind::Const: return "const:" + fmt_double(c);
    case Kind::Step:
      return "step:" + fmt_double(v1) + "," + fmt_double(v2) + "@" + fmt_double(x0);
    case Kind::Power: return "power:" + fmt_double(a);
    case Kind::File: return "file:" + path;
    case Kind::Indicator: return "indicator:" + fmt_double(lo) + "," + fmt_double(hi);
  }
  return "";
}

GridFunction FunctionSelector::build(const Grid* g) const {
  switch (kind) {
    case Kind::Const:
      if (!g) throw ParseError("const function needs a grid");
      return GridFunction::constant(*g, c);
    case Kind::Step: {
      if (!g) throw ParseError("step function needs a grid");
      // Same cell-average convention as the step weight, but values may be
      // signed: build directly.
      GridFunction f = GridFunction::constant(*g, 0.0);
      for (int i = 0; i < g->cells[0]; ++i) {
        const double u = g->edge(0, i), v = g->edge(0, i + 1);
        double val;
        if (v <= x0) val = v1;
        else if (u >= x0) val = v2;
        else val = (v1 * (x0 - u) + v2 * (v - x0)) / (v - u);
        if (g->dim == 1) {
          f.values[static_cast<size_t>(i)] = val;
        } else {
          for (int j = 0; j < g->cells[1]; ++j) f.at(i, j) = val;
        }
      }
      return f;
    }
    case Kind::Power:
      if (!g) throw ParseError("power function needs a grid");
      return Weight::power(*g, a).values;
    case Kind::File: {
      GridFunction f = read_grid_file(path);
      if (g && !(f.grid == *g))
        throw ParseError("function file '" + path +
                         "' carries a different grid than the configured one");
      return f;
    }
    case Kind::Indicator: {
      if (!g) throw ParseError("indicator function needs a grid");
      GridFunction f = GridFunction::constant(*g, 0.0);
      for (int i = 0; i < g->cells[0]; ++i) {
        const double f0 = overlap_fraction(*g, 0, i, lo, hi);
        if (g->dim == 1) {
          f.values[static_cast<size_t>(i)] = f0;
        } else {
          for (int j = 0; j < g->cells[1]; ++j)
            f.at(i, j) = f0 * overlap_fraction(*g, 1, j, lo, hi);
        }
      }
      return f;
    }
  }
  throw ParseError("unknown function selector kind");
}

NormSpec parse_norm_spec(const std::string& s) {
  std::string head, rest;
  head_rest(s, head, rest);
  try {
    if (head == "Lp") return NormSpec::lebesgue(parse_num(rest, "Lp"));
    if (head == "wLp") return NormSpec::weak_lebesgue(parse_num(rest, "wLp"));
    if (head == "Morrey" || head == "wMorrey") {
      const std::vector<std::string> t = split(rest, ',');
      if (t.size() != 2) bad("Morrey selector needs p,q", s);
      const double p = parse_num(t[0], "Morrey");
      const double q = parse_num(t[1], "Morrey");
      return head == "Morrey" ? NormSpec::morrey(p, q) : NormSpec::weak_morrey(p, q);
    }
    if (head == "BMO") return NormSpec::bmo(parse_num(rest, "BMO"));
    if (head == "BMOinf") {
      if (!rest.empty()) bad("BMOinf takes no exponent", s);
      return NormSpec::bmo_inf();
    }
  } catch (const std::invalid_argument& e) {
    bad(std::string("invalid norm exponents: ") + e.what(), s);
  }
  bad("unknown norm selector", s);
}

PsiProfile parse_psi(const std::string& s) {
  std::string head, rest;
  head_rest(s, head, rest);
  try {
    if (head == "const") return PsiProfile::constant(parse_num(rest, "psi const"));
    if (head == "poly") return PsiProfile::poly(parse_num(rest, "psi poly"));
    if (head == "window") {
      const std::vector<std::string> t = split(rest, ',');
      if (t.size() != 2) bad("window selector needs a,b", s);
      return PsiProfile::window(parse_num(t[0], "psi window"),
                                parse_num(t[1], "psi window"));
    }
    if (head == "table") {
      if (rest.empty()) bad("table selector needs a path", s);
      std::ifstream is(rest);
      if (!is) bad("cannot open profile table", rest);
      std::vector<double> tv, yv;
      double t = 0.0, y = 0.0;
      while (is >> t >> y) {
        tv.push_back(t);
        yv.push_back(y);
      }
      if (!is.eof()) bad("malformed profile table (expected 't value' pairs)", rest);
      return PsiProfile::table(tv, yv);
    }
  } catch (const std::invalid_argument& e) {
    bad(std::string("invalid profile: ") + e.what(), s);
  }
  bad("unknown profile selector", s);
}

RadialProfile parse_radial(const std::string& s) {
  std::string head, rest;
  head_rest(s, head, rest);
  RadialProfile r;
  if (head == "box" && rest.empty()) {
    r.kind = RadialProfile::Kind::Box;
    return r;
  }
  if (head == "tent" && rest.empty()) {
    r.kind = RadialProfile::Kind::Tent;
    return r;
  }
  if (head == "gauss-trunc") {
    r.kind = RadialProfile::Kind::GaussTrunc;
    r.trunc_radius = parse_num(rest, "gauss-trunc");
    if (!(r.trunc_radius > 0.0)) bad("gauss-trunc radius must be positive", s);
    return r;
  }
  bad("unknown radial profile (expected box, tent, gauss-trunc:<R>)", s);
}

}  // namespace weightlab
