// weightlab command-line front end: constants, norms, and the experiment
// harness, with deterministic CSV/JSON report emission.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "weightlab/dsl.hpp"
#include "weightlab/errors.hpp"
#include "weightlab/experiments.hpp"
#include "weightlab/grid.hpp"
#include "weightlab/norms.hpp"
#include "weightlab/operators.hpp"
#include "weightlab/reports.hpp"
#include "weightlab/weights.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace weightlab;

constexpr int kExitPass = 0;
constexpr int kExitDegenerate = 2;
constexpr int kExitInequality = 3;
constexpr int kExitHypothesis = 4;
constexpr int kExitUsage = 64;

std::string cube_text(const Grid& g, const Cube& c) {
  std::string s = "[" + std::to_string(c.anchor[0]);
  if (g.dim == 2) s += "," + std::to_string(c.anchor[1]);
  s += ";" + std::to_string(c.side) + "]";
  return s;
}

void apply_thread_env() {
#ifdef _OPENMP
  if (const char* env = std::getenv("WEIGHTLAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
    // 0 (or unset) leaves the automatic choice in place.
  }
#endif
}

// Resolves the working grid and weight together: file-backed weights carry
// their own grid, which must agree with an explicitly configured one.
void resolve_weight(const std::string& weight_s, const std::string& grid_s,
                    bool grid_explicit, Grid& g, Weight& w) {
  const WeightSelector ws = WeightSelector::parse(weight_s);
  if (ws.is_file()) {
    std::optional<Grid> want;
    if (grid_explicit) want = parse_grid(grid_s);
    w = ws.build(want ? &*want : nullptr);
    g = w.values.grid;
  } else {
    g = parse_grid(grid_s);
    w = ws.build(&g);
  }
}

void require_positive_cells(const Weight& w) {
  for (const double v : w.values.values)
    if (v == 0.0)
      throw DegenerateWeightError(
          "the weight vanishes on a cell, so its constants are undefined; "
          "regularize the weight first");
}

struct OutputConfig {
  std::string out;
  std::string format = "csv";
};

int emit(const TheoremReport& rep, const OutputConfig& oc) {
  if (!oc.out.empty()) write_report_files(rep, oc.out);
  if (oc.format == "json")
    std::cout << report_to_json(rep);
  else
    std::cout << report_to_csv(rep);
  return rep.all_pass ? kExitPass : kExitInequality;
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_env();

  CLI::App app{"weightlab: Muckenhoupt weight constants, weighted norms, and "
               "the quantitative-inequality experiment harness"};
  app.require_subcommand(1);

  OutputConfig oc;
  std::string grid_s = "1d:-1,1,512";
  std::string family_s = "ALL";
  std::uint64_t seed = 42;

  auto add_common = [&](CLI::App* sub, bool with_family = true) {
    sub->add_option("--grid", grid_s, "grid selector, e.g. 1d:-1,1,512")
        ->capture_default_str();
    if (with_family)
      sub->add_option("--family", family_s, "cube family: ALL or DYADIC")
          ->capture_default_str();
    sub->add_option("--out", oc.out, "write <out>.csv and <out>.json");
    sub->add_option("--format", oc.format, "stdout format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  };

  TheoremReport rep;

  // ---- constant -----------------------------------------------------------
  std::string c_weight = "const:1";
  std::string c_p = "2";
  CLI::App* c_cmd = app.add_subcommand(
      "constant", "Muckenhoupt constant of a weight (witnessed sup)");
  c_cmd->add_option("--weight", c_weight, "weight selector")->capture_default_str();
  c_cmd->add_option("--p", c_p, "exponent: 1, a finite p > 1, or inf")
      ->capture_default_str();
  add_common(c_cmd);
  c_cmd->callback([&] {
    Grid g;
    Weight w;
    resolve_weight(c_weight, grid_s, c_cmd->count("--grid") > 0, g, w);
    const CubeFamily fam = parse_family(family_s);
    require_positive_cells(w);
    rep.id = "constant";
    rep.note("weight", WeightSelector::parse(c_weight).render());
    rep.note("grid", render_grid(g));
    rep.note("family", family_name(fam));
    SupResult r;
    std::string kind, p_echo;
    if (c_p == "1") {
      r = a1_constant(w, fam);
      kind = "a1";
      p_echo = "1";
    } else if (c_p == "inf" || c_p == "infinity") {
      r = ainfty_constant(w, fam);
      kind = "ainfty";
      p_echo = "inf";
    } else {
      char* end = nullptr;
      const double p = std::strtod(c_p.c_str(), &end);
      if (end != c_p.c_str() + c_p.size() || !(p > 1.0))
        throw ParseError("--p must be 1, a finite value > 1, or inf: '" + c_p + "'");
      r = ap_constant(w, p, fam);
      kind = "ap";
      p_echo = fmt_double(p);
    }
    rep.note("p", p_echo);
    rep.note("kind", kind);
    rep.note("value", fmt_double(r.value));
    rep.note("witness", cube_text(g, r.witness));
    rep.table_columns = {"value"};
    rep.table_rows = {{r.value}};
  });

  // ---- norm ---------------------------------------------------------------
  std::string n_spec = "Lp:2";
  std::string n_weight = "const:1";
  std::string n_f = "const:1";
  CLI::App* n_cmd =
      app.add_subcommand("norm", "weighted norm of a function (witnessed sup "
                         "for the cube-indexed families)");
  n_cmd->add_option("--spec", n_spec, "norm selector")->capture_default_str();
  n_cmd->add_option("--weight", n_weight, "weight selector")->capture_default_str();
  n_cmd->add_option("--f", n_f, "function selector")->capture_default_str();
  add_common(n_cmd);
  n_cmd->callback([&] {
    const NormSpec spec = parse_norm_spec(n_spec);
    Grid g;
    Weight w;
    resolve_weight(n_weight, grid_s, n_cmd->count("--grid") > 0, g, w);
    const FunctionSelector fs = FunctionSelector::parse(n_f);
    const GridFunction f = fs.build(&g);
    const CubeFamily fam = parse_family(family_s);
    rep.id = "norm";
    rep.note("spec", spec.render());
    rep.note("weight", WeightSelector::parse(n_weight).render());
    rep.note("f", fs.render());
    rep.note("grid", render_grid(g));
    rep.note("family", family_name(fam));
    double value = 0.0;
    std::optional<Cube> witness;
    switch (spec.family) {
      case NormFamily::Lebesgue:
        value = lebesgue_norm(f, w, spec.p);
        break;
      case NormFamily::WeakLebesgue:
        value = weak_lebesgue_norm(f, w, spec.p);
        break;
      case NormFamily::Morrey: {
        const SupResult r = morrey_norm(f, w, spec.p, spec.q, fam);
        value = r.value;
        witness = r.witness;
        break;
      }
      case NormFamily::WeakMorrey: {
        const SupResult r = weak_morrey_norm(f, w, spec.p, spec.q, fam);
        value = r.value;
        witness = r.witness;
        break;
      }
      case NormFamily::Bmo: {
        const SupResult r = bmo_norm(f, w, spec.p, fam);
        value = r.value;
        witness = r.witness;
        break;
      }
      case NormFamily::BmoInf: {
        const SupResult r = bmo_inf_norm(f, w, fam);
        value = r.value;
        witness = r.witness;
        break;
      }
    }
    rep.note("value", fmt_double(value));
    if (witness) rep.note("witness", cube_text(g, *witness));
    rep.table_columns = {"value"};
    rep.table_rows = {{value}};
  });

  // ---- experiment ---------------------------------------------------------
  CLI::App* e_cmd = app.add_subcommand("experiment", "quantitative checks");
  e_cmd->require_subcommand(1);

  std::string t16_weight = "step:1,4@0";
  double t16_p = 2.0;
  CLI::App* t16 = e_cmd->add_subcommand(
      "thm16", "two-sided comparison of the A_p constant with the weighted "
               "oscillation norm of the weight");
  t16->add_option("--weight", t16_weight, "weight selector")->capture_default_str();
  t16->add_option("--p", t16_p, "exponent p >= 1")->capture_default_str();
  add_common(t16);
  t16->callback([&] {
    Grid g;
    Weight w;
    resolve_weight(t16_weight, grid_s, t16->count("--grid") > 0, g, w);
    rep = check_thm16_sandwich(w, t16_p, parse_family(family_s));
    rep.note("weight", WeightSelector::parse(t16_weight).render());
  });

  std::string p31_weight = "step:1,4@0";
  std::string p31_f = "indicator:0,0.5";
  double p31_p = 2.0;
  CLI::App* p31 = e_cmd->add_subcommand(
      "prop31", "oscillation norm of |f| against (1 + [w]^{1/p}) times the "
                "oscillation norm of f");
  p31->add_option("--weight", p31_weight, "weight selector")->capture_default_str();
  p31->add_option("--f", p31_f, "function selector")->capture_default_str();
  p31->add_option("--p", p31_p, "exponent p > 1")->capture_default_str();
  add_common(p31);
  p31->callback([&] {
    Grid g;
    Weight w;
    resolve_weight(p31_weight, grid_s, p31->count("--grid") > 0, g, w);
    const FunctionSelector fs = FunctionSelector::parse(p31_f);
    rep = check_prop31_abs(fs.build(&g), w, p31_p, parse_family(family_s));
    rep.note("weight", WeightSelector::parse(p31_weight).render());
    rep.note("f", fs.render());
  });

  double t18_alpha = 0.5, t18_p = 2.0, t18_tol = 0.01;
  std::string t18_psi = "const:1";
  int t18_nodes = 1024;
  bool t18_skip_battery = false;
  CLI::App* t18 = e_cmd->add_subcommand(
      "thm18", "scalar action of the Hardy-type average on |x|^alpha");
  t18->add_option("--alpha", t18_alpha, "weight exponent")->capture_default_str();
  t18->add_option("--psi", t18_psi, "profile selector")->capture_default_str();
  t18->add_option("--p", t18_p, "oscillation exponent p >= 1")->capture_default_str();
  t18->add_option("--K", t18_nodes, "quadrature nodes")->capture_default_str();
  t18->add_option("--tol", t18_tol, "relative tolerance")->capture_default_str();
  t18->add_option("--seed", seed, "battery seed")->capture_default_str();
  t18->add_flag("--skip-battery", t18_skip_battery, "witness ratio only");
  add_common(t18);
  t18->callback([&] {
    PsiProfile psi = parse_psi(t18_psi);
    psi.quad_nodes = t18_nodes;
    rep = check_thm18_upsi(parse_grid(grid_s), t18_alpha, psi, t18_p,
                           parse_family(family_s), seed, t18_tol,
                           !t18_skip_battery);
  });

  double vp_alpha = 0.5, vp_p = 2.0, vp_tol = 0.02;
  std::string vp_psi = "window:0.5,1";
  int vp_nodes = 1024;
  CLI::App* vp = e_cmd->add_subcommand(
      "vpsi", "scalar action of the companion average on |x|^alpha, "
              "restricted to zero-escape cubes");
  vp->add_option("--alpha", vp_alpha, "weight exponent")->capture_default_str();
  vp->add_option("--psi", vp_psi, "profile selector")->capture_default_str();
  vp->add_option("--p", vp_p, "oscillation exponent p >= 1")->capture_default_str();
  vp->add_option("--K", vp_nodes, "quadrature nodes")->capture_default_str();
  vp->add_option("--tol", vp_tol, "relative tolerance")->capture_default_str();
  add_common(vp, /*with_family=*/false);
  vp->callback([&] {
    PsiProfile psi = parse_psi(vp_psi);
    psi.quad_nodes = vp_nodes;
    rep = check_vpsi(parse_grid(grid_s), vp_alpha, psi, vp_p, vp_tol);
  });

  std::string p21_weight = "step:1,4@0";
  std::string p21_f = "indicator:0,0.5";
  double p21_p = 4.0, p21_q = 2.0, p21_r = 1.0;
  CLI::App* p21 = e_cmd->add_subcommand(
      "prop21", "local embedding of the weak Morrey space with its explicit "
                "constant");
  p21->add_option("--weight", p21_weight, "weight selector")->capture_default_str();
  p21->add_option("--f", p21_f, "function selector")->capture_default_str();
  p21->add_option("--p", p21_p, "outer exponent")->capture_default_str();
  p21->add_option("--q", p21_q, "Morrey exponent")->capture_default_str();
  p21->add_option("--r", p21_r, "embedding exponent (0 < r < q)")->capture_default_str();
  add_common(p21);
  p21->callback([&] {
    Grid g;
    Weight w;
    resolve_weight(p21_weight, grid_s, p21->count("--grid") > 0, g, w);
    const FunctionSelector fs = FunctionSelector::parse(p21_f);
    rep = check_prop21_embedding(fs.build(&g), w, p21_p, p21_q, p21_r,
                                 parse_family(family_s));
    rep.note("weight", WeightSelector::parse(p21_weight).render());
    rep.note("f", fs.render());
  });

  double bk_p = 2.0, bk_q = 1.5, bk_slope_tol = 0.15;
  std::string bk_deltas = "1,0.5,0.25,0.125";
  CLI::App* bk = e_cmd->add_subcommand(
      "buckley", "sharpness sweep: maximal-operator lower bounds against the "
                 "A_p constant across a family of power weights");
  bk->add_option("--p", bk_p, "exponent p > 1")->capture_default_str();
  bk->add_option("--q", bk_q, "Morrey exponent 0 < q <= p")->capture_default_str();
  bk->add_option("--deltas", bk_deltas, "comma-separated sweep values in (0, 1]")
      ->capture_default_str();
  bk->add_option("--slope-tol", bk_slope_tol, "slope tolerance")->capture_default_str();
  add_common(bk);
  bk->callback([&] {
    std::vector<double> ds;
    for (const std::string& tok : [&] {
           std::vector<std::string> t;
           size_t pos = 0;
           while (true) {
             const size_t nxt = bk_deltas.find(',', pos);
             if (nxt == std::string::npos) {
               t.push_back(bk_deltas.substr(pos));
               break;
             }
             t.push_back(bk_deltas.substr(pos, nxt - pos));
             pos = nxt + 1;
           }
           return t;
         }()) {
      char* end = nullptr;
      const double v = std::strtod(tok.c_str(), &end);
      if (tok.empty() || end != tok.c_str() + tok.size())
        throw ParseError("malformed delta list: '" + bk_deltas + "'");
      ds.push_back(v);
    }
    rep = buckley_sharpness_scan(parse_grid(grid_s), bk_p, bk_q, ds,
                                 parse_family(family_s), bk_slope_tol);
  });

  std::string t12_weight = "step:1,4@0";
  CLI::App* t12 = e_cmd->add_subcommand(
      "thm12", "pair scan sup avg_Q / avg_Q1 against the A_1 constant");
  t12->add_option("--weight", t12_weight, "weight selector")->capture_default_str();
  add_common(t12);
  t12->callback([&] {
    Grid g;
    Weight w;
    resolve_weight(t12_weight, grid_s, t12->count("--grid") > 0, g, w);
    rep = check_thm12_a1_witness(w, parse_family(family_s));
    rep.note("weight", WeightSelector::parse(t12_weight).render());
  });

  try {
    app.parse(argc, argv);
    return emit(rep, oc);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Error& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DegenerateWeightError& e) {
    std::cerr << "degenerate input: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const HypothesisViolationError& e) {
    std::cerr << "hypothesis violation: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
}
