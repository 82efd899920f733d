#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "weightlab/grid.hpp"
#include "weightlab/norms.hpp"
#include "weightlab/operators.hpp"
#include "weightlab/weights.hpp"

namespace weightlab {

// One verified inequality: pass iff lhs <= rhs + tol.
struct InequalityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double tol = 0.0;
  double slack = 0.0;  // rhs + tol - lhs
  bool pass = false;
};

// Harness result: echoed hypotheses, inequality checks, and (for sweeps) a
// numeric table. Re-running with the echoed hypotheses reproduces every
// number.
struct TheoremReport {
  std::string id;
  std::vector<std::pair<std::string, std::string>> hypotheses;
  std::vector<InequalityCheck> checks;
  std::vector<std::string> table_columns;
  std::vector<std::vector<double>> table_rows;
  std::vector<std::string> warnings;
  bool all_pass = true;

  void note(const std::string& key, const std::string& value);
  void add_check(const std::string& name, double lhs, double rhs, double tol);
  void warn(const std::string& message);
};

// The test functions the operator-norm proofs are built on.
enum class ExtremalKind { DualPower, IndicatorSub, WeightItself, EpsDual };

// DualPower: w^{1-p'} on Q; EpsDual: (w+eps)^{-p'/p} on Q; IndicatorSub:
// indicator of q1 (must sit inside Q); WeightItself: w everywhere.
GridFunction extremal_function(ExtremalKind kind, const Weight& w, double p,
                               const Cube& q, const Cube* q1 = nullptr,
                               double eps = 0.0);

struct TrialFunction {
  std::string name;
  GridFunction f;
};

// Certified lower bound on an operator norm: max over trials of
// target_norm(op f) / source_norm(f). Never claims an upper bound.
struct OperatorNormEstimate {
  std::string op_name;
  NormSpec source;
  NormSpec target;
  double lower_bound = 0.0;
  std::string witness;  // name of the trial attaining the bound
  int trials = 0;       // evaluated trials
  int skipped = 0;      // zero-source-norm trials
};

OperatorNormEstimate estimate_operator_norm(
    const std::string& op_name,
    const std::function<GridFunction(const GridFunction&)>& op, const Weight& w,
    const NormSpec& source, const NormSpec& target,
    const std::vector<TrialFunction>& trials, CubeFamily fam);

// Strictly positive pseudo-random function: per-cell uniforms in [lo, hi]
// from a seeded 64-bit generator, then blur_passes of a radius-2 box blur.
GridFunction smoothed_random(const Grid& g, std::uint64_t seed, double lo, double hi,
                             int blur_passes = 2);

// Built-in weight battery: constants, steps, power weights, and four seeded
// smoothed random positive weights (>= 12 entries).
std::vector<std::pair<std::string, Weight>> battery_weights(const Grid& g,
                                                            std::uint64_t seed);

// DualPower trials at the A_p witness cube, the whole domain, both halves,
// and a dyadic ladder of cubes (side >= cells/16), named by their cube.
std::vector<TrialFunction> dual_power_trials(const Weight& w, double p,
                                             CubeFamily fam);

// [w]_{A_p}^{1/p} <= ||w||_{BMO^{p'}(w)} + 1 <= 3 [w]_{A_p}^{1/p}; the p = 1
// case pairs the A_1 constant with the BMO-infinity norm and also records the
// exact case-1 bound ||w|| <= max([w]_{A_1} - 1, 1).
TheoremReport check_thm16_sandwich(const Weight& w, double p, CubeFamily fam);

// || |f| ||_{BMO^{p'}(w)} <= (1 + [w]_{A_p}^{1/p}) ||f||_{BMO^{p'}(w)}.
TheoremReport check_prop31_abs(const GridFunction& f, const Weight& w, double p,
                               CubeFamily fam);

// Scalar action of the Hardy-type average on the homogeneous weight |x|^alpha:
// witness ratio ||U_psi w||_BMO / ||w||_BMO vs I = int t^alpha psi, plus an
// upper-bound battery (cube indicators, DualPower per cube, w itself, and 32
// seeded smoothed random functions).
TheoremReport check_thm18_upsi(const Grid& g, double alpha, const PsiProfile& psi,
                               double p, CubeFamily fam, std::uint64_t seed,
                               double tol_rel = 0.01, bool run_battery = true);

// Same for the companion average with exponent -alpha-n, restricted to cubes
// all of whose cells kept their full quadrature mass inside the domain.
TheoremReport check_vpsi(const Grid& g, double alpha, const PsiProfile& psi, double p,
                         double tol_rel = 0.02);

// Local embedding with the explicit constant 2 (r/(q-r))^{1/q}: for every
// cube, (int_Q |f|^r w)^{1/r} <= C ||f||_{WM^p_q(w)} w(Q)^{1/r-1/p}.
TheoremReport check_prop21_embedding(const GridFunction& f, const Weight& w, double p,
                                     double q, double r, CubeFamily fam);

// Sharpness sweep: for each delta, the weight |x|^{(p-1)(1-delta)} with its
// A_p constant and DualPower-witness lower bounds for M into L^p, weak-L^p,
// Morrey(p,q) and weak-Morrey(p,q); checks the log-log slopes of the L^p and
// Morrey columns against 1/(p-1) and 1/p.
TheoremReport buckley_sharpness_scan(const Grid& g, double p, double q,
                                     const std::vector<double>& deltas,
                                     CubeFamily fam, double slope_tol = 0.15);

// Pair scan sup_{Q1 subset Q} avg_Q(w) / avg_{Q1}(w) against the A_1 constant.
TheoremReport check_thm12_a1_witness(const Weight& w, CubeFamily fam);

}  // namespace weightlab
