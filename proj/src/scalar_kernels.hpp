#pragma once

// Scalar per-window formulas shared by the production scans and the naive
// reference implementation. Keeping them in one place is what makes the
// "reference equals production bit-for-bit" tests meaningful: both sides
// evaluate the same expressions in the same order on the same window sums.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace weightlab {
namespace detail {

// x^e for x >= 0 as exp(e log x). Up to ~2 ulp from std::pow, but immune to
// its correctly-rounded slow path, which costs microseconds per call on the
// extreme magnitudes window scans produce. Every per-window power in the
// library goes through here so production and reference stay bit-identical.
inline double fast_pow(double x, double e) {
  if (e == 0.0) return 1.0;
  if (x == 0.0) return e > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::exp(e * std::log(x));
}

// |d|^p with exact branches for the common exponents.
inline double osc_power(double d, double p) {
  const double a = std::fabs(d);
  if (p == 1.0) return a;
  if (p == 1.5) return a * std::sqrt(a);
  if (p == 2.0) return d * d;
  if (p == 3.0) return a * d * d;
  return fast_pow(a, p);
}

// ( (1/w(Q)) int_Q |f - f_Q|^p w^{1-p} )^{1/p}; the cell volume cancels
// between numerator and denominator, so both are raw cell sums.
inline double bmo_combine(double osc_sum, double w_sum, double p, double inv_p) {
  const double r = osc_sum / w_sum;
  return p == 1.0 ? r : fast_pow(r, inv_p);
}

// w(Q)^{1/p - 1/q} * X^{1/q} where X is either int_Q |f|^q w (strong form)
// or the best level product (weak form). Raw sums scale by the cell volume
// inside the powers. A window with w(Q) = 0 carries no mass and contributes 0.
inline double morrey_combine(double w_sum, double x_sum, double cell_volume,
                             double e1, double e2) {
  if (w_sum == 0.0) return 0.0;
  return fast_pow(w_sum * cell_volume, e1) * fast_pow(x_sum * cell_volume, e2);
}

// One cell of a level scan: |f| value, |f|^q, weight, flat index.
struct LevelItem {
  double av = 0.0;
  double pv = 0.0;
  double wv = 0.0;
  std::int64_t idx = 0;
};

// Canonical level order: decreasing |f| value, ties by flat index.
inline bool level_item_before(const LevelItem& a, const LevelItem& b) {
  return a.av > b.av || (a.av == b.av && a.idx < b.idx);
}

inline void insert_level_item(std::vector<LevelItem>& items, const LevelItem& it) {
  items.insert(std::lower_bound(items.begin(), items.end(), it, level_item_before), it);
}

// max over levels v > 0 of v^q * w({|f| >= v}), with the weight accumulated
// in canonical level order. Candidates are evaluated at the end of each run
// of equal |f| values, where the cumulative weight covers the full level set.
inline double level_scan_best(const std::vector<LevelItem>& items) {
  double best = 0.0;
  double cum = 0.0;
  const std::size_t n = items.size();
  for (std::size_t i = 0; i < n; ++i) {
    cum += items[i].wv;
    const bool run_end = i + 1 == n || items[i + 1].av != items[i].av;
    if (run_end && items[i].av > 0.0) best = std::max(best, items[i].pv * cum);
  }
  return best;
}

}  // namespace detail
}  // namespace weightlab
