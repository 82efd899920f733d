#include "weightlab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "weightlab/errors.hpp"
#include "scalar_kernels.hpp"
#include "window_scan.hpp"

namespace weightlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(const Weight& w, const char* op) {
  for (double v : w.values.values)
    if (!(v > 0.0))
      throw DegenerateWeightError(std::string(op) +
          ": weight has a zero cell; use the eps-regularized dual path");
}

double require_finite_p_gt1(double p, const char* op) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::domain_error(std::string(op) + ": requires finite p > 1");
  return p;
}

// ---- exact cell averages of |x|^a ----------------------------------------

// 1D: cells not containing 0 use the antiderivative x^{a+1}/(a+1); cells
// containing 0 split there.
double power_avg_1d(double u, double v, double a) {
  const double ap1 = a + 1.0;
  if (u >= 0.0) return (std::pow(v, ap1) - std::pow(u, ap1)) / (ap1 * (v - u));
  if (v <= 0.0) return (std::pow(-u, ap1) - std::pow(-v, ap1)) / (ap1 * (v - u));
  return (std::pow(-u, ap1) + std::pow(v, ap1)) / (ap1 * (v - u));
}

// 2D helpers: integral of |x|^a over a first-quadrant rectangle.
double gauss_rect(double a, double x0, double x1, double y0, double y1, int depth) {
  // 12-point tensor Gauss-Legendre, subdividing while the rectangle is large
  // compared with its distance from the singularity at the origin.
  static const double gx[6] = {0.03376524289842399, 0.16939530676686776,
                               0.38069040695840155, 0.6194095930415985,
                               0.8306046932331322, 0.9662347571015760};
  static const double gw[6] = {0.08566224618958517, 0.18038078652406930,
                               0.23395696728634552, 0.23395696728634552,
                               0.18038078652406930, 0.08566224618958517};
  const double dist = std::hypot(x0, y0);
  const double diag = std::hypot(x1 - x0, y1 - y0);
  if (depth < 14 && diag > 0.5 * dist) {
    const double xm = 0.5 * (x0 + x1), ym = 0.5 * (y0 + y1);
    return gauss_rect(a, x0, xm, y0, ym, depth + 1) +
           gauss_rect(a, xm, x1, y0, ym, depth + 1) +
           gauss_rect(a, x0, xm, ym, y1, depth + 1) +
           gauss_rect(a, xm, x1, ym, y1, depth + 1);
    }
  double s = 0.0;
  for (int i = 0; i < 6; ++i) {
    const double x = x0 + (x1 - x0) * gx[i];
    for (int j = 0; j < 6; ++j) {
      const double y = y0 + (y1 - y0) * gx[j];
      s += gw[i] * gw[j] * std::pow(x * x + y * y, 0.5 * a);
    }
  }
  return s * (x1 - x0) * (y1 - y0);
}

// Rectangle [0,X] x [0,Y]: integrate r^a exactly in r via polar coordinates,
// Gauss-Legendre in the angle.
double polar_corner(double a, double X, double Y) {
  static const int n = 64;
  const double half_pi = std::atan2(1.0, 0.0);
  const double t1 = std::atan2(Y, X);
  const double ap2 = a + 2.0;
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = (i + 0.5) / n;
    {  // theta in [0, t1]: radius X / cos(theta)
      const double th = t1 * u;
      s += t1 / n * std::pow(X / std::cos(th), ap2) / ap2;
    }
    {  // theta in [t1, pi/2]: radius Y / sin(theta)
      const double th = t1 + (half_pi - t1) * u;
      s += (half_pi - t1) / n * std::pow(Y / std::sin(th), ap2) / ap2;
    }
  }
  return s;
}

// Integral of |x|^a over a general rectangle (splits at the axes).
double power_int_2d(double a, double x0, double x1, double y0, double y1) {
  if (x0 < 0.0 && x1 > 0.0)
    return power_int_2d(a, x0, 0.0, y0, y1) + power_int_2d(a, 0.0, x1, y0, y1);
  if (y0 < 0.0 && y1 > 0.0)
    return power_int_2d(a, x0, x1, y0, 0.0) + power_int_2d(a, x0, x1, 0.0, y1);
  // reflect into the first quadrant
  double ax0 = x0, ax1 = x1, ay0 = y0, ay1 = y1;
  if (ax1 <= 0.0) { const double t = ax0; ax0 = -ax1; ax1 = -t; }
  if (ay1 <= 0.0) { const double t = ay0; ay0 = -ay1; ay1 = -t; }
  ax0 = std::max(ax0, 0.0);
  ay0 = std::max(ay0, 0.0);
  if (ax0 == 0.0 && ay0 == 0.0) return polar_corner(a, ax1, ay1);
  return gauss_rect(a, ax0, ax1, ay0, ay1, 0);
}

}  // namespace

ConjugateExponent conjugate(double p) {
  if (std::isnan(p) || p < 1.0)
    throw std::domain_error("conjugate exponent requires p >= 1");
  if (p == 1.0) return {1.0, kInf};
  if (p == kInf) return {kInf, 1.0};
  return {p, p / (p - 1.0)};
}

Weight Weight::from_function(GridFunction f) {
  for (double v : f.values)
    if (v < 0.0) throw std::domain_error("weights must be nonnegative");
  Weight w;
  w.values = std::move(f);
  return w;
}

Weight Weight::constant(const Grid& g, double c) {
  if (!(c >= 0.0)) throw std::domain_error("weights must be nonnegative");
  return from_function(GridFunction::constant(g, c));
}

Weight Weight::power(const Grid& g, double a) {
  if (!(a > -1.0))
    throw std::domain_error("power weight |x|^a requires a > -1");
  GridFunction f = GridFunction::constant(g, 0.0);
  if (g.dim == 1) {
    for (int i = 0; i < g.cells[0]; ++i)
      f.values[static_cast<size_t>(i)] = power_avg_1d(g.edge(0, i), g.edge(0, i + 1), a);
  } else {
    const double inv_vol = 1.0 / g.cell_volume();
    for (int i = 0; i < g.cells[0]; ++i)
      for (int j = 0; j < g.cells[1]; ++j)
        f.at(i, j) = power_int_2d(a, g.edge(0, i), g.edge(0, i + 1),
                                  g.edge(1, j), g.edge(1, j + 1)) * inv_vol;
  }
  Weight w = from_function(std::move(f));
  w.analytic = Analytic::Power;
  w.power_exponent = a;
  return w;
}

Weight Weight::step(const Grid& g, double v1, double v2, double x0) {
  if (!(v1 >= 0.0) || !(v2 >= 0.0))
    throw std::domain_error("weights must be nonnegative");
  if (!std::isfinite(x0)) throw std::domain_error("step location must be finite");
  GridFunction f = GridFunction::constant(g, 0.0);
  for (int i = 0; i < g.cells[0]; ++i) {
    const double u = g.edge(0, i), v = g.edge(0, i + 1);
    double val;
    if (v <= x0) val = v1;
    else if (u >= x0) val = v2;
    else val = (v1 * (x0 - u) + v2 * (v - x0)) / (v - u);
    if (g.dim == 1) {
      f.values[static_cast<size_t>(i)] = val;
    } else {
      for (int j = 0; j < g.cells[1]; ++j) f.at(i, j) = val;
    }
  }
  return from_function(std::move(f));
}

double weighted_measure(const Weight& w, const Cube& q) {
  return cube_sum(w.values, q) * w.values.grid.cell_volume();
}

Weight dual_weight(const Weight& w, double p, double eps) {
  require_finite_p_gt1(p, "dual_weight");
  if (!(eps >= 0.0)) throw std::domain_error("dual_weight: eps must be >= 0");
  const double expo = 1.0 - conjugate(p).p_prime;
  GridFunction f = w.values;
  for (double& v : f.values) {
    const double base = v + eps;
    if (!(base > 0.0))
      throw DegenerateWeightError(
          "dual_weight: weight has a zero cell and eps = 0; pass eps > 0 to regularize");
    v = std::pow(base, expo);
  }
  return Weight::from_function(std::move(f));
}

// ---- defining per-cube functionals ----------------------------------------

double ap_product(const Weight& w, double p, const Cube& q) {
  require_finite_p_gt1(p, "ap_product");
  require_positive(w, "ap_product");
  const double expo = 1.0 - conjugate(p).p_prime;
  const Grid& g = w.values.grid;
  const std::int64_t count = cube_cell_count(g, q);
  // canonical order: same transform, same summation order as the sup scan
  double wsum, ssum;
  if (g.dim == 1) {
    wsum = ssum = 0.0;
    for (int i = q.anchor[0]; i < q.anchor[0] + q.side; ++i) {
      const double v = w.values.values[static_cast<size_t>(i)];
      wsum += v;
      ssum += std::pow(v, expo);
    }
  } else {
    wsum = ssum = 0.0;
    for (int r = q.anchor[0]; r < q.anchor[0] + q.side; ++r) {
      double rw = 0.0, rs = 0.0;
      for (int c = q.anchor[1]; c < q.anchor[1] + q.side; ++c) {
        const double v = w.values.at(r, c);
        rw += v;
        rs += std::pow(v, expo);
      }
      wsum += rw;
      ssum += rs;
    }
  }
  return (wsum / static_cast<double>(count)) *
         detail::fast_pow(ssum / static_cast<double>(count), p - 1.0);
}

double a1_ratio(const Weight& w, const Cube& q) {
  require_positive(w, "a1_ratio");
  const Grid& g = w.values.grid;
  const std::int64_t count = cube_cell_count(g, q);
  double wsum = 0.0, wmin = kInf;
  if (g.dim == 1) {
    for (int i = q.anchor[0]; i < q.anchor[0] + q.side; ++i) {
      const double v = w.values.values[static_cast<size_t>(i)];
      wsum += v;
      wmin = std::min(wmin, v);
    }
  } else {
    for (int r = q.anchor[0]; r < q.anchor[0] + q.side; ++r) {
      double rw = 0.0;
      double rmin = kInf;
      for (int c = q.anchor[1]; c < q.anchor[1] + q.side; ++c) {
        const double v = w.values.at(r, c);
        rw += v;
        rmin = std::min(rmin, v);
      }
      wsum += rw;
      wmin = std::min(wmin, rmin);
    }
  }
  return (wsum / static_cast<double>(count)) / wmin;
}

double ainfty_product(const Weight& w, const Cube& q) {
  require_positive(w, "ainfty_product");
  const Grid& g = w.values.grid;
  const std::int64_t count = cube_cell_count(g, q);
  double wsum = 0.0, lsum = 0.0;
  if (g.dim == 1) {
    for (int i = q.anchor[0]; i < q.anchor[0] + q.side; ++i) {
      const double v = w.values.values[static_cast<size_t>(i)];
      wsum += v;
      lsum += std::log(v);
    }
  } else {
    for (int r = q.anchor[0]; r < q.anchor[0] + q.side; ++r) {
      double rw = 0.0, rl = 0.0;
      for (int c = q.anchor[1]; c < q.anchor[1] + q.side; ++c) {
        const double v = w.values.at(r, c);
        rw += v;
        rl += std::log(v);
      }
      wsum += rw;
      lsum += rl;
    }
  }
  return (wsum / static_cast<double>(count)) *
         std::exp(-(lsum / static_cast<double>(count)));
}

// ---- constants: sup scans --------------------------------------------------

SupResult ap_constant(const Weight& w, double p, CubeFamily fam) {
  require_finite_p_gt1(p, "ap_constant");
  require_positive(w, "ap_constant");
  const Grid& g = w.values.grid;
  const double expo = 1.0 - conjugate(p).p_prime;
  const size_t n = w.values.values.size();
  std::vector<double> sigma(n);
  for (size_t i = 0; i < n; ++i) sigma[i] = std::pow(w.values.values[i], expo);
  const double pm1 = p - 1.0;
  return detail::window_scan_sup(
      g, fam, {w.values.values.data(), sigma.data()}, nullptr,
      [pm1](const double* sums, double, std::int64_t count) {
        const double c = static_cast<double>(count);
        return (sums[0] / c) * detail::fast_pow(sums[1] / c, pm1);
      });
}

SupResult a1_constant(const Weight& w, CubeFamily fam) {
  require_positive(w, "a1_constant");
  return detail::window_scan_sup(
      w.values.grid, fam, {w.values.values.data()}, w.values.values.data(),
      [](const double* sums, double mn, std::int64_t count) {
        return (sums[0] / static_cast<double>(count)) / mn;
      });
}

SupResult ainfty_constant(const Weight& w, CubeFamily fam) {
  require_positive(w, "ainfty_constant");
  const size_t n = w.values.values.size();
  std::vector<double> logs(n);
  for (size_t i = 0; i < n; ++i) logs[i] = std::log(w.values.values[i]);
  return detail::window_scan_sup(
      w.values.grid, fam, {w.values.values.data(), logs.data()}, nullptr,
      [](const double* sums, double, std::int64_t count) {
        const double c = static_cast<double>(count);
        return (sums[0] / c) * std::exp(-(sums[1] / c));
      });
}

}  // namespace weightlab
