#include "weightlab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "weightlab/errors.hpp"
#include "scalar_kernels.hpp"
#include "window_scan.hpp"

namespace weightlab {

namespace {

void check_same_grid(const GridFunction& f, const Weight& w) {
  if (!(f.grid == w.values.grid))
    throw std::invalid_argument("function and weight live on different grids");
}

void check_p_finite_ge1(double p, const char* what) {
  if (!(p >= 1.0) || std::isinf(p))
    throw std::invalid_argument(std::string(what) + " requires 1 <= p < inf");
}

void check_morrey_exponents(double p, double q) {
  if (!(q > 0.0) || !(p >= q) || std::isinf(p))
    throw std::invalid_argument("Morrey exponents require 0 < q <= p < inf");
}

void require_positive_weight(const Weight& w, const char* what) {
  for (double v : w.values.values)
    if (!(v > 0.0))
      throw DegenerateWeightError(std::string(what) +
                                  " requires a strictly positive weight");
}

// Enumeration offset of the first cube of each side, cumulative over sides.
std::vector<std::int64_t> all_side_offsets(const Grid& g) {
  const int smax = g.dim == 1 ? g.cells[0] : std::min(g.cells[0], g.cells[1]);
  std::vector<std::int64_t> offs(static_cast<std::size_t>(smax) + 2, 0);
  for (int s = 1; s <= smax; ++s) {
    std::int64_t cnt = g.cells[0] - s + 1;
    if (g.dim == 2) cnt *= g.cells[1] - s + 1;
    offs[static_cast<std::size_t>(s) + 1] = offs[static_cast<std::size_t>(s)] + cnt;
  }
  return offs;
}

}  // namespace

NormSpec NormSpec::lebesgue(double p) {
  check_p_finite_ge1(p, "Lebesgue norm");
  return {NormFamily::Lebesgue, p, 0.0};
}

NormSpec NormSpec::weak_lebesgue(double p) {
  check_p_finite_ge1(p, "weak Lebesgue norm");
  return {NormFamily::WeakLebesgue, p, 0.0};
}

NormSpec NormSpec::morrey(double p, double q) {
  check_morrey_exponents(p, q);
  return {NormFamily::Morrey, p, q};
}

NormSpec NormSpec::weak_morrey(double p, double q) {
  check_morrey_exponents(p, q);
  return {NormFamily::WeakMorrey, p, q};
}

NormSpec NormSpec::bmo(double p) {
  check_p_finite_ge1(p, "bounded-mean-oscillation norm");
  return {NormFamily::Bmo, p, 0.0};
}

NormSpec NormSpec::bmo_inf() { return {NormFamily::BmoInf, 0.0, 0.0}; }

std::string NormSpec::render() const {
  switch (family) {
    case NormFamily::Lebesgue:
      return "Lp:" + fmt_double(p);
    case NormFamily::WeakLebesgue:
      return "wLp:" + fmt_double(p);
    case NormFamily::Morrey:
      return "Morrey:" + fmt_double(p) + "," + fmt_double(q);
    case NormFamily::WeakMorrey:
      return "wMorrey:" + fmt_double(p) + "," + fmt_double(q);
    case NormFamily::Bmo:
      return "BMO:" + fmt_double(p);
    case NormFamily::BmoInf:
      return "BMOinf";
  }
  return "";
}

double lebesgue_norm(const GridFunction& f, const Weight& w, double p) {
  check_same_grid(f, w);
  check_p_finite_ge1(p, "Lebesgue norm");
  const double* fv = f.values.data();
  const double* wv = w.values.values.data();
  const std::int64_t n = f.grid.cell_count();
  double s = 0.0;  // global sums run in flat cell order
  for (std::int64_t i = 0; i < n; ++i) s += std::pow(std::fabs(fv[i]), p) * wv[i];
  return std::pow(s * f.grid.cell_volume(), 1.0 / p);
}

double weak_lebesgue_norm(const GridFunction& f, const Weight& w, double p) {
  check_same_grid(f, w);
  check_p_finite_ge1(p, "weak Lebesgue norm");
  const double* fv = f.values.data();
  const double* wv = w.values.values.data();
  const std::int64_t n = f.grid.cell_count();
  std::vector<detail::LevelItem> items(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const double a = std::fabs(fv[i]);
    items[static_cast<std::size_t>(i)] = {a, std::pow(a, p), wv[i], i};
  }
  std::sort(items.begin(), items.end(), detail::level_item_before);
  return std::pow(detail::level_scan_best(items) * f.grid.cell_volume(), 1.0 / p);
}

SupResult morrey_norm(const GridFunction& f, const Weight& w, double p, double q,
                      CubeFamily fam) {
  check_same_grid(f, w);
  check_morrey_exponents(p, q);
  const Grid& g = f.grid;
  const std::int64_t n = g.cell_count();
  const double* fv = f.values.data();
  const double* wv = w.values.values.data();
  std::vector<double> t(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i)
    t[static_cast<std::size_t>(i)] = std::pow(std::fabs(fv[i]), q) * wv[i];
  const double cv = g.cell_volume();
  const double e1 = 1.0 / p - 1.0 / q;
  const double e2 = 1.0 / q;
  return detail::window_scan_sup(g, fam, {wv, t.data()}, nullptr,
                         [cv, e1, e2](const double* sums, double, std::int64_t) {
                           return detail::morrey_combine(sums[0], sums[1], cv, e1, e2);
                         });
}

SupResult weak_morrey_norm(const GridFunction& f, const Weight& w, double p, double q,
                           CubeFamily fam) {
  check_same_grid(f, w);
  check_morrey_exponents(p, q);
  const Grid& g = f.grid;
  detail::validate_family(g, fam);
  const std::int64_t n = g.cell_count();
  const double* fv = f.values.data();
  const double* wv = w.values.values.data();
  std::vector<double> av(static_cast<std::size_t>(n)), pv(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    av[static_cast<std::size_t>(i)] = std::fabs(fv[i]);
    pv[static_cast<std::size_t>(i)] = std::pow(av[static_cast<std::size_t>(i)], q);
  }
  const double cv = g.cell_volume();
  const double e1 = 1.0 / p - 1.0 / q;
  const double e2 = 1.0 / q;
  detail::BestCube best;

  if (g.dim == 1) {
    const int nc = g.cells[0];
    if (fam == CubeFamily::All) {
      const auto offs = all_side_offsets(g);
#pragma omp parallel
      {
        detail::BestCube lb;
        std::vector<detail::LevelItem> items;
        items.reserve(static_cast<std::size_t>(nc));
#pragma omp for schedule(static) nowait
        for (int a = 0; a < nc; ++a) {
          items.clear();
          double wsum = 0.0;
          for (int b = a; b < nc; ++b) {
            detail::insert_level_item(items, {av[static_cast<std::size_t>(b)],
                                              pv[static_cast<std::size_t>(b)], wv[b], b});
            wsum += wv[b];
            const double v =
                detail::morrey_combine(wsum, detail::level_scan_best(items), cv, e1, e2);
            lb.offer(v, offs[static_cast<std::size_t>(b - a + 1)] + a);
          }
        }
#pragma omp critical(weightlab_sup_merge)
        best.merge(lb);
      }
    } else {
      std::int64_t off = 0;
      for (int s = 1; s <= nc; s *= 2) {
        const int m = nc / s;
#pragma omp parallel
        {
          detail::BestCube lb;
          std::vector<detail::LevelItem> items;
          items.reserve(static_cast<std::size_t>(s));
#pragma omp for schedule(static) nowait
          for (int j = 0; j < m; ++j) {
            items.clear();
            double wsum = 0.0;
            for (int b = j * s; b < (j + 1) * s; ++b) {
              detail::insert_level_item(items, {av[static_cast<std::size_t>(b)],
                                                pv[static_cast<std::size_t>(b)], wv[b], b});
              wsum += wv[b];
            }
            const double v =
                detail::morrey_combine(wsum, detail::level_scan_best(items), cv, e1, e2);
            lb.offer(v, off + j);
          }
#pragma omp critical(weightlab_sup_merge)
          best.merge(lb);
        }
        off += m;
      }
    }
  } else {
    const int n0 = g.cells[0], n1 = g.cells[1];
    const int smax = std::min(n0, n1);
    if (fam == CubeFamily::All) {
      const auto offs = all_side_offsets(g);
#pragma omp parallel
      {
        detail::BestCube lb;
        std::vector<detail::LevelItem> items;
        std::vector<double> wseg(static_cast<std::size_t>(smax), 0.0);
#pragma omp for schedule(static) nowait
        for (int a0 = 0; a0 < n0; ++a0) {
          for (int a1 = 0; a1 < n1; ++a1) {
            const int slim = std::min(n0 - a0, n1 - a1);
            items.clear();
            for (int s = 1; s <= slim; ++s) {
              for (int r = 0; r < s - 1; ++r) {  // widen existing rows
                const std::int64_t fl = g.flat(a0 + r, a1 + s - 1);
                wseg[static_cast<std::size_t>(r)] += wv[fl];
                detail::insert_level_item(items, {av[static_cast<std::size_t>(fl)],
                                                  pv[static_cast<std::size_t>(fl)],
                                                  wv[fl], fl});
              }
              double rw = 0.0;  // fresh bottom row
              for (int c = 0; c < s; ++c) {
                const std::int64_t fl = g.flat(a0 + s - 1, a1 + c);
                rw += wv[fl];
                detail::insert_level_item(items, {av[static_cast<std::size_t>(fl)],
                                                  pv[static_cast<std::size_t>(fl)],
                                                  wv[fl], fl});
              }
              wseg[static_cast<std::size_t>(s - 1)] = rw;
              double wsum = 0.0;
              for (int r = 0; r < s; ++r) wsum += wseg[static_cast<std::size_t>(r)];
              const double v = detail::morrey_combine(
                  wsum, detail::level_scan_best(items), cv, e1, e2);
              lb.offer(v, offs[static_cast<std::size_t>(s)] +
                              static_cast<std::int64_t>(a0) * (n1 - s + 1) + a1);
            }
          }
        }
#pragma omp critical(weightlab_sup_merge)
        best.merge(lb);
      }
    } else {
      std::int64_t off = 0;
      for (int s = 1; s <= smax; s *= 2) {
        const int m0 = n0 / s, m1 = n1 / s;
#pragma omp parallel
        {
          detail::BestCube lb;
          std::vector<detail::LevelItem> items;
          items.reserve(static_cast<std::size_t>(s) * static_cast<std::size_t>(s));
#pragma omp for schedule(static) nowait
          for (int j0 = 0; j0 < m0; ++j0) {
            for (int j1 = 0; j1 < m1; ++j1) {
              items.clear();
              double wsum = 0.0;
              for (int r = 0; r < s; ++r) {
                double rw = 0.0;
                for (int c = 0; c < s; ++c) {
                  const std::int64_t fl = g.flat(j0 * s + r, j1 * s + c);
                  rw += wv[fl];
                  detail::insert_level_item(items, {av[static_cast<std::size_t>(fl)],
                                                    pv[static_cast<std::size_t>(fl)],
                                                    wv[fl], fl});
                }
                wsum += rw;
              }
              const double v = detail::morrey_combine(
                  wsum, detail::level_scan_best(items), cv, e1, e2);
              lb.offer(v, off + static_cast<std::int64_t>(j0) * m1 + j1);
            }
          }
#pragma omp critical(weightlab_sup_merge)
          best.merge(lb);
        }
        off += static_cast<std::int64_t>(m0) * m1;
      }
    }
  }
  return {best.value, detail::cube_from_enum_index(g, fam, best.index)};
}

namespace {

// Oscillation sum over one 1D window [a, b] against precomputed sigma.
double osc_sum_1d(const double* fv, const double* sig, int a, int b, double favg,
                  double p) {
  double osc = 0.0;
  for (int c = a; c <= b; ++c) osc += detail::osc_power(fv[c] - favg, p) * sig[c];
  return osc;
}

}  // namespace

SupResult bmo_norm(const GridFunction& f, const Weight& w, double p, CubeFamily fam) {
  check_same_grid(f, w);
  check_p_finite_ge1(p, "bounded-mean-oscillation norm");
  require_positive_weight(w, "bounded-mean-oscillation norm");
  const Grid& g = f.grid;
  detail::validate_family(g, fam);
  const std::int64_t n = g.cell_count();
  const double* fv = f.values.data();
  const double* wv = w.values.values.data();
  std::vector<double> sig(static_cast<std::size_t>(n), 1.0);
  if (p != 1.0)
    for (std::int64_t i = 0; i < n; ++i)
      sig[static_cast<std::size_t>(i)] = std::pow(wv[i], 1.0 - p);
  const double inv_p = 1.0 / p;
  detail::BestCube best;

  if (g.dim == 1) {
    const int nc = g.cells[0];
    if (fam == CubeFamily::All) {
      const auto offs = all_side_offsets(g);
#pragma omp parallel
      {
        detail::BestCube lb;
#pragma omp for schedule(static) nowait
        for (int a = 0; a < nc; ++a) {
          double fsum = 0.0, wsum = 0.0;
          for (int b = a; b < nc; ++b) {
            fsum += fv[b];
            wsum += wv[b];
            const double favg = fsum / (b - a + 1);
            const double osc = osc_sum_1d(fv, sig.data(), a, b, favg, p);
            lb.offer(detail::bmo_combine(osc, wsum, p, inv_p),
                     offs[static_cast<std::size_t>(b - a + 1)] + a);
          }
        }
#pragma omp critical(weightlab_sup_merge)
        best.merge(lb);
      }
    } else {
      std::int64_t off = 0;
      for (int s = 1; s <= nc; s *= 2) {
        const int m = nc / s;
#pragma omp parallel
        {
          detail::BestCube lb;
#pragma omp for schedule(static) nowait
          for (int j = 0; j < m; ++j) {
            const int a = j * s, b = j * s + s - 1;
            double fsum = 0.0, wsum = 0.0;
            for (int c = a; c <= b; ++c) {
              fsum += fv[c];
              wsum += wv[c];
            }
            const double favg = fsum / s;
            const double osc = osc_sum_1d(fv, sig.data(), a, b, favg, p);
            lb.offer(detail::bmo_combine(osc, wsum, p, inv_p), off + j);
          }
#pragma omp critical(weightlab_sup_merge)
          best.merge(lb);
        }
        off += m;
      }
    }
  } else {
    const int n0 = g.cells[0], n1 = g.cells[1];
    const int smax = std::min(n0, n1);
    if (fam == CubeFamily::All) {
      const auto offs = all_side_offsets(g);
#pragma omp parallel
      {
        detail::BestCube lb;
        std::vector<double> fseg(static_cast<std::size_t>(smax), 0.0);
        std::vector<double> wseg(static_cast<std::size_t>(smax), 0.0);
#pragma omp for schedule(static) nowait
        for (int a0 = 0; a0 < n0; ++a0) {
          for (int a1 = 0; a1 < n1; ++a1) {
            const int slim = std::min(n0 - a0, n1 - a1);
            for (int s = 1; s <= slim; ++s) {
              for (int r = 0; r < s - 1; ++r) {
                const std::int64_t fl = g.flat(a0 + r, a1 + s - 1);
                fseg[static_cast<std::size_t>(r)] += fv[fl];
                wseg[static_cast<std::size_t>(r)] += wv[fl];
              }
              double rf = 0.0, rw = 0.0;
              for (int c = 0; c < s; ++c) {
                const std::int64_t fl = g.flat(a0 + s - 1, a1 + c);
                rf += fv[fl];
                rw += wv[fl];
              }
              fseg[static_cast<std::size_t>(s - 1)] = rf;
              wseg[static_cast<std::size_t>(s - 1)] = rw;
              double fsum = 0.0, wsum = 0.0;
              for (int r = 0; r < s; ++r) {
                fsum += fseg[static_cast<std::size_t>(r)];
                wsum += wseg[static_cast<std::size_t>(r)];
              }
              const double favg = fsum / (static_cast<std::int64_t>(s) * s);
              double osc = 0.0;
              for (int r = 0; r < s; ++r) {
                double rosc = 0.0;
                for (int c = 0; c < s; ++c) {
                  const std::int64_t fl = g.flat(a0 + r, a1 + c);
                  rosc += detail::osc_power(fv[fl] - favg, p) *
                          sig[static_cast<std::size_t>(fl)];
                }
                osc += rosc;
              }
              lb.offer(detail::bmo_combine(osc, wsum, p, inv_p),
                       offs[static_cast<std::size_t>(s)] +
                           static_cast<std::int64_t>(a0) * (n1 - s + 1) + a1);
            }
          }
        }
#pragma omp critical(weightlab_sup_merge)
        best.merge(lb);
      }
    } else {
      std::int64_t off = 0;
      for (int s = 1; s <= smax; s *= 2) {
        const int m0 = n0 / s, m1 = n1 / s;
#pragma omp parallel
        {
          detail::BestCube lb;
#pragma omp for schedule(static) nowait
          for (int j0 = 0; j0 < m0; ++j0) {
            for (int j1 = 0; j1 < m1; ++j1) {
              double fsum = 0.0, wsum = 0.0;
              for (int r = 0; r < s; ++r) {
                double rf = 0.0, rw = 0.0;
                for (int c = 0; c < s; ++c) {
                  const std::int64_t fl = g.flat(j0 * s + r, j1 * s + c);
                  rf += fv[fl];
                  rw += wv[fl];
                }
                fsum += rf;
                wsum += rw;
              }
              const double favg = fsum / (static_cast<std::int64_t>(s) * s);
              double osc = 0.0;
              for (int r = 0; r < s; ++r) {
                double rosc = 0.0;
                for (int c = 0; c < s; ++c) {
                  const std::int64_t fl = g.flat(j0 * s + r, j1 * s + c);
                  rosc += detail::osc_power(fv[fl] - favg, p) *
                          sig[static_cast<std::size_t>(fl)];
                }
                osc += rosc;
              }
              lb.offer(detail::bmo_combine(osc, wsum, p, inv_p),
                       off + static_cast<std::int64_t>(j0) * m1 + j1);
            }
          }
#pragma omp critical(weightlab_sup_merge)
          best.merge(lb);
        }
        off += static_cast<std::int64_t>(m0) * m1;
      }
    }
  }
  return {best.value, detail::cube_from_enum_index(g, fam, best.index)};
}

SupResult bmo_inf_norm(const GridFunction& f, const Weight& w, CubeFamily fam) {
  check_same_grid(f, w);
  require_positive_weight(w, "bounded-mean-oscillation norm");
  const Grid& g = f.grid;
  detail::validate_family(g, fam);
  const double* fv = f.values.data();
  const double* wv = w.values.values.data();
  detail::BestCube best;

  if (g.dim == 1) {
    const int nc = g.cells[0];
    if (fam == CubeFamily::All) {
      const auto offs = all_side_offsets(g);
#pragma omp parallel
      {
        detail::BestCube lb;
#pragma omp for schedule(static) nowait
        for (int a = 0; a < nc; ++a) {
          double fsum = 0.0;
          for (int b = a; b < nc; ++b) {
            fsum += fv[b];
            const double favg = fsum / (b - a + 1);
            double m = 0.0;
            for (int c = a; c <= b; ++c)
              m = std::max(m, std::fabs(fv[c] - favg) / wv[c]);
            lb.offer(m, offs[static_cast<std::size_t>(b - a + 1)] + a);
          }
        }
#pragma omp critical(weightlab_sup_merge)
        best.merge(lb);
      }
    } else {
      std::int64_t off = 0;
      for (int s = 1; s <= nc; s *= 2) {
        const int m = nc / s;
#pragma omp parallel
        {
          detail::BestCube lb;
#pragma omp for schedule(static) nowait
          for (int j = 0; j < m; ++j) {
            double fsum = 0.0;
            for (int c = j * s; c < (j + 1) * s; ++c) fsum += fv[c];
            const double favg = fsum / s;
            double mx = 0.0;
            for (int c = j * s; c < (j + 1) * s; ++c)
              mx = std::max(mx, std::fabs(fv[c] - favg) / wv[c]);
            lb.offer(mx, off + j);
          }
#pragma omp critical(weightlab_sup_merge)
          best.merge(lb);
        }
        off += m;
      }
    }
  } else {
    const int n0 = g.cells[0], n1 = g.cells[1];
    const int smax = std::min(n0, n1);
    if (fam == CubeFamily::All) {
      const auto offs = all_side_offsets(g);
#pragma omp parallel
      {
        detail::BestCube lb;
        std::vector<double> fseg(static_cast<std::size_t>(smax), 0.0);
#pragma omp for schedule(static) nowait
        for (int a0 = 0; a0 < n0; ++a0) {
          for (int a1 = 0; a1 < n1; ++a1) {
            const int slim = std::min(n0 - a0, n1 - a1);
            for (int s = 1; s <= slim; ++s) {
              for (int r = 0; r < s - 1; ++r)
                fseg[static_cast<std::size_t>(r)] += fv[g.flat(a0 + r, a1 + s - 1)];
              double rf = 0.0;
              for (int c = 0; c < s; ++c) rf += fv[g.flat(a0 + s - 1, a1 + c)];
              fseg[static_cast<std::size_t>(s - 1)] = rf;
              double fsum = 0.0;
              for (int r = 0; r < s; ++r) fsum += fseg[static_cast<std::size_t>(r)];
              const double favg = fsum / (static_cast<std::int64_t>(s) * s);
              double mx = 0.0;
              for (int r = 0; r < s; ++r)
                for (int c = 0; c < s; ++c) {
                  const std::int64_t fl = g.flat(a0 + r, a1 + c);
                  mx = std::max(mx, std::fabs(fv[fl] - favg) / wv[fl]);
                }
              lb.offer(mx, offs[static_cast<std::size_t>(s)] +
                               static_cast<std::int64_t>(a0) * (n1 - s + 1) + a1);
            }
          }
        }
#pragma omp critical(weightlab_sup_merge)
        best.merge(lb);
      }
    } else {
      std::int64_t off = 0;
      for (int s = 1; s <= smax; s *= 2) {
        const int m0 = n0 / s, m1 = n1 / s;
#pragma omp parallel
        {
          detail::BestCube lb;
#pragma omp for schedule(static) nowait
          for (int j0 = 0; j0 < m0; ++j0) {
            for (int j1 = 0; j1 < m1; ++j1) {
              double fsum = 0.0;
              for (int r = 0; r < s; ++r) {
                double rf = 0.0;
                for (int c = 0; c < s; ++c) rf += fv[g.flat(j0 * s + r, j1 * s + c)];
                fsum += rf;
              }
              const double favg = fsum / (static_cast<std::int64_t>(s) * s);
              double mx = 0.0;
              for (int r = 0; r < s; ++r)
                for (int c = 0; c < s; ++c) {
                  const std::int64_t fl = g.flat(j0 * s + r, j1 * s + c);
                  mx = std::max(mx, std::fabs(fv[fl] - favg) / wv[fl]);
                }
              lb.offer(mx, off + static_cast<std::int64_t>(j0) * m1 + j1);
            }
          }
#pragma omp critical(weightlab_sup_merge)
          best.merge(lb);
        }
        off += static_cast<std::int64_t>(m0) * m1;
      }
    }
  }
  return {best.value, detail::cube_from_enum_index(g, fam, best.index)};
}

namespace {

void check_cube(const Grid& g, const Cube& c) {
  if (!cube_valid(g, c)) throw std::invalid_argument("cube does not fit the grid");
}

}  // namespace

double morrey_local(const GridFunction& f, const Weight& w, double p, double q,
                    const Cube& c) {
  check_same_grid(f, w);
  check_morrey_exponents(p, q);
  check_cube(f.grid, c);
  const Grid& g = f.grid;
  const double* fv = f.values.data();
  const double* wv = w.values.values.data();
  double wsum = 0.0, tsum = 0.0;
  if (g.dim == 1) {
    for (int b = c.anchor[0]; b < c.anchor[0] + c.side; ++b) {
      wsum += wv[b];
      tsum += std::pow(std::fabs(fv[b]), q) * wv[b];
    }
  } else {
    for (int r = 0; r < c.side; ++r) {
      double rw = 0.0, rt = 0.0;
      for (int col = 0; col < c.side; ++col) {
        const std::int64_t fl = g.flat(c.anchor[0] + r, c.anchor[1] + col);
        rw += wv[fl];
        rt += std::pow(std::fabs(fv[fl]), q) * wv[fl];
      }
      wsum += rw;
      tsum += rt;
    }
  }
  return detail::morrey_combine(wsum, tsum, g.cell_volume(), 1.0 / p - 1.0 / q, 1.0 / q);
}

double weak_morrey_local(const GridFunction& f, const Weight& w, double p, double q,
                         const Cube& c) {
  check_same_grid(f, w);
  check_morrey_exponents(p, q);
  check_cube(f.grid, c);
  const Grid& g = f.grid;
  const double* fv = f.values.data();
  const double* wv = w.values.values.data();
  std::vector<detail::LevelItem> items;
  items.reserve(static_cast<std::size_t>(cube_cell_count(g, c)));
  double wsum = 0.0;
  if (g.dim == 1) {
    for (int b = c.anchor[0]; b < c.anchor[0] + c.side; ++b) {
      const double a = std::fabs(fv[b]);
      items.push_back({a, std::pow(a, q), wv[b], b});
      wsum += wv[b];
    }
  } else {
    for (int r = 0; r < c.side; ++r) {
      double rw = 0.0;
      for (int col = 0; col < c.side; ++col) {
        const std::int64_t fl = g.flat(c.anchor[0] + r, c.anchor[1] + col);
        const double a = std::fabs(fv[fl]);
        items.push_back({a, std::pow(a, q), wv[fl], fl});
        rw += wv[fl];
      }
      wsum += rw;
    }
  }
  std::sort(items.begin(), items.end(), detail::level_item_before);
  return detail::morrey_combine(wsum, detail::level_scan_best(items), g.cell_volume(),
                                1.0 / p - 1.0 / q, 1.0 / q);
}

double bmo_local(const GridFunction& f, const Weight& w, double p, const Cube& c) {
  check_same_grid(f, w);
  check_p_finite_ge1(p, "bounded-mean-oscillation norm");
  require_positive_weight(w, "bounded-mean-oscillation norm");
  check_cube(f.grid, c);
  const Grid& g = f.grid;
  const double* fv = f.values.data();
  const double* wv = w.values.values.data();
  double fsum = 0.0, wsum = 0.0, osc = 0.0;
  if (g.dim == 1) {
    const int a = c.anchor[0], b = c.anchor[0] + c.side - 1;
    for (int i = a; i <= b; ++i) {
      fsum += fv[i];
      wsum += wv[i];
    }
    const double favg = fsum / c.side;
    for (int i = a; i <= b; ++i)
      osc += detail::osc_power(fv[i] - favg, p) *
             (p == 1.0 ? 1.0 : std::pow(wv[i], 1.0 - p));
  } else {
    for (int r = 0; r < c.side; ++r) {
      double rf = 0.0, rw = 0.0;
      for (int col = 0; col < c.side; ++col) {
        const std::int64_t fl = g.flat(c.anchor[0] + r, c.anchor[1] + col);
        rf += fv[fl];
        rw += wv[fl];
      }
      fsum += rf;
      wsum += rw;
    }
    const double favg = fsum / (static_cast<std::int64_t>(c.side) * c.side);
    for (int r = 0; r < c.side; ++r) {
      double rosc = 0.0;
      for (int col = 0; col < c.side; ++col) {
        const std::int64_t fl = g.flat(c.anchor[0] + r, c.anchor[1] + col);
        rosc += detail::osc_power(fv[fl] - favg, p) *
                (p == 1.0 ? 1.0 : std::pow(wv[fl], 1.0 - p));
      }
      osc += rosc;
    }
  }
  return detail::bmo_combine(osc, wsum, p, 1.0 / p);
}

double bmo_inf_local(const GridFunction& f, const Weight& w, const Cube& c) {
  check_same_grid(f, w);
  require_positive_weight(w, "bounded-mean-oscillation norm");
  check_cube(f.grid, c);
  const Grid& g = f.grid;
  const double* fv = f.values.data();
  const double* wv = w.values.values.data();
  double fsum = 0.0;
  if (g.dim == 1) {
    for (int i = c.anchor[0]; i < c.anchor[0] + c.side; ++i) fsum += fv[i];
    const double favg = fsum / c.side;
    double mx = 0.0;
    for (int i = c.anchor[0]; i < c.anchor[0] + c.side; ++i)
      mx = std::max(mx, std::fabs(fv[i] - favg) / wv[i]);
    return mx;
  }
  for (int r = 0; r < c.side; ++r) {
    double rf = 0.0;
    for (int col = 0; col < c.side; ++col)
      rf += fv[g.flat(c.anchor[0] + r, c.anchor[1] + col)];
    fsum += rf;
  }
  const double favg = fsum / (static_cast<std::int64_t>(c.side) * c.side);
  double mx = 0.0;
  for (int r = 0; r < c.side; ++r)
    for (int col = 0; col < c.side; ++col) {
      const std::int64_t fl = g.flat(c.anchor[0] + r, c.anchor[1] + col);
      mx = std::max(mx, std::fabs(fv[fl] - favg) / wv[fl]);
    }
  return mx;
}

double norm_value(const GridFunction& f, const Weight& w, const NormSpec& spec,
                  CubeFamily fam) {
  switch (spec.family) {
    case NormFamily::Lebesgue:
      return lebesgue_norm(f, w, spec.p);
    case NormFamily::WeakLebesgue:
      return weak_lebesgue_norm(f, w, spec.p);
    case NormFamily::Morrey:
      return morrey_norm(f, w, spec.p, spec.q, fam).value;
    case NormFamily::WeakMorrey:
      return weak_morrey_norm(f, w, spec.p, spec.q, fam).value;
    case NormFamily::Bmo:
      return bmo_norm(f, w, spec.p, fam).value;
    case NormFamily::BmoInf:
      return bmo_inf_norm(f, w, fam).value;
  }
  throw std::invalid_argument("unknown norm family");
}

}  // namespace weightlab
