#include "weightlab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "weightlab/errors.hpp"

namespace weightlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_k.
void gauss_legendre(int k, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<std::size_t>(k), 0.0);
  w.assign(static_cast<std::size_t>(k), 0.0);
  for (int i = 0; i < k; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (k + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 64; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < k; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
      }
      dp = k * (t * p0 - p1) / (t * t - 1.0);
      const double dt = p0 / dp;
      t -= dt;
      if (std::fabs(dt) < 1e-15) break;
    }
    {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < k; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
      }
      dp = k * (t * p0 - p1) / (t * t - 1.0);
    }
    x[static_cast<std::size_t>(i)] = t;
    w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

}  // namespace

GridFunction maximal_function(const GridFunction& f, CubeFamily fam) {
  const Grid& g = f.grid;
  if (fam == CubeFamily::Dyadic && !g.power_of_two())
    throw std::invalid_argument("dyadic cube family requires power-of-two cell counts");
  const std::int64_t n = g.cell_count();
  std::vector<double> af(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) af[static_cast<std::size_t>(i)] = std::fabs(f.values[static_cast<std::size_t>(i)]);
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);

  if (g.dim == 1) {
    const int nc = g.cells[0];
    if (fam == CubeFamily::All) {
      // For each anchor a: running averages over [a, b], then a backward
      // suffix max, so cell c gets max over b >= c of avg(a, b). The merge
      // across anchors is a plain max, so the result is schedule-independent.
#pragma omp parallel
      {
        std::vector<double> buf(static_cast<std::size_t>(nc), 0.0);
        std::vector<double> avg(static_cast<std::size_t>(nc), 0.0);
#pragma omp for schedule(static) nowait
        for (int a = 0; a < nc; ++a) {
          double s = 0.0;
          for (int b = a; b < nc; ++b) {
            s += af[static_cast<std::size_t>(b)];
            avg[static_cast<std::size_t>(b)] = s / (b - a + 1);
          }
          for (int b = nc - 2; b >= a; --b)
            avg[static_cast<std::size_t>(b)] =
                std::max(avg[static_cast<std::size_t>(b)], avg[static_cast<std::size_t>(b) + 1]);
          for (int c = a; c < nc; ++c)
            buf[static_cast<std::size_t>(c)] =
                std::max(buf[static_cast<std::size_t>(c)], avg[static_cast<std::size_t>(c)]);
        }
#pragma omp critical(weightlab_maximal_merge)
        for (std::int64_t i = 0; i < n; ++i)
          out[static_cast<std::size_t>(i)] =
              std::max(out[static_cast<std::size_t>(i)], buf[static_cast<std::size_t>(i)]);
      }
    } else {
      for (int s = 1; s <= nc; s *= 2) {
        const int m = nc / s;
#pragma omp parallel for schedule(static)
        for (int j = 0; j < m; ++j) {
          double sum = 0.0;
          for (int c = j * s; c < (j + 1) * s; ++c) sum += af[static_cast<std::size_t>(c)];
          const double avg = sum / s;
          for (int c = j * s; c < (j + 1) * s; ++c)
            out[static_cast<std::size_t>(c)] = std::max(out[static_cast<std::size_t>(c)], avg);
        }
      }
    }
  } else {
    const int n0 = g.cells[0], n1 = g.cells[1];
    const int smax = std::min(n0, n1);
    if (fam == CubeFamily::All) {
#pragma omp parallel
      {
        std::vector<double> buf(static_cast<std::size_t>(n), 0.0);
        std::vector<double> rowseg(static_cast<std::size_t>(smax), 0.0);
        std::vector<double> suf(static_cast<std::size_t>(smax) + 2, 0.0);
#pragma omp for schedule(static) nowait
        for (int a0 = 0; a0 < n0; ++a0) {
          for (int a1 = 0; a1 < n1; ++a1) {
            const int slim = std::min(n0 - a0, n1 - a1);
            for (int s = 1; s <= slim; ++s) {
              for (int r = 0; r < s - 1; ++r)
                rowseg[static_cast<std::size_t>(r)] += af[static_cast<std::size_t>(g.flat(a0 + r, a1 + s - 1))];
              double rf = 0.0;
              for (int c = 0; c < s; ++c) rf += af[static_cast<std::size_t>(g.flat(a0 + s - 1, a1 + c))];
              rowseg[static_cast<std::size_t>(s - 1)] = rf;
              double tot = 0.0;
              for (int r = 0; r < s; ++r) tot += rowseg[static_cast<std::size_t>(r)];
              suf[static_cast<std::size_t>(s)] = tot / (static_cast<std::int64_t>(s) * s);
            }
            suf[static_cast<std::size_t>(slim) + 1] = 0.0;
            for (int s = slim; s >= 1; --s)
              suf[static_cast<std::size_t>(s)] =
                  std::max(suf[static_cast<std::size_t>(s)], suf[static_cast<std::size_t>(s) + 1]);
            for (int d0 = 0; d0 < slim; ++d0)
              for (int d1 = 0; d1 < slim; ++d1) {
                const std::size_t fl = static_cast<std::size_t>(g.flat(a0 + d0, a1 + d1));
                buf[fl] = std::max(buf[fl], suf[static_cast<std::size_t>(std::max(d0, d1)) + 1]);
              }
          }
        }
#pragma omp critical(weightlab_maximal_merge)
        for (std::int64_t i = 0; i < n; ++i)
          out[static_cast<std::size_t>(i)] =
              std::max(out[static_cast<std::size_t>(i)], buf[static_cast<std::size_t>(i)]);
      }
    } else {
      for (int s = 1; s <= smax; s *= 2) {
        const int m0 = n0 / s, m1 = n1 / s;
#pragma omp parallel for schedule(static)
        for (int j0 = 0; j0 < m0; ++j0) {
          for (int j1 = 0; j1 < m1; ++j1) {
            double tot = 0.0;
            for (int r = 0; r < s; ++r) {
              double rf = 0.0;
              for (int c = 0; c < s; ++c) rf += af[static_cast<std::size_t>(g.flat(j0 * s + r, j1 * s + c))];
              tot += rf;
            }
            const double avg = tot / (static_cast<std::int64_t>(s) * s);
            for (int r = 0; r < s; ++r)
              for (int c = 0; c < s; ++c) {
                const std::size_t fl = static_cast<std::size_t>(g.flat(j0 * s + r, j1 * s + c));
                out[fl] = std::max(out[fl], avg);
              }
          }
        }
      }
    }
  }
  return GridFunction::from_values(g, std::move(out));
}

GridFunction hilbert_transform(const GridFunction& f) {
  const Grid& g = f.grid;
  if (g.dim != 1) throw std::invalid_argument("Hilbert transform requires a 1D grid");
  const int n = g.cells[0];
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  const double inv_pi = 1.0 / kPi;
  // Hf(i) = pi^{-1} sum_{j != i} f_j h / (x_i - x_j); the cell width cancels,
  // leaving sum over distances d of (f_{i-d} - f_{i+d}) / d. Pairing the +/-
  // terms keeps even-input/odd-output symmetry exact on symmetric grids.
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    const int dmax = std::max(i, n - 1 - i);
    for (int d = 1; d <= dmax; ++d) {
      const double fm = i - d >= 0 ? f.values[static_cast<std::size_t>(i - d)] : 0.0;
      const double fp = i + d < n ? f.values[static_cast<std::size_t>(i + d)] : 0.0;
      acc += (fm - fp) / d;
    }
    out[static_cast<std::size_t>(i)] = acc * inv_pi;
  }
  return GridFunction::from_values(g, std::move(out));
}

GridFunction riesz_transform(const GridFunction& f, int axis) {
  const Grid& g = f.grid;
  if (g.dim != 2) throw std::invalid_argument("Riesz transform requires a 2D grid");
  if (axis != 0 && axis != 1) throw std::invalid_argument("Riesz axis must be 0 or 1");
  const int n0 = g.cells[0], n1 = g.cells[1];
  const double h0 = g.cell_size[0], h1 = g.cell_size[1];
  const double area = h0 * h1;
  const double c2 = 1.0 / (2.0 * kPi);  // Gamma(3/2) / pi^{3/2}
  std::vector<double> out(static_cast<std::size_t>(g.cell_count()), 0.0);
  // Offsets enumerated over a fixed half plane; each (a, b) contributes the
  // pair f(c - (a,b)) - f(c + (a,b)), so odd symmetry of the kernel is exact.
#pragma omp parallel for schedule(static)
  for (int i0 = 0; i0 < n0; ++i0) {
    for (int i1 = 0; i1 < n1; ++i1) {
      double acc = 0.0;
      for (int a = 0; a < n0; ++a) {
        const int blo = a == 0 ? 1 : -(n1 - 1);
        for (int b = blo; b < n1; ++b) {
          const double d0 = a * h0;
          const double d1 = b * h1;
          const double r2 = d0 * d0 + d1 * d1;
          const double kern = (axis == 0 ? d0 : d1) / (r2 * std::sqrt(r2));
          const int m0 = i0 - a, m1 = i1 - b;
          const int q0 = i0 + a, q1 = i1 + b;
          const double fm = (m0 >= 0 && m0 < n0 && m1 >= 0 && m1 < n1)
                                ? f.values[static_cast<std::size_t>(g.flat(m0, m1))]
                                : 0.0;
          const double fp = (q0 >= 0 && q0 < n0 && q1 >= 0 && q1 < n1)
                                ? f.values[static_cast<std::size_t>(g.flat(q0, q1))]
                                : 0.0;
          acc += (fm - fp) * kern;
        }
      }
      out[static_cast<std::size_t>(g.flat(i0, i1))] = acc * c2 * area;
    }
  }
  return GridFunction::from_values(g, std::move(out));
}

double RadialProfile::value(double r) const {
  switch (kind) {
    case Kind::Box:
      return r <= 1.0 ? 1.0 : 0.0;
    case Kind::Tent:
      return r <= 1.0 ? 1.0 - r : 0.0;
    case Kind::GaussTrunc:
      return r <= trunc_radius ? std::exp(-0.5 * r * r) : 0.0;
  }
  return 0.0;
}

double RadialProfile::support_radius() const {
  return kind == Kind::GaussTrunc ? trunc_radius : 1.0;
}

std::string RadialProfile::render() const {
  switch (kind) {
    case Kind::Box:
      return "box";
    case Kind::Tent:
      return "tent";
    case Kind::GaussTrunc:
      return "gauss-trunc:" + fmt_double(trunc_radius);
  }
  return "";
}

namespace {

// Exact integral of the 1D profile height over [u0, u1] (profile scaled to
// radius eps), for the kinds with piecewise-polynomial antiderivatives.
double profile_seg_1d(const RadialProfile& prof, double eps, double u0, double u1,
                      const std::vector<double>& glx, const std::vector<double>& glw) {
  const double R = eps * prof.support_radius();
  if (prof.kind == RadialProfile::Kind::Box) {
    const double lo = std::max(u0, -R), hi = std::min(u1, R);
    return std::max(0.0, hi - lo);
  }
  if (prof.kind == RadialProfile::Kind::Tent) {
    // integral of (1 - |u|/eps) over [u0,u1] clipped to [-eps, eps]
    auto seg_pos = [eps](double a, double b) {  // 0 <= a <= b <= eps
      return (b - a) - (b * b - a * a) / (2.0 * eps);
    };
    double tot = 0.0;
    const double lo = std::max(u0, -eps), hi = std::min(u1, eps);
    if (lo < hi) {
      if (lo < 0.0) tot += seg_pos(0.0, -lo) - (hi < 0.0 ? seg_pos(0.0, -hi) : 0.0);
      if (hi > 0.0) tot += seg_pos(std::max(lo, 0.0), hi);
    }
    return tot;
  }
  // Gauss quadrature for the truncated gaussian.
  const double lo = std::max(u0, -R), hi = std::min(u1, R);
  if (lo >= hi) return 0.0;
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  double s = 0.0;
  for (std::size_t q = 0; q < glx.size(); ++q)
    s += glw[q] * prof.value(std::fabs(mid + half * glx[q]) / eps);
  return s * half;
}

}  // namespace

Stencil build_stencil(const Grid& g, const RadialProfile& prof, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw std::invalid_argument("convolution radius must be positive and finite");
  std::vector<double> glx, glw;
  gauss_legendre(16, glx, glw);
  const double R = eps * prof.support_radius();
  Stencil st;

  if (g.dim == 1) {
    const double h = g.cell_size[0];
    const int dmax = static_cast<int>(std::floor(R / h + 0.5));
    std::vector<double> wd(static_cast<std::size_t>(dmax) + 1, 0.0);
    for (int d = 0; d <= dmax; ++d)
      wd[static_cast<std::size_t>(d)] =
          profile_seg_1d(prof, eps, d * h - 0.5 * h, d * h + 0.5 * h, glx, glw);
    for (int d = -dmax; d <= dmax; ++d) {
      const double w = wd[static_cast<std::size_t>(std::abs(d))];
      if (w > 0.0) {
        st.offsets.push_back({d, 0});
        st.weights.push_back(w);
      }
    }
  } else {
    const double h0 = g.cell_size[0], h1 = g.cell_size[1];
    const int dmax0 = static_cast<int>(std::floor(R / h0 + 0.5));
    const int dmax1 = static_cast<int>(std::floor(R / h1 + 0.5));
    // Quadrant table, mirrored to all sign combinations so the stencil is
    // exactly symmetric under per-axis reflection.
    std::vector<double> quad(static_cast<std::size_t>(dmax0 + 1) * static_cast<std::size_t>(dmax1 + 1), 0.0);
    for (int a = 0; a <= dmax0; ++a) {
      for (int b = 0; b <= dmax1; ++b) {
        const double u0 = a * h0 - 0.5 * h0, v0 = b * h1 - 0.5 * h1;
        double s = 0.0;
        for (std::size_t qa = 0; qa < glx.size(); ++qa) {
          const double ux = u0 + 0.5 * h0 * (1.0 + glx[qa]);
          double row = 0.0;
          for (std::size_t qb = 0; qb < glx.size(); ++qb) {
            const double uy = v0 + 0.5 * h1 * (1.0 + glx[qb]);
            row += glw[qb] * prof.value(std::sqrt(ux * ux + uy * uy) / eps);
          }
          s += glw[qa] * row;
        }
        quad[static_cast<std::size_t>(a) * static_cast<std::size_t>(dmax1 + 1) + static_cast<std::size_t>(b)] =
            s * 0.25 * h0 * h1;
      }
    }
    for (int a = -dmax0; a <= dmax0; ++a) {
      for (int b = -dmax1; b <= dmax1; ++b) {
        const double w = quad[static_cast<std::size_t>(std::abs(a)) * static_cast<std::size_t>(dmax1 + 1) +
                              static_cast<std::size_t>(std::abs(b))];
        if (w > 0.0) {
          st.offsets.push_back({a, b});
          st.weights.push_back(w);
        }
      }
    }
  }

  double total = 0.0;
  for (double w : st.weights) total += w;
  if (!(total > 0.0))
    throw std::invalid_argument("averaging profile carries no mass on this grid");
  for (double& w : st.weights) w /= total;

  // Domination margin from the stencil level sets: group offsets by weight
  // (descending), track the bounding cube of the running union (origin
  // included), and integrate cube-cell-count over weight levels. The same
  // layer-cake argument bounds T_eps f by (1 + eta) Mf whenever the bounding
  // cube fits inside the grid.
  std::map<double, std::vector<std::size_t>, std::greater<double>> levels;
  for (std::size_t k = 0; k < st.weights.size(); ++k) levels[st.weights[k]].push_back(k);
  int mn0 = 0, mx0 = 0, mn1 = 0, mx1 = 0;
  double integral = 0.0;
  auto it = levels.begin();
  while (it != levels.end()) {
    for (std::size_t k : it->second) {
      mn0 = std::min(mn0, st.offsets[k][0]);
      mx0 = std::max(mx0, st.offsets[k][0]);
      mn1 = std::min(mn1, st.offsets[k][1]);
      mx1 = std::max(mx1, st.offsets[k][1]);
    }
    const double level = it->first;
    ++it;
    const double next = it == levels.end() ? 0.0 : it->first;
    int side = mx0 - mn0 + 1;
    if (g.dim == 2) side = std::max(side, mx1 - mn1 + 1);
    double cells = side;
    if (g.dim == 2) cells *= side;
    integral += (level - next) * cells;
  }
  st.eta = std::max(0.0, integral - 1.0);
  return st;
}

GridFunction convolve_radial(const GridFunction& f, const RadialProfile& prof,
                             double eps) {
  const Grid& g = f.grid;
  const Stencil st = build_stencil(g, prof, eps);
  const std::size_t m = st.weights.size();
  std::vector<double> out(static_cast<std::size_t>(g.cell_count()), 0.0);
  if (g.dim == 1) {
    const int n = g.cells[0];
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        const int j = i - st.offsets[k][0];
        if (j >= 0 && j < n) acc += st.weights[k] * f.values[static_cast<std::size_t>(j)];
      }
      out[static_cast<std::size_t>(i)] = acc;
    }
  } else {
    const int n0 = g.cells[0], n1 = g.cells[1];
#pragma omp parallel for schedule(static)
    for (int i0 = 0; i0 < n0; ++i0) {
      for (int i1 = 0; i1 < n1; ++i1) {
        double acc = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          const int j0 = i0 - st.offsets[k][0];
          const int j1 = i1 - st.offsets[k][1];
          if (j0 >= 0 && j0 < n0 && j1 >= 0 && j1 < n1)
            acc += st.weights[k] * f.values[static_cast<std::size_t>(g.flat(j0, j1))];
        }
        out[static_cast<std::size_t>(g.flat(i0, i1))] = acc;
      }
    }
  }
  return GridFunction::from_values(g, std::move(out));
}

DominationReport maximal_dominates_radial(const GridFunction& f,
                                          const RadialProfile& prof, double eps,
                                          CubeFamily fam) {
  DominationReport rep;
  const Stencil st = build_stencil(f.grid, prof, eps);
  rep.eta = st.eta;
  const GridFunction tf = convolve_radial(f, prof, eps);
  const GridFunction mf = maximal_function(f, fam);
  double mx = 0.0;
  const std::int64_t n = f.grid.cell_count();
  for (std::int64_t i = 0; i < n; ++i) {
    const double tv = std::fabs(tf.values[static_cast<std::size_t>(i)]);
    if (tv > 0.0) mx = std::max(mx, tv / mf.values[static_cast<std::size_t>(i)]);
  }
  rep.max_ratio = mx;
  rep.dominated = mx <= 1.0 + rep.eta + 1e-9;

  // Fit the largest-mass lower envelope c1 * indicator(|x| <= c2) under the
  // (mass-normalized) profile. The continuum mass of the profile:
  const int dim = f.grid.dim;
  const double sup = prof.support_radius();
  double z;  // integral of the un-normalized profile over R^dim
  if (prof.kind == RadialProfile::Kind::Box) {
    z = dim == 1 ? 2.0 : kPi;
  } else if (prof.kind == RadialProfile::Kind::Tent) {
    z = dim == 1 ? 1.0 : kPi / 3.0;
  } else {
    const double r = prof.trunc_radius;
    z = dim == 1 ? std::sqrt(2.0 * kPi) * std::erf(r / std::sqrt(2.0))
                 : 2.0 * kPi * (1.0 - std::exp(-0.5 * r * r));
  }
  double best_mass = -1.0;
  for (int j = 1; j <= 64; ++j) {
    const double r = sup * j / 64.0;
    const double c1 = prof.value(r) / z;
    if (c1 <= 0.0) continue;
    const double ball = dim == 1 ? 2.0 * r : kPi * r * r;
    if (c1 * ball > best_mass) {
      best_mass = c1 * ball;
      rep.c1 = c1;
      rep.c2 = r;
    }
  }
  return rep;
}

PsiProfile PsiProfile::constant(double c, int nodes) {
  if (!(c >= 0.0) || !std::isfinite(c))
    throw std::invalid_argument("psi constant must be nonnegative and finite");
  PsiProfile p;
  p.kind = Kind::Const;
  p.c0 = c;
  p.quad_nodes = nodes;
  return p;
}

PsiProfile PsiProfile::poly(double expo, int nodes) {
  if (!(expo >= 0.0) || !std::isfinite(expo))
    throw std::invalid_argument("psi polynomial exponent must be nonnegative");
  PsiProfile p;
  p.kind = Kind::Poly;
  p.expo = expo;
  p.quad_nodes = nodes;
  return p;
}

PsiProfile PsiProfile::window(double a, double b, int nodes) {
  if (!(a >= 0.0 && a < b && b <= 1.0))
    throw std::invalid_argument("psi window requires 0 <= a < b <= 1");
  PsiProfile p;
  p.kind = Kind::Window;
  p.win_a = a;
  p.win_b = b;
  p.quad_nodes = nodes;
  return p;
}

PsiProfile PsiProfile::table(std::vector<double> t, std::vector<double> y, int nodes) {
  if (t.size() != y.size() || t.size() < 2)
    throw std::invalid_argument("psi table needs at least two (t, psi) rows");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!std::isfinite(t[i]) || !(t[i] >= 0.0 && t[i] <= 1.0))
      throw std::invalid_argument("psi table abscissae must lie in [0, 1]");
    if (i > 0 && !(t[i] > t[i - 1]))
      throw std::invalid_argument("psi table abscissae must be strictly increasing");
    if (!(y[i] >= 0.0) || !std::isfinite(y[i]))
      throw std::invalid_argument("psi table values must be nonnegative and finite");
  }
  PsiProfile p;
  p.kind = Kind::Table;
  p.tv = std::move(t);
  p.yv = std::move(y);
  p.quad_nodes = nodes;
  return p;
}

double PsiProfile::value(double t) const {
  switch (kind) {
    case Kind::Const:
      return c0;
    case Kind::Poly:
      return std::pow(t, expo);
    case Kind::Window:
      return (t >= win_a && t <= win_b) ? 1.0 : 0.0;
    case Kind::Table: {
      if (t < tv.front() || t > tv.back()) return 0.0;
      const auto it = std::upper_bound(tv.begin(), tv.end(), t);
      const std::size_t hi = std::min(tv.size() - 1, static_cast<std::size_t>(it - tv.begin()));
      if (hi == 0) return yv.front();
      const std::size_t lo = hi - 1;
      const double u = (t - tv[lo]) / (tv[hi] - tv[lo]);
      return yv[lo] + u * (yv[hi] - yv[lo]);
    }
  }
  return 0.0;
}

void PsiProfile::nodes(std::vector<double>& t, std::vector<double>& w) const {
  if (quad_nodes < 1) throw std::invalid_argument("psi quadrature needs at least one node");
  double lo = 0.0, hi = 1.0;
  if (kind == Kind::Window) {
    lo = win_a;
    hi = win_b;
  } else if (kind == Kind::Table) {
    lo = std::max(0.0, tv.front());
    hi = std::min(1.0, tv.back());
  }
  const int k = quad_nodes;
  const double step = (hi - lo) / k;
  t.assign(static_cast<std::size_t>(k), 0.0);
  w.assign(static_cast<std::size_t>(k), 0.0);
  for (int i = 0; i < k; ++i) {
    const double ti = lo + (i + 0.5) * step;
    t[static_cast<std::size_t>(i)] = ti;
    w[static_cast<std::size_t>(i)] = step * value(ti);
  }
}

double PsiProfile::mass() const {
  std::vector<double> t, w;
  nodes(t, w);
  double s = 0.0;
  for (double v : w) s += v;
  return s;
}

double PsiProfile::integral_against_power(double alpha) const {
  std::vector<double> t, w;
  nodes(t, w);
  double s = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) s += w[i] * std::pow(t[i], alpha);
  return s;
}

std::string PsiProfile::render() const {
  switch (kind) {
    case Kind::Const:
      return "const:" + fmt_double(c0);
    case Kind::Poly:
      return "poly:" + fmt_double(expo);
    case Kind::Window:
      return "window:" + fmt_double(win_a) + "," + fmt_double(win_b);
    case Kind::Table:
      return "table:" + std::to_string(tv.size()) + "pts";
  }
  return "";
}

namespace {

void require_origin_inside(const Grid& g, const char* what) {
  for (int ax = 0; ax < g.dim; ++ax)
    if (!(g.lo[ax] <= 0.0 && 0.0 <= g.hi[ax]))
      throw HypothesisViolationError(std::string(what) +
                                     " requires the origin inside the domain box");
}

}  // namespace

double interpolate(const GridFunction& f, const std::array<double, 2>& x) {
  const Grid& g = f.grid;
  int i0[2] = {0, 0};
  double fr[2] = {0.0, 0.0};
  for (int ax = 0; ax < g.dim; ++ax) {
    const int n = g.cells[ax];
    if (n == 1) continue;
    const double s = (x[static_cast<std::size_t>(ax)] - g.lo[ax]) / g.cell_size[ax] - 0.5;
    const double fl = std::floor(s);
    int i = static_cast<int>(fl);
    double u = s - fl;
    if (i < 0) {
      i = 0;
      u = 0.0;
    } else if (i > n - 2) {
      i = n - 2;
      u = 1.0;
    }
    i0[ax] = i;
    fr[ax] = u;
  }
  if (g.dim == 1) {
    if (g.cells[0] == 1) return f.values[0];
    return (1.0 - fr[0]) * f.values[static_cast<std::size_t>(i0[0])] +
           fr[0] * f.values[static_cast<std::size_t>(i0[0] + 1)];
  }
  const int j0 = i0[0], j1 = i0[1];
  const int k0 = g.cells[0] == 1 ? j0 : j0 + 1;
  const int k1 = g.cells[1] == 1 ? j1 : j1 + 1;
  const double v00 = f.values[static_cast<std::size_t>(g.flat(j0, j1))];
  const double v01 = f.values[static_cast<std::size_t>(g.flat(j0, k1))];
  const double v10 = f.values[static_cast<std::size_t>(g.flat(k0, j1))];
  const double v11 = f.values[static_cast<std::size_t>(g.flat(k0, k1))];
  const double a = (1.0 - fr[1]) * v00 + fr[1] * v01;
  const double b = (1.0 - fr[1]) * v10 + fr[1] * v11;
  return (1.0 - fr[0]) * a + fr[0] * b;
}

GridFunction hardy_average(const GridFunction& f, const PsiProfile& psi) {
  const Grid& g = f.grid;
  require_origin_inside(g, "Hardy-type average");
  std::vector<double> t, wq;
  psi.nodes(t, wq);
  const std::size_t k = t.size();
  std::vector<double> out(static_cast<std::size_t>(g.cell_count()), 0.0);
  if (g.dim == 1) {
    const int n = g.cells[0];
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
      const double x = g.center(0, i);
      double acc = 0.0;
      for (std::size_t q = 0; q < k; ++q)
        acc += wq[q] * interpolate(f, {t[q] * x, 0.0});
      out[static_cast<std::size_t>(i)] = acc;
    }
  } else {
    const int n0 = g.cells[0], n1 = g.cells[1];
#pragma omp parallel for schedule(static)
    for (int i0 = 0; i0 < n0; ++i0) {
      const double x0 = g.center(0, i0);
      for (int i1 = 0; i1 < n1; ++i1) {
        const double x1 = g.center(1, i1);
        double acc = 0.0;
        for (std::size_t q = 0; q < k; ++q)
          acc += wq[q] * interpolate(f, {t[q] * x0, t[q] * x1});
        out[static_cast<std::size_t>(g.flat(i0, i1))] = acc;
      }
    }
  }
  return GridFunction::from_values(g, std::move(out));
}

CesaroResult cesaro_average(const GridFunction& f, const PsiProfile& psi) {
  const Grid& g = f.grid;
  require_origin_inside(g, "Cesaro-type average");
  std::vector<double> t, wq;
  psi.nodes(t, wq);
  const std::size_t k = t.size();
  double wtot = 0.0;
  for (double v : wq) wtot += v;
  const std::int64_t n = g.cell_count();
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  std::vector<double> esc(static_cast<std::size_t>(n), 0.0);
  const bool two_d = g.dim == 2;
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < n; ++c) {
    int i0, i1 = 0;
    if (two_d) {
      i0 = static_cast<int>(c / g.cells[1]);
      i1 = static_cast<int>(c % g.cells[1]);
    } else {
      i0 = static_cast<int>(c);
    }
    const double x0 = g.center(0, i0);
    const double x1 = two_d ? g.center(1, i1) : 0.0;
    double acc = 0.0, lost = 0.0;
    for (std::size_t q = 0; q < k; ++q) {
      const double u0 = x0 / t[q];
      const double u1 = two_d ? x1 / t[q] : 0.0;
      bool inside = u0 >= g.lo[0] && u0 <= g.hi[0];
      if (two_d) inside = inside && u1 >= g.lo[1] && u1 <= g.hi[1];
      if (inside) {
        const double tpow = two_d ? 1.0 / (t[q] * t[q]) : 1.0 / t[q];
        acc += wq[q] * tpow * interpolate(f, {u0, u1});
      } else {
        lost += wq[q];
      }
    }
    out[static_cast<std::size_t>(c)] = acc;
    esc[static_cast<std::size_t>(c)] = wtot > 0.0 ? lost / wtot : 0.0;
  }
  CesaroResult res{GridFunction::from_values(g, std::move(out)), std::move(esc)};
  return res;
}

}  // namespace weightlab
