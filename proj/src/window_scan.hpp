#pragma once

// Internal engine for "sup over all cubes of a function of window sums".
//
// Determinism contract: every window sum is accumulated in the canonical
// order (1D left to right; 2D one accumulator per axis-0 row, row sums then
// added top to bottom). The running-sum scans below reproduce that order
// exactly, so their results are bitwise equal to evaluating each cube from
// scratch. Ties in the sup resolve to the smallest enumeration index
// (increasing side, then anchor row-major), and the OpenMP reduction merges
// per-thread maxima with the same rule, which is associative and therefore
// independent of the thread partition.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "weightlab/grid.hpp"

namespace weightlab {
namespace detail {

inline void validate_family(const Grid& g, CubeFamily fam) {
  if (fam == CubeFamily::Dyadic && !g.power_of_two())
    throw std::invalid_argument("dyadic cube family requires power-of-two cell counts");
}

// Offset of the first cube with the given side in the family enumeration.
inline std::int64_t enum_offset(const Grid& g, CubeFamily fam, int side) {
  std::int64_t off = 0;
  for (int s = 1; s < side; fam == CubeFamily::Dyadic ? s *= 2 : ++s) {
    if (fam == CubeFamily::Dyadic) {
      std::int64_t n = g.cells[0] / s;
      if (g.dim == 2) n *= g.cells[1] / s;
      off += n;
    } else {
      std::int64_t n = g.cells[0] - s + 1;
      if (g.dim == 2) n *= static_cast<std::int64_t>(g.cells[1] - s + 1);
      off += n;
    }
  }
  return off;
}

// enum_offset for every side in one pass; offs[s] is the offset of side s
// (All family only; the scan loops index it inside their hot paths).
inline std::vector<std::int64_t> enum_offsets_all(const Grid& g, int smax) {
  std::vector<std::int64_t> offs(static_cast<size_t>(smax) + 1, 0);
  for (int s = 1; s < smax; ++s) {
    std::int64_t n = g.cells[0] - s + 1;
    if (g.dim == 2) n *= static_cast<std::int64_t>(g.cells[1] - s + 1);
    offs[static_cast<size_t>(s) + 1] = offs[static_cast<size_t>(s)] + n;
  }
  return offs;
}

struct BestCube {
  double value = -std::numeric_limits<double>::infinity();
  std::int64_t index = std::numeric_limits<std::int64_t>::max();

  void offer(double v, std::int64_t idx) {
    if (v > value || (v == value && idx < index)) {
      value = v;
      index = idx;
    }
  }
  void merge(const BestCube& other) { offer(other.value, other.index); }
};

// Recover the cube from its enumeration index.
inline Cube cube_from_enum_index(const Grid& g, CubeFamily fam, std::int64_t idx) {
  const int smax = g.dim == 1 ? g.cells[0] : std::min(g.cells[0], g.cells[1]);
  for (int s = 1; s <= smax; fam == CubeFamily::Dyadic ? s *= 2 : ++s) {
    std::int64_t n;
    if (fam == CubeFamily::Dyadic) {
      n = g.cells[0] / s;
      if (g.dim == 2) n *= g.cells[1] / s;
    } else {
      n = g.cells[0] - s + 1;
      if (g.dim == 2) n *= static_cast<std::int64_t>(g.cells[1] - s + 1);
    }
    if (idx < n) {
      if (fam == CubeFamily::Dyadic) {
        if (g.dim == 1) return Cube{{static_cast<int>(idx) * s, 0}, s};
        const int per_row = g.cells[1] / s;
        return Cube{{static_cast<int>(idx / per_row) * s,
                     static_cast<int>(idx % per_row) * s}, s};
      }
      if (g.dim == 1) return Cube{{static_cast<int>(idx), 0}, s};
      const int per_row = g.cells[1] - s + 1;
      return Cube{{static_cast<int>(idx / per_row), static_cast<int>(idx % per_row)}, s};
    }
    idx -= n;
  }
  return Cube{};  // unreachable for valid indices
}

// Sup over the family of value(sums, minval, cell_count), where sums[k] is
// the window sum of arrs[k] and minval the window minimum of min_arr (pass
// nullptr when unused). ValueFn must be a pure function of its arguments.
template <typename ValueFn>
SupResult window_scan_sup(const Grid& g, CubeFamily fam,
                          const std::vector<const double*>& arrs,
                          const double* min_arr, ValueFn&& value) {
  validate_family(g, fam);
  const int k = static_cast<int>(arrs.size());
  BestCube best;
  if (g.dim == 1) {
    const int n = g.cells[0];
    if (fam == CubeFamily::All) {
      const std::vector<std::int64_t> offs = enum_offsets_all(g, n);
#pragma omp parallel
      {
        BestCube lb;
        std::array<double, 4> sums{};
#pragma omp for schedule(static) nowait
        for (int a = 0; a < n; ++a) {
          sums.fill(0.0);
          double mn = std::numeric_limits<double>::infinity();
          for (int b = a; b < n; ++b) {
            for (int j = 0; j < k; ++j) sums[static_cast<size_t>(j)] += arrs[static_cast<size_t>(j)][b];
            if (min_arr) mn = std::min(mn, min_arr[b]);
            const int side = b - a + 1;
            lb.offer(value(sums.data(), mn, side),
                     offs[static_cast<size_t>(side)] + a);
          }
        }
#pragma omp critical(weightlab_window_scan)
        best.merge(lb);
      }
    } else {
      for (int s = 1; s <= n; s *= 2) {
        const std::int64_t off = enum_offset(g, fam, s);
#pragma omp parallel
        {
          BestCube lb;
          std::array<double, 4> sums{};
#pragma omp for schedule(static) nowait
          for (int a = 0; a < n / s; ++a) {
            sums.fill(0.0);
            double mn = std::numeric_limits<double>::infinity();
            for (int b = a * s; b < (a + 1) * s; ++b) {
              for (int j = 0; j < k; ++j) sums[static_cast<size_t>(j)] += arrs[static_cast<size_t>(j)][b];
              if (min_arr) mn = std::min(mn, min_arr[b]);
            }
            lb.offer(value(sums.data(), mn, s), off + a);
          }
#pragma omp critical(weightlab_window_scan)
          best.merge(lb);
        }
      }
    }
  } else {
    const int n0 = g.cells[0], n1 = g.cells[1];
    const int smax = std::min(n0, n1);
    if (fam == CubeFamily::All) {
      const std::vector<std::int64_t> offs = enum_offsets_all(g, smax);
#pragma omp parallel
      {
        BestCube lb;
        std::vector<std::vector<double>> rowseg(static_cast<size_t>(k),
                                                std::vector<double>(static_cast<size_t>(smax)));
        std::vector<double> rowmin(static_cast<size_t>(smax));
        std::array<double, 4> sums{};
#pragma omp for collapse(2) schedule(static) nowait
        for (int a0 = 0; a0 < n0; ++a0) {
          for (int a1 = 0; a1 < n1; ++a1) {
            const int lim = std::min(n0 - a0, n1 - a1);
            for (int s = 1; s <= lim; ++s) {
              const int j = a1 + s - 1;
              // extend existing rows to the right, canonical order per row
              for (int r = 0; r < s - 1; ++r) {
                const std::int64_t fl = g.flat(a0 + r, j);
                for (int t = 0; t < k; ++t) rowseg[static_cast<size_t>(t)][static_cast<size_t>(r)] += arrs[static_cast<size_t>(t)][fl];
                if (min_arr) rowmin[static_cast<size_t>(r)] = std::min(rowmin[static_cast<size_t>(r)], min_arr[fl]);
              }
              // fresh bottom row, left to right
              for (int t = 0; t < k; ++t) rowseg[static_cast<size_t>(t)][static_cast<size_t>(s - 1)] = 0.0;
              double mnr = std::numeric_limits<double>::infinity();
              for (int c = a1; c <= j; ++c) {
                const std::int64_t fl = g.flat(a0 + s - 1, c);
                for (int t = 0; t < k; ++t) rowseg[static_cast<size_t>(t)][static_cast<size_t>(s - 1)] += arrs[static_cast<size_t>(t)][fl];
                if (min_arr) mnr = std::min(mnr, min_arr[fl]);
              }
              if (min_arr) rowmin[static_cast<size_t>(s - 1)] = mnr;
              // combine rows top to bottom
              sums.fill(0.0);
              double mn = std::numeric_limits<double>::infinity();
              for (int r = 0; r < s; ++r) {
                for (int t = 0; t < k; ++t) sums[static_cast<size_t>(t)] += rowseg[static_cast<size_t>(t)][static_cast<size_t>(r)];
                if (min_arr) mn = std::min(mn, rowmin[static_cast<size_t>(r)]);
              }
              lb.offer(value(sums.data(), mn, static_cast<std::int64_t>(s) * s),
                       offs[static_cast<size_t>(s)] +
                           static_cast<std::int64_t>(a0) * (n1 - s + 1) + a1);
            }
          }
        }
#pragma omp critical(weightlab_window_scan)
        best.merge(lb);
      }
    } else {
      for (int s = 1; s <= smax; s *= 2) {
        const std::int64_t off = enum_offset(g, fam, s);
        const int per_row = n1 / s;
#pragma omp parallel
        {
          BestCube lb;
          std::array<double, 4> sums{};
#pragma omp for collapse(2) schedule(static) nowait
          for (int a0 = 0; a0 < n0 / s; ++a0) {
            for (int a1 = 0; a1 < n1 / s; ++a1) {
              sums.fill(0.0);
              double mn = std::numeric_limits<double>::infinity();
              for (int r = a0 * s; r < (a0 + 1) * s; ++r) {
                std::array<double, 4> row{};
                double mnr = std::numeric_limits<double>::infinity();
                for (int c = a1 * s; c < (a1 + 1) * s; ++c) {
                  const std::int64_t fl = g.flat(r, c);
                  for (int t = 0; t < k; ++t) row[static_cast<size_t>(t)] += arrs[static_cast<size_t>(t)][fl];
                  if (min_arr) mnr = std::min(mnr, min_arr[fl]);
                }
                for (int t = 0; t < k; ++t) sums[static_cast<size_t>(t)] += row[static_cast<size_t>(t)];
                if (min_arr) mn = std::min(mn, mnr);
              }
              lb.offer(value(sums.data(), mn, static_cast<std::int64_t>(s) * s),
                       off + static_cast<std::int64_t>(a0) * per_row + a1);
            }
          }
#pragma omp critical(weightlab_window_scan)
          best.merge(lb);
        }
      }
    }
  }
  return SupResult{best.value, cube_from_enum_index(g, fam, best.index)};
}

}  // namespace detail
}  // namespace weightlab
