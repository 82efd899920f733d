#include "weightlab/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "scalar_kernels.hpp"

namespace weightlab {
namespace ref {

namespace {

template <typename Fn>
SupResult sup_seq(const Grid& g, CubeFamily fam, Fn&& fn) {
  const std::vector<Cube> cubes = enumerate_cubes(g, fam);
  SupResult best{-std::numeric_limits<double>::infinity(), Cube{}};
  bool first = true;
  for (const Cube& c : cubes) {
    const double v = fn(c);
    if (first || v > best.value) {
      best.value = v;
      best.witness = c;
      first = false;
    }
  }
  return best;
}

}  // namespace

SupResult ap_constant(const Weight& w, double p, CubeFamily fam) {
  return sup_seq(w.values.grid, fam,
                 [&](const Cube& c) { return ap_product(w, p, c); });
}

SupResult a1_constant(const Weight& w, CubeFamily fam) {
  return sup_seq(w.values.grid, fam, [&](const Cube& c) { return a1_ratio(w, c); });
}

SupResult ainfty_constant(const Weight& w, CubeFamily fam) {
  return sup_seq(w.values.grid, fam,
                 [&](const Cube& c) { return ainfty_product(w, c); });
}

double lebesgue_norm(const GridFunction& f, const Weight& w, double p) {
  const std::int64_t n = f.grid.cell_count();
  double s = 0.0;
  for (std::int64_t i = 0; i < n; ++i)
    s += std::pow(std::fabs(f.values[static_cast<std::size_t>(i)]), p) *
         w.values.values[static_cast<std::size_t>(i)];
  return std::pow(s * f.grid.cell_volume(), 1.0 / p);
}

double weak_lebesgue_norm(const GridFunction& f, const Weight& w, double p) {
  const std::int64_t n = f.grid.cell_count();
  std::vector<detail::LevelItem> items(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const double a = std::fabs(f.values[static_cast<std::size_t>(i)]);
    items[static_cast<std::size_t>(i)] = {a, std::pow(a, p),
                                          w.values.values[static_cast<std::size_t>(i)], i};
  }
  std::sort(items.begin(), items.end(), detail::level_item_before);
  return std::pow(detail::level_scan_best(items) * f.grid.cell_volume(), 1.0 / p);
}

SupResult morrey_norm(const GridFunction& f, const Weight& w, double p, double q,
                      CubeFamily fam) {
  return sup_seq(f.grid, fam,
                 [&](const Cube& c) { return morrey_local(f, w, p, q, c); });
}

SupResult weak_morrey_norm(const GridFunction& f, const Weight& w, double p, double q,
                           CubeFamily fam) {
  return sup_seq(f.grid, fam,
                 [&](const Cube& c) { return weak_morrey_local(f, w, p, q, c); });
}

SupResult bmo_norm(const GridFunction& f, const Weight& w, double p, CubeFamily fam) {
  return sup_seq(f.grid, fam, [&](const Cube& c) { return bmo_local(f, w, p, c); });
}

SupResult bmo_inf_norm(const GridFunction& f, const Weight& w, CubeFamily fam) {
  return sup_seq(f.grid, fam, [&](const Cube& c) { return bmo_inf_local(f, w, c); });
}

GridFunction maximal_function(const GridFunction& f, CubeFamily fam) {
  const Grid& g = f.grid;
  std::vector<double> av(f.values.size());
  for (std::size_t i = 0; i < av.size(); ++i) av[i] = std::fabs(f.values[i]);
  const GridFunction af = GridFunction::from_values(g, std::move(av));
  std::vector<double> out(f.values.size(), 0.0);
  for (const Cube& c : enumerate_cubes(g, fam)) {
    const double a = average(af, c);
    if (g.dim == 1) {
      for (int i = c.anchor[0]; i < c.anchor[0] + c.side; ++i)
        out[static_cast<std::size_t>(i)] = std::max(out[static_cast<std::size_t>(i)], a);
    } else {
      for (int r = 0; r < c.side; ++r)
        for (int col = 0; col < c.side; ++col) {
          const std::size_t fl =
              static_cast<std::size_t>(g.flat(c.anchor[0] + r, c.anchor[1] + col));
          out[fl] = std::max(out[fl], a);
        }
    }
  }
  return GridFunction::from_values(g, std::move(out));
}

}  // namespace ref
}  // namespace weightlab
