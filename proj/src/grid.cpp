#include "weightlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "weightlab/errors.hpp"

namespace weightlab {

namespace {

void check_axis(double lo, double hi, int cells) {
  if (!(std::isfinite(lo) && std::isfinite(hi)))
    throw std::invalid_argument("grid bounds must be finite");
  if (!(lo < hi))
    throw std::invalid_argument("grid requires lo < hi on every axis");
  if (cells < 1)
    throw std::invalid_argument("grid requires at least one cell per axis");
}

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid Grid::make_1d(double lo, double hi, int cells) {
  check_axis(lo, hi, cells);
  Grid g;
  g.dim = 1;
  g.lo = {lo, 0.0};
  g.hi = {hi, 0.0};
  g.cells = {cells, 1};
  g.cell_size = {(hi - lo) / cells, 0.0};
  return g;
}

Grid Grid::make_2d(double lo0, double hi0, int cells0,
                   double lo1, double hi1, int cells1) {
  check_axis(lo0, hi0, cells0);
  check_axis(lo1, hi1, cells1);
  Grid g;
  g.dim = 2;
  g.lo = {lo0, lo1};
  g.hi = {hi0, hi1};
  g.cells = {cells0, cells1};
  g.cell_size = {(hi0 - lo0) / cells0, (hi1 - lo1) / cells1};
  return g;
}

std::int64_t Grid::cell_count() const {
  std::int64_t n = cells[0];
  if (dim == 2) n *= cells[1];
  return n;
}

double Grid::cell_volume() const {
  double v = cell_size[0];
  if (dim == 2) v *= cell_size[1];
  return v;
}

double Grid::edge(int axis, int index) const {
  return lo[axis] + cell_size[axis] * index;
}

double Grid::center(int axis, int index) const {
  return lo[axis] + cell_size[axis] * (index + 0.5);
}

bool Grid::power_of_two() const {
  if (!is_pow2(cells[0])) return false;
  if (dim == 2 && !is_pow2(cells[1])) return false;
  return true;
}

std::int64_t Grid::flat(int i0, int i1) const {
  if (dim == 1) return i0;
  return static_cast<std::int64_t>(i0) * cells[1] + i1;
}

GridFunction GridFunction::constant(const Grid& g, double value) {
  if (!std::isfinite(value))
    throw std::invalid_argument("grid function values must be finite");
  GridFunction f;
  f.grid = g;
  f.values.assign(static_cast<size_t>(g.cell_count()), value);
  return f;
}

GridFunction GridFunction::from_values(const Grid& g, std::vector<double> values) {
  if (static_cast<std::int64_t>(values.size()) != g.cell_count())
    throw std::invalid_argument("grid function value count does not match the grid");
  for (double v : values)
    if (!std::isfinite(v))
      throw std::invalid_argument("grid function values must be finite");
  GridFunction f;
  f.grid = g;
  f.values = std::move(values);
  return f;
}

bool cube_valid(const Grid& g, const Cube& q) {
  if (q.side < 1) return false;
  for (int ax = 0; ax < g.dim; ++ax) {
    if (q.anchor[ax] < 0) return false;
    if (q.anchor[ax] + q.side > g.cells[ax]) return false;
  }
  return true;
}

namespace {

void require_valid(const Grid& g, const Cube& q) {
  if (!cube_valid(g, q))
    throw std::out_of_range("cube does not fit inside the grid");
}

}  // namespace

std::int64_t cube_cell_count(const Grid& g, const Cube& q) {
  require_valid(g, q);
  std::int64_t n = q.side;
  if (g.dim == 2) n *= q.side;
  return n;
}

double cube_volume(const Grid& g, const Cube& q) {
  return g.cell_volume() * static_cast<double>(cube_cell_count(g, q));
}

std::int64_t cube_family_size(const Grid& g, CubeFamily fam) {
  if (fam == CubeFamily::Dyadic && !g.power_of_two())
    throw std::invalid_argument("dyadic cube family requires power-of-two cell counts");
  std::int64_t total = 0;
  const int smax = g.dim == 1 ? g.cells[0] : std::min(g.cells[0], g.cells[1]);
  for (int s = 1; s <= smax; fam == CubeFamily::Dyadic ? s *= 2 : ++s) {
    if (fam == CubeFamily::Dyadic) {
      std::int64_t n = g.cells[0] / s;
      if (g.dim == 2) n *= g.cells[1] / s;
      total += n;
    } else {
      std::int64_t n = g.cells[0] - s + 1;
      if (g.dim == 2) n *= g.cells[1] - s + 1;
      total += n;
    }
  }
  return total;
}

std::vector<Cube> enumerate_cubes(const Grid& g, CubeFamily fam) {
  std::vector<Cube> out;
  out.reserve(static_cast<size_t>(cube_family_size(g, fam)));
  const int smax = g.dim == 1 ? g.cells[0] : std::min(g.cells[0], g.cells[1]);
  for (int s = 1; s <= smax; fam == CubeFamily::Dyadic ? s *= 2 : ++s) {
    const int step = fam == CubeFamily::Dyadic ? s : 1;
    if (g.dim == 1) {
      for (int a = 0; a + s <= g.cells[0]; a += step)
        out.push_back(Cube{{a, 0}, s});
    } else {
      for (int a0 = 0; a0 + s <= g.cells[0]; a0 += step)
        for (int a1 = 0; a1 + s <= g.cells[1]; a1 += step)
          out.push_back(Cube{{a0, a1}, s});
    }
  }
  return out;
}

std::int64_t cube_enum_index(const Grid& g, CubeFamily fam, const Cube& q) {
  require_valid(g, q);
  if (fam == CubeFamily::Dyadic) {
    if (!g.power_of_two())
      throw std::invalid_argument("dyadic cube family requires power-of-two cell counts");
    if (!is_pow2(q.side) || q.anchor[0] % q.side != 0 ||
        (g.dim == 2 && q.anchor[1] % q.side != 0))
      throw std::invalid_argument("cube is not a member of the dyadic family");
  }
  std::int64_t idx = 0;
  const int smax = g.dim == 1 ? g.cells[0] : std::min(g.cells[0], g.cells[1]);
  for (int s = 1; s < q.side; fam == CubeFamily::Dyadic ? s *= 2 : ++s) {
    if (s > smax) break;
    if (fam == CubeFamily::Dyadic) {
      std::int64_t n = g.cells[0] / s;
      if (g.dim == 2) n *= g.cells[1] / s;
      idx += n;
    } else {
      std::int64_t n = g.cells[0] - s + 1;
      if (g.dim == 2) n *= g.cells[1] - s + 1;
      idx += n;
    }
  }
  if (fam == CubeFamily::Dyadic) {
    if (g.dim == 1) return idx + q.anchor[0] / q.side;
    return idx + static_cast<std::int64_t>(q.anchor[0] / q.side) * (g.cells[1] / q.side) +
           q.anchor[1] / q.side;
  }
  if (g.dim == 1) return idx + q.anchor[0];
  return idx + static_cast<std::int64_t>(q.anchor[0]) * (g.cells[1] - q.side + 1) +
         q.anchor[1];
}

double cube_sum(const GridFunction& f, const Cube& q) {
  require_valid(f.grid, q);
  const Grid& g = f.grid;
  if (g.dim == 1) {
    double s = 0.0;
    for (int i = q.anchor[0]; i < q.anchor[0] + q.side; ++i) s += f.values[static_cast<size_t>(i)];
    return s;
  }
  double total = 0.0;
  for (int r = q.anchor[0]; r < q.anchor[0] + q.side; ++r) {
    double row = 0.0;
    const double* base = f.values.data() + static_cast<size_t>(g.flat(r, 0));
    for (int c = q.anchor[1]; c < q.anchor[1] + q.side; ++c) row += base[c];
    total += row;
  }
  return total;
}

double integrate(const GridFunction& f, const Cube& q) {
  return cube_sum(f, q) * f.grid.cell_volume();
}

double average(const GridFunction& f, const Cube& q) {
  return cube_sum(f, q) / static_cast<double>(cube_cell_count(f.grid, q));
}

SupResult sup_over_cubes(const Grid& g, CubeFamily fam,
                         const std::function<double(const Cube&)>& functional) {
  const std::vector<Cube> cubes = enumerate_cubes(g, fam);
  const std::int64_t n = static_cast<std::int64_t>(cubes.size());
  double best = -std::numeric_limits<double>::infinity();
  std::int64_t best_idx = n;  // past the end == "no cube yet"
#pragma omp parallel
  {
    double lbest = -std::numeric_limits<double>::infinity();
    std::int64_t lidx = n;
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < n; ++i) {
      const double v = functional(cubes[static_cast<size_t>(i)]);
      if (v > lbest || (v == lbest && i < lidx)) {
        lbest = v;
        lidx = i;
      }
    }
#pragma omp critical(weightlab_sup_merge)
    {
      if (lbest > best || (lbest == best && lidx < best_idx)) {
        best = lbest;
        best_idx = lidx;
      }
    }
  }
  if (best_idx >= n)
    throw std::invalid_argument("sup_over_cubes: empty cube family");
  return SupResult{best, cubes[static_cast<size_t>(best_idx)]};
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

std::string render_grid(const Grid& g) {
  std::string s;
  if (g.dim == 1) {
    s = "1d:" + fmt_double(g.lo[0]) + "," + fmt_double(g.hi[0]) + "," +
        std::to_string(g.cells[0]);
  } else {
    s = "2d:" + fmt_double(g.lo[0]) + "," + fmt_double(g.hi[0]) + "," +
        std::to_string(g.cells[0]) + "," + fmt_double(g.lo[1]) + "," +
        fmt_double(g.hi[1]) + "," + std::to_string(g.cells[1]);
  }
  return s;
}

std::string family_name(CubeFamily fam) {
  return fam == CubeFamily::All ? "ALL" : "DYADIC";
}

namespace {
constexpr const char* kMagic = "weightlab-grid v1";
}

void write_grid_file(std::ostream& os, const GridFunction& f) {
  const Grid& g = f.grid;
  os << kMagic << "\n" << g.dim << "\n";
  for (int ax = 0; ax < g.dim; ++ax) {
    if (ax) os << ' ';
    os << fmt_double(g.lo[ax]) << ' ' << fmt_double(g.hi[ax]) << ' ' << g.cells[ax];
  }
  os << "\n";
  const std::int64_t n = g.cell_count();
  for (std::int64_t i = 0; i < n; ++i) {
    os << fmt_double(f.values[static_cast<size_t>(i)]);
    os << (((i + 1) % 8 == 0 || i + 1 == n) ? '\n' : ' ');
  }
}

GridFunction read_grid_file(std::istream& is) {
  std::string magic;
  if (!std::getline(is, magic))
    throw ParseError("grid file: missing magic line");
  if (!magic.empty() && magic.back() == '\r') magic.pop_back();
  if (magic != kMagic)
    throw ParseError("grid file: bad magic line '" + magic + "' (expected '" + kMagic + "')");
  int dim = 0;
  if (!(is >> dim) || (dim != 1 && dim != 2))
    throw ParseError("grid file: dimension must be 1 or 2");
  double lo[2] = {0, 0}, hi[2] = {0, 0};
  int cells[2] = {0, 0};
  for (int ax = 0; ax < dim; ++ax) {
    if (!(is >> lo[ax] >> hi[ax] >> cells[ax]))
      throw ParseError("grid file: malformed axis line (want 'lo hi cells' per axis)");
  }
  Grid g = dim == 1 ? Grid::make_1d(lo[0], hi[0], cells[0])
                    : Grid::make_2d(lo[0], hi[0], cells[0], lo[1], hi[1], cells[1]);
  std::vector<double> values;
  values.reserve(static_cast<size_t>(g.cell_count()));
  double v;
  while (is >> v) values.push_back(v);
  if (!is.eof()) {
    is.clear();
    std::string tok;
    is >> tok;
    throw ParseError("grid file: bad value token '" + tok + "'");
  }
  if (static_cast<std::int64_t>(values.size()) != g.cell_count())
    throw ParseError("grid file: value count " + std::to_string(values.size()) +
                     " does not match grid cell count " + std::to_string(g.cell_count()));
  return GridFunction::from_values(g, std::move(values));
}

void write_grid_file(const std::string& path, const GridFunction& f) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_grid_file(os, f);
  if (!os) throw std::runtime_error("write failed: " + path);
}

GridFunction read_grid_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open grid file: " + path);
  return read_grid_file(is);
}

}  // namespace weightlab
