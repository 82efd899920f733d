#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace weightlab {

inline constexpr int kMaxDim = 2;

// Uniform partition of an axis-aligned box in R^n, n in {1, 2}.
struct Grid {
  int dim = 1;
  std::array<double, kMaxDim> lo{};
  std::array<double, kMaxDim> hi{};
  std::array<int, kMaxDim> cells{};      // cells per axis
  std::array<double, kMaxDim> cell_size{};

  static Grid make_1d(double lo, double hi, int cells);
  static Grid make_2d(double lo0, double hi0, int cells0,
                      double lo1, double hi1, int cells1);

  std::int64_t cell_count() const;
  double cell_volume() const;            // product of cell_size over axes
  // Coordinates of cell edges / centers along one axis.
  double edge(int axis, int index) const;     // index in [0, cells]
  double center(int axis, int index) const;   // index in [0, cells)
  bool power_of_two() const;                   // every axis count a power of 2

  // Row-major flattening: axis 0 outer, axis 1 inner.
  std::int64_t flat(int i0, int i1 = 0) const;

  bool operator==(const Grid&) const = default;
};

// Scalar function sampled as one value per cell (cell averages), row-major.
struct GridFunction {
  Grid grid;
  std::vector<double> values;

  static GridFunction constant(const Grid& g, double value);
  // Validates the count and that every value is finite.
  static GridFunction from_values(const Grid& g, std::vector<double> values);

  double& at(int i0, int i1 = 0) { return values[static_cast<size_t>(grid.flat(i0, i1))]; }
  double at(int i0, int i1 = 0) const { return values[static_cast<size_t>(grid.flat(i0, i1))]; }
};

// Axis-aligned cube of cells: anchor cell plus one integer side, equal on
// all axes. A 1D cube is an interval of cells.
struct Cube {
  std::array<int, kMaxDim> anchor{};
  int side = 1;
  bool operator==(const Cube&) const = default;
};

enum class CubeFamily { All, Dyadic };

bool cube_valid(const Grid&, const Cube&);
std::int64_t cube_cell_count(const Grid&, const Cube&);   // side^dim
double cube_volume(const Grid&, const Cube&);

// Deterministic enumeration: increasing side, then anchor row-major.
// Dyadic requires power-of-two cell counts (configuration error otherwise)
// and restricts to side = 2^k with anchors aligned to multiples of the side.
std::int64_t cube_family_size(const Grid&, CubeFamily);
std::vector<Cube> enumerate_cubes(const Grid&, CubeFamily);
// Position of a cube in that enumeration (the tie-break key for sups).
std::int64_t cube_enum_index(const Grid&, CubeFamily, const Cube&);

// Canonical cube summation: 1D sums cells left to right; 2D keeps one
// accumulator per axis-0 row and then accumulates the row sums in order.
// Every cube scan in the library reproduces exactly this order, which is
// what makes accelerated paths bitwise-comparable to naive ones.
double cube_sum(const GridFunction&, const Cube&);
double integrate(const GridFunction&, const Cube&);   // cube_sum * cell volume
double average(const GridFunction&, const Cube&);     // cube_sum / cell count

struct SupResult {
  double value = 0.0;
  Cube witness{};
};

// Maximum of a per-cube functional over the family. Ties resolve to the
// first cube in enumeration order; parallel evaluation merges chunk maxima
// with the same rule, so the result matches a sequential scan bit for bit.
SupResult sup_over_cubes(const Grid&, CubeFamily,
                         const std::function<double(const Cube&)>& functional);

// "weightlab-grid v1" text format: magic line, dim line, one line of
// per-axis "lo hi cells" triples, then cell values row-major.
void write_grid_file(std::ostream&, const GridFunction&);
GridFunction read_grid_file(std::istream&);
void write_grid_file(const std::string& path, const GridFunction&);
GridFunction read_grid_file(const std::string& path);

// Deterministic float formatting used by every serializer ("%.17g").
std::string fmt_double(double);

// Canonical text forms used by the CLI and by report echoes:
// "1d:<lo>,<hi>,<cells>" / "2d:<lo0>,<hi0>,<cells0>,<lo1>,<hi1>,<cells1>"
// and "ALL" / "DYADIC".
std::string render_grid(const Grid&);
std::string family_name(CubeFamily);

}  // namespace weightlab
