// Grid model: uniform partitions, cube families, canonical summation order,
// witnessed sups, and the text serialization round trip.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <sstream>

#include "doctest.h"
#include "weightlab/errors.hpp"
#include "weightlab/grid.hpp"

using namespace weightlab;

TEST_CASE("1D grid geometry") {
  const Grid g = Grid::make_1d(-1.0, 1.0, 8);
  CHECK(g.dim == 1);
  CHECK(g.cell_count() == 8);
  CHECK(g.cell_size[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(g.cell_volume() == g.cell_size[0]);
  CHECK(g.edge(0, 0) == -1.0);
  CHECK(g.edge(0, 8) == 1.0);
  CHECK(g.center(0, 4) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(g.power_of_two());
  CHECK_FALSE(Grid::make_1d(0.0, 1.0, 12).power_of_two());
}

TEST_CASE("grid constructor validation") {
  CHECK_THROWS_AS(Grid::make_1d(1.0, 1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(Grid::make_1d(2.0, 1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(Grid::make_1d(0.0, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(Grid::make_1d(0.0, std::numeric_limits<double>::infinity(), 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(Grid::make_2d(0, 1, 4, 1, 1, 4), std::invalid_argument);
}

TEST_CASE("2D flattening is row-major with axis 0 outer") {
  const Grid g = Grid::make_2d(0.0, 1.0, 3, 0.0, 1.0, 2);
  CHECK(g.cell_count() == 6);
  CHECK(g.flat(0, 0) == 0);
  CHECK(g.flat(0, 1) == 1);
  CHECK(g.flat(1, 0) == 2);
  CHECK(g.flat(2, 1) == 5);
  CHECK(g.cell_volume() ==
        doctest::Approx(g.cell_size[0] * g.cell_size[1]).epsilon(1e-15));
}

TEST_CASE("grid function constructors validate their input") {
  const Grid g = Grid::make_1d(0.0, 1.0, 4);
  const GridFunction c = GridFunction::constant(g, 2.5);
  CHECK(c.values.size() == 4);
  CHECK(c.at(3) == 2.5);
  CHECK_THROWS_AS(GridFunction::from_values(g, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(GridFunction::from_values(g, {1.0, 2.0, 3.0, std::nan("")}),
                  std::invalid_argument);
  const GridFunction f = GridFunction::from_values(g, {1.0, -2.0, 3.0, 4.0});
  CHECK(f.at(1) == -2.0);
}

TEST_CASE("cube validity and measures") {
  const Grid g = Grid::make_1d(0.0, 1.0, 8);
  CHECK(cube_valid(g, Cube{{0, 0}, 8}));
  CHECK(cube_valid(g, Cube{{7, 0}, 1}));
  CHECK_FALSE(cube_valid(g, Cube{{7, 0}, 2}));
  CHECK_FALSE(cube_valid(g, Cube{{0, 0}, 0}));
  CHECK_FALSE(cube_valid(g, Cube{{-1, 0}, 1}));
  CHECK(cube_cell_count(g, Cube{{2, 0}, 3}) == 3);
  CHECK(cube_volume(g, Cube{{2, 0}, 2}) == doctest::Approx(0.25).epsilon(1e-15));

  const Grid g2 = Grid::make_2d(0, 1, 4, 0, 1, 4);
  CHECK(cube_cell_count(g2, Cube{{1, 1}, 3}) == 9);
  CHECK_FALSE(cube_valid(g2, Cube{{2, 2}, 3}));
}

TEST_CASE("ALL-family enumeration: increasing side, then anchor row-major") {
  const Grid g = Grid::make_1d(0.0, 1.0, 4);
  const std::vector<Cube> cubes = enumerate_cubes(g, CubeFamily::All);
  CHECK(cubes.size() == 10);  // 4 + 3 + 2 + 1
  CHECK(cube_family_size(g, CubeFamily::All) == 10);
  CHECK(cubes.front() == Cube{{0, 0}, 1});
  CHECK(cubes[4] == Cube{{0, 0}, 2});
  CHECK(cubes.back() == Cube{{0, 0}, 4});
  for (size_t i = 0; i < cubes.size(); ++i)
    CHECK(cube_enum_index(g, CubeFamily::All, cubes[i]) ==
          static_cast<std::int64_t>(i));
  // Sides never decrease; anchors increase within one side.
  for (size_t i = 1; i < cubes.size(); ++i) {
    CHECK(cubes[i].side >= cubes[i - 1].side);
    if (cubes[i].side == cubes[i - 1].side)
      CHECK(cubes[i].anchor[0] > cubes[i - 1].anchor[0]);
  }
}

TEST_CASE("ALL-family enumeration in 2D covers non-square grids") {
  const Grid g = Grid::make_2d(0, 1, 3, 0, 1, 2);
  const std::vector<Cube> cubes = enumerate_cubes(g, CubeFamily::All);
  CHECK(cubes.size() == 8);  // 6 singletons + 2 side-2 squares
  CHECK(cube_family_size(g, CubeFamily::All) == 8);
  CHECK(cubes[6] == Cube{{0, 0}, 2});
  CHECK(cubes[7] == Cube{{1, 0}, 2});
  for (size_t i = 0; i < cubes.size(); ++i)
    CHECK(cube_enum_index(g, CubeFamily::All, cubes[i]) ==
          static_cast<std::int64_t>(i));
}

TEST_CASE("dyadic family: power-of-two sides on aligned anchors") {
  const Grid g = Grid::make_1d(0.0, 1.0, 8);
  const std::vector<Cube> cubes = enumerate_cubes(g, CubeFamily::Dyadic);
  CHECK(cubes.size() == 15);  // 8 + 4 + 2 + 1
  CHECK(cube_family_size(g, CubeFamily::Dyadic) == 15);
  for (const Cube& c : cubes) {
    CHECK((c.side & (c.side - 1)) == 0);
    CHECK(c.anchor[0] % c.side == 0);
  }
  for (size_t i = 0; i < cubes.size(); ++i)
    CHECK(cube_enum_index(g, CubeFamily::Dyadic, cubes[i]) ==
          static_cast<std::int64_t>(i));
  // Non-members and non-power-of-two grids are configuration errors.
  CHECK_THROWS_AS(cube_enum_index(g, CubeFamily::Dyadic, Cube{{1, 0}, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(enumerate_cubes(Grid::make_1d(0, 1, 12), CubeFamily::Dyadic),
                  std::invalid_argument);

  const Grid g2 = Grid::make_2d(0, 1, 4, 0, 1, 4);
  CHECK(cube_family_size(g2, CubeFamily::Dyadic) == 21);  // 16 + 4 + 1
}

TEST_CASE("cube_sum reproduces plain left-to-right summation in 1D") {
  const Grid g = Grid::make_1d(0.0, 1.0, 7);
  std::mt19937_64 rng(3);
  std::vector<double> v(7);
  for (double& x : v) x = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.3;
  const GridFunction f = GridFunction::from_values(g, v);
  const Cube q{{1, 0}, 5};
  double manual = 0.0;
  for (int i = 1; i < 6; ++i) manual += v[static_cast<size_t>(i)];
  CHECK(cube_sum(f, q) == manual);
  CHECK(integrate(f, q) == cube_sum(f, q) * g.cell_volume());
  CHECK(average(f, q) == cube_sum(f, q) / 5.0);
}

TEST_CASE("cube_sum accumulates 2D rows before crossing rows") {
  const Grid g = Grid::make_2d(0, 1, 4, 0, 1, 4);
  std::mt19937_64 rng(5);
  std::vector<double> v(16);
  for (double& x : v) x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const GridFunction f = GridFunction::from_values(g, v);
  const Cube q{{1, 0}, 3};
  double manual = 0.0;
  for (int i0 = 1; i0 < 4; ++i0) {
    double row = 0.0;
    for (int i1 = 0; i1 < 3; ++i1) row += v[static_cast<size_t>(g.flat(i0, i1))];
    manual += row;
  }
  CHECK(cube_sum(f, q) == manual);
}

TEST_CASE("integrate is additive over grid-aligned splits") {
  const Grid g = Grid::make_2d(0, 2, 4, 0, 2, 4);
  std::mt19937_64 rng(17);
  std::vector<double> v(16);
  for (double& x : v) x = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.4;
  const GridFunction f = GridFunction::from_values(g, v);
  const Cube whole{{0, 0}, 4};
  // Split into the four side-2 quadrants.
  double parts = 0.0;
  for (int a0 : {0, 2})
    for (int a1 : {0, 2}) parts += integrate(f, Cube{{a0, a1}, 2});
  CHECK(parts == doctest::Approx(integrate(f, whole)).epsilon(1e-12));
}

TEST_CASE("average lies between the min and max over the cube") {
  const Grid g = Grid::make_1d(0, 1, 12);
  std::mt19937_64 rng(19);
  std::vector<double> v(12);
  for (double& x : v) x = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 3.0 - 1.0;
  const GridFunction f = GridFunction::from_values(g, v);
  for (const Cube& c : enumerate_cubes(g, CubeFamily::All)) {
    double mn = v[static_cast<size_t>(c.anchor[0])], mx = mn;
    for (int i = c.anchor[0]; i < c.anchor[0] + c.side; ++i) {
      mn = std::min(mn, v[static_cast<size_t>(i)]);
      mx = std::max(mx, v[static_cast<size_t>(i)]);
    }
    const double av = average(f, c);
    CHECK(av >= mn - 1e-15);
    CHECK(av <= mx + 1e-15);
  }
}

TEST_CASE("sup_over_cubes resolves ties to the first cube in enumeration order") {
  const Grid g = Grid::make_1d(0.0, 1.0, 6);
  const SupResult flat = sup_over_cubes(g, CubeFamily::All,
                                        [](const Cube&) { return 1.0; });
  CHECK(flat.value == 1.0);
  CHECK(flat.witness == Cube{{0, 0}, 1});

  const SupResult peak = sup_over_cubes(g, CubeFamily::All, [](const Cube& c) {
    return c.side == 3 && c.anchor[0] == 2 ? 7.0 : 0.0;
  });
  CHECK(peak.value == 7.0);
  CHECK(peak.witness == Cube{{2, 0}, 3});
}

TEST_CASE("grid file round trip is bitwise exact") {
  const Grid g = Grid::make_2d(-1.0, 1.0, 3, 0.25, 0.75, 2);
  std::vector<double> v = {1.0, -0.1, 1e-300, 3.0e17, 0.0, -2.5e-7};
  const GridFunction f = GridFunction::from_values(g, v);
  std::stringstream ss;
  write_grid_file(ss, f);
  const GridFunction back = read_grid_file(ss);
  CHECK(back.grid == g);
  REQUIRE(back.values.size() == v.size());
  for (size_t i = 0; i < v.size(); ++i) CHECK(back.values[i] == v[i]);
}

TEST_CASE("grid file reader rejects malformed input") {
  std::stringstream bad_magic("not-a-grid\n1\n0 1 4\n1 2 3 4\n");
  CHECK_THROWS_AS(read_grid_file(bad_magic), ParseError);
  std::stringstream short_values("weightlab-grid v1\n1\n0 1 4\n1 2 3\n");
  CHECK_THROWS_AS(read_grid_file(short_values), ParseError);
  std::stringstream bad_dim("weightlab-grid v1\n3\n0 1 4\n1 2 3 4\n");
  CHECK_THROWS_AS(read_grid_file(bad_dim), ParseError);
}

TEST_CASE("fmt_double round-trips doubles through text") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const double x = (static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5) *
                     std::ldexp(1.0, static_cast<int>(rng() % 600) - 300);
    const std::string s = fmt_double(x);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
  CHECK(fmt_double(1.0) == "1");
  CHECK(fmt_double(-0.5) == "-0.5");
}

TEST_CASE("canonical text forms") {
  CHECK(render_grid(Grid::make_1d(-1, 1, 512)) == "1d:-1,1,512");
  CHECK(render_grid(Grid::make_2d(0, 1, 4, -0.5, 0.5, 8)) == "2d:0,1,4,-0.5,0.5,8");
  CHECK(family_name(CubeFamily::All) == "ALL");
  CHECK(family_name(CubeFamily::Dyadic) == "DYADIC");
}
