// Maximal function, singular transforms, radial averaging with its
// domination margin, and the two scaling averages with their quadrature.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "weightlab/experiments.hpp"
#include "weightlab/grid.hpp"
#include "weightlab/operators.hpp"
#include "weightlab/reference.hpp"

using namespace weightlab;

namespace {
const CubeFamily kAll = CubeFamily::All;
}

TEST_CASE("maximal function dominates |f| and decays off a spike") {
  const Grid g = Grid::make_1d(0, 1, 8);
  GridFunction f = GridFunction::constant(g, 0.0);
  f.values[0] = 1.0;
  const GridFunction mf = maximal_function(f, kAll);
  // Best cube covering cells {0..j} has j+1 cells: Mf(j) = 1/(j+1).
  for (int j = 0; j < 8; ++j)
    CHECK(mf.values[static_cast<size_t>(j)] * (j + 1.0) == 1.0);
  for (int j = 0; j < 8; ++j)
    CHECK(mf.values[static_cast<size_t>(j)] >=
          std::fabs(f.values[static_cast<size_t>(j)]));
}

TEST_CASE("maximal function properties on random data") {
  for (std::uint64_t seed : {1, 2, 3}) {
    for (const Grid& g :
         {Grid::make_1d(-1, 1, 16), Grid::make_2d(0, 1, 4, 0, 1, 4)}) {
      const GridFunction f = smoothed_random(g, seed, -1.0, 1.0);
      const GridFunction h = smoothed_random(g, seed + 11, -1.0, 1.0);
      const GridFunction mf = maximal_function(f, kAll);
      const GridFunction mh = maximal_function(h, kAll);
      // Cellwise domination of |f|.
      for (size_t i = 0; i < f.values.size(); ++i)
        CHECK(mf.values[i] >= std::fabs(f.values[i]));
      // Sublinearity.
      GridFunction s = f;
      for (size_t i = 0; i < s.values.size(); ++i) s.values[i] += h.values[i];
      const GridFunction ms = maximal_function(s, kAll);
      for (size_t i = 0; i < s.values.size(); ++i)
        CHECK(ms.values[i] <= mf.values[i] + mh.values[i] + 1e-12);
      // Positive homogeneity; power-of-two scalings commute with rounding.
      GridFunction f2 = f;
      for (double& v : f2.values) v *= -2.0;
      const GridFunction mf2 = maximal_function(f2, kAll);
      for (size_t i = 0; i < f.values.size(); ++i)
        CHECK(mf2.values[i] == 2.0 * mf.values[i]);
      // Applying it twice never shrinks anything.
      const GridFunction mmf = maximal_function(mf, kAll);
      for (size_t i = 0; i < f.values.size(); ++i)
        CHECK(mmf.values[i] >= mf.values[i]);
    }
  }
}

TEST_CASE("maximal function matches the sequential reference bitwise") {
  for (std::uint64_t seed : {5, 6}) {
    for (const Grid& g :
         {Grid::make_1d(-1, 1, 16), Grid::make_2d(0, 1, 4, -1, 0, 4)}) {
      const GridFunction f = smoothed_random(g, seed, -1.0, 2.0);
      for (CubeFamily fam : {CubeFamily::All, CubeFamily::Dyadic}) {
        const GridFunction a = maximal_function(f, fam);
        const GridFunction b = ref::maximal_function(f, fam);
        CHECK(a.values == b.values);
      }
    }
  }
}

TEST_CASE("Hilbert transform of a centered spike") {
  const Grid g = Grid::make_1d(-1, 1, 9);
  GridFunction f = GridFunction::constant(g, 0.0);
  f.values[4] = 1.0;
  const GridFunction h = hilbert_transform(f);
  CHECK(h.values[4] == 0.0);  // diagonal excluded
  // Exact odd symmetry around the spike.
  for (int d = 1; d <= 4; ++d)
    CHECK(h.values[static_cast<size_t>(4 + d)] ==
          -h.values[static_cast<size_t>(4 - d)]);
  // Nearest neighbor: (1/pi) * h / (x_5 - x_4) = 1/pi.
  CHECK(h.values[5] == 1.0 / 3.141592653589793);
}

TEST_CASE("Hilbert transform maps even to odd exactly on symmetric grids") {
  const Grid g = Grid::make_1d(-1, 1, 12);
  GridFunction f = GridFunction::constant(g, 0.0);
  // Mirror the left half so the input is even cell-for-cell; the paired
  // +/- distance terms in the kernel then cancel without any rounding slack.
  for (int i = 0; i < 6; ++i) {
    const double xc = g.center(0, i);
    const double v = std::exp(-3.0 * xc * xc);
    f.values[static_cast<size_t>(i)] = v;
    f.values[static_cast<size_t>(11 - i)] = v;
  }
  const GridFunction h = hilbert_transform(f);
  for (int i = 0; i < 6; ++i)
    CHECK(h.values[static_cast<size_t>(i)] ==
          -h.values[static_cast<size_t>(11 - i)]);
}

TEST_CASE("Hilbert transform of a wide indicator (regression)") {
  const Grid g = Grid::make_1d(-4, 4, 512);
  GridFunction f = GridFunction::constant(g, 0.0);
  for (int i = 0; i < 512; ++i) {
    const double xc = g.center(0, i);
    if (xc > -1.0 && xc < 1.0) f.values[static_cast<size_t>(i)] = 1.0;
  }
  const GridFunction h = hilbert_transform(f);
  CHECK(h.values[256] == doctest::Approx(0.0049735919716217296).epsilon(1e-12));
}

TEST_CASE("singular transforms are linear and validate their domain") {
  const Grid g1 = Grid::make_1d(-1, 1, 10);
  const GridFunction a = smoothed_random(g1, 31, -1.0, 1.0);
  const GridFunction b = smoothed_random(g1, 32, -1.0, 1.0);
  GridFunction combo = a;
  for (size_t i = 0; i < combo.values.size(); ++i)
    combo.values[i] = 2.0 * a.values[i] - 0.5 * b.values[i];
  const GridFunction ha = hilbert_transform(a), hb = hilbert_transform(b);
  const GridFunction hc = hilbert_transform(combo);
  for (size_t i = 0; i < hc.values.size(); ++i)
    CHECK(hc.values[i] ==
          doctest::Approx(2.0 * ha.values[i] - 0.5 * hb.values[i]).epsilon(1e-12));

  const Grid g2 = Grid::make_2d(-1, 1, 4, -1, 1, 4);
  CHECK_THROWS_AS(hilbert_transform(GridFunction::constant(g2, 1.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(riesz_transform(GridFunction::constant(g1, 1.0), 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(riesz_transform(GridFunction::constant(g2, 1.0), 2),
                  std::invalid_argument);
}

TEST_CASE("Riesz transform sign structure on a centered spike") {
  const Grid g = Grid::make_2d(-1, 1, 5, -1, 1, 5);
  GridFunction f = GridFunction::constant(g, 0.0);
  f.at(2, 2) = 1.0;
  const GridFunction r0 = riesz_transform(f, 0);
  // Antisymmetric along axis 0, symmetric along axis 1.
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      CHECK(r0.at(i, j) == -r0.at(4 - i, j));
      CHECK(r0.at(i, j) == r0.at(i, 4 - j));
    }
  CHECK(r0.at(3, 2) > 0.0);
  // The axis-1 transform is the axis-0 transform of the transposed picture.
  const GridFunction r1 = riesz_transform(f, 1);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(r1.at(i, j) == r0.at(j, i));
}

TEST_CASE("radial profiles are nonnegative and non-increasing") {
  RadialProfile box, tent, gauss;
  box.kind = RadialProfile::Kind::Box;
  tent.kind = RadialProfile::Kind::Tent;
  gauss.kind = RadialProfile::Kind::GaussTrunc;
  gauss.trunc_radius = 2.0;
  for (const RadialProfile& prof : {box, tent, gauss}) {
    double prev = prof.value(0.0);
    CHECK(prev >= 0.0);
    for (int k = 1; k <= 20; ++k) {
      const double r = prof.support_radius() * k / 20.0;
      const double v = prof.value(r);
      CHECK(v >= 0.0);
      CHECK(v <= prev + 1e-15);
      prev = v;
    }
    CHECK(prof.value(prof.support_radius() * 1.01) == 0.0);
  }
  CHECK(gauss.support_radius() == 2.0);
}

TEST_CASE("convolution stencils have unit mass and exact symmetry") {
  for (const Grid& g :
       {Grid::make_1d(-1, 1, 64), Grid::make_2d(-1, 1, 16, -1, 1, 16)}) {
    for (auto kind : {RadialProfile::Kind::Box, RadialProfile::Kind::Tent,
                      RadialProfile::Kind::GaussTrunc}) {
      RadialProfile prof;
      prof.kind = kind;
      const Stencil st = build_stencil(g, prof, 6.0 * g.cell_size[0]);
      double mass = 0.0;
      for (double w : st.weights) mass += w;
      CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(st.eta >= 0.0);
      // Mirrored offsets carry identical weights.
      for (size_t k = 0; k < st.offsets.size(); ++k) {
        const auto& o = st.offsets[k];
        for (size_t m = 0; m < st.offsets.size(); ++m)
          if (st.offsets[m][0] == -o[0] && st.offsets[m][1] == o[1])
            CHECK(st.weights[m] == st.weights[k]);
      }
    }
  }
  CHECK_THROWS_AS(build_stencil(Grid::make_1d(0, 1, 8), RadialProfile{}, 0.0),
                  std::invalid_argument);
}

TEST_CASE("stencil domination margins (regression)") {
  const Grid g1 = Grid::make_1d(-1, 1, 64);
  RadialProfile box, tent;
  box.kind = RadialProfile::Kind::Box;
  tent.kind = RadialProfile::Kind::Tent;
  CHECK(build_stencil(g1, box, 0.25).eta == 0.0);
  CHECK(build_stencil(g1, tent, 0.25).eta == 0.0);
  const Grid g2 = Grid::make_2d(-1, 1, 32, -1, 1, 32);
  CHECK(build_stencil(g2, box, 0.25).eta ==
        doctest::Approx(0.28884367832486335).epsilon(1e-12));
  CHECK(build_stencil(g2, tent, 0.25).eta ==
        doctest::Approx(0.28963128581596287).epsilon(1e-12));
}

TEST_CASE("radial averaging preserves constants and order") {
  for (const Grid& g :
       {Grid::make_1d(-1, 1, 32), Grid::make_2d(0, 1, 12, 0, 1, 12)}) {
    RadialProfile tent;
    tent.kind = RadialProfile::Kind::Tent;
    const double eps = 2.0 * g.cell_size[0];
    const GridFunction c = GridFunction::constant(g, 2.5);
    const GridFunction tc = convolve_radial(c, tent, eps);
    // The average zero-extends past the boundary, so the unit-mass identity
    // holds on cells whose stencil stays inside the domain.
    const int margin = static_cast<int>(std::ceil(eps / g.cell_size[0])) + 1;
    for (int i = margin; i < g.cells[0] - margin; ++i) {
      if (g.dim == 1) {
        CHECK(tc.values[static_cast<size_t>(i)] ==
              doctest::Approx(2.5).epsilon(1e-12));
      } else {
        for (int j = margin; j < g.cells[1] - margin; ++j)
          CHECK(tc.at(i, j) == doctest::Approx(2.5).epsilon(1e-12));
      }
    }
    const GridFunction f = smoothed_random(g, 41, 0.0, 1.0);
    GridFunction gup = f;
    for (double& v : gup.values) v += 0.25;
    const GridFunction tf = convolve_radial(f, tent, eps);
    const GridFunction tg = convolve_radial(gup, tent, eps);
    for (size_t i = 0; i < tf.values.size(); ++i)
      CHECK(tf.values[i] <= tg.values[i] + 1e-15);
  }
}

TEST_CASE("maximal dominates the radial averages cellwise") {
  for (std::uint64_t seed : {51, 52, 53, 54}) {
    const Grid g = Grid::make_1d(-1, 1, 128);
    const GridFunction f = smoothed_random(g, seed, -1.0, 1.0);
    for (auto kind : {RadialProfile::Kind::Box, RadialProfile::Kind::Tent}) {
      RadialProfile prof;
      prof.kind = kind;
      const DominationReport dr =
          maximal_dominates_radial(f, prof, 4.0 * g.cell_size[0], kAll);
      CHECK(dr.dominated);
      CHECK(dr.max_ratio <= 1.0 + dr.eta + 1e-9);
      CHECK(dr.c1 > 0.0);
      CHECK(dr.c2 > 0.0);
    }
  }
}

TEST_CASE("psi profiles and their quadrature") {
  const PsiProfile one = PsiProfile::constant(1.0);
  CHECK(one.mass() == doctest::Approx(1.0).epsilon(1e-12));
  // Midpoint quadrature is exact on linear integrands.
  const PsiProfile lin = PsiProfile::poly(1.0);
  CHECK(lin.mass() == doctest::Approx(0.5).epsilon(1e-12));
  const PsiProfile quad = PsiProfile::poly(2.0);
  CHECK(quad.mass() == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  const PsiProfile win = PsiProfile::window(0.25, 0.75);
  CHECK(win.mass() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(win.value(0.1) == 0.0);
  CHECK(win.value(0.5) == 1.0);
  // ∫ t^0.5 dt with the default node count (regression for the scalar used
  // by the averaging experiments).
  CHECK(one.integral_against_power(0.5) ==
        doctest::Approx(0.66666850496695729).epsilon(1e-13));
  CHECK(std::fabs(one.integral_against_power(0.5) - 2.0 / 3.0) < 1e-5);

  const PsiProfile tab = PsiProfile::table({0.0, 0.5, 1.0}, {0.0, 1.0, 0.0});
  CHECK(tab.value(0.25) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(tab.mass() == doctest::Approx(0.5).epsilon(1e-6));
  CHECK_THROWS_AS(PsiProfile::poly(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(PsiProfile::window(0.5, 0.25), std::invalid_argument);
  CHECK_THROWS_AS(PsiProfile::table({0.5, 0.25}, {1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(PsiProfile::constant(-1.0), std::invalid_argument);
}

TEST_CASE("Hardy-type average: constants, positivity, linearity") {
  const Grid g = Grid::make_1d(-1, 1, 32);
  const PsiProfile psi = PsiProfile::poly(1.0);
  const GridFunction c = GridFunction::constant(g, 3.0);
  const GridFunction uc = hardy_average(c, psi);
  for (double v : uc.values)
    CHECK(v == doctest::Approx(3.0 * psi.mass()).epsilon(1e-12));
  const GridFunction f = smoothed_random(g, 61, 0.0, 2.0);
  const GridFunction uf = hardy_average(f, psi);
  for (double v : uf.values) CHECK(v >= 0.0);
  const GridFunction h = smoothed_random(g, 62, -1.0, 1.0);
  GridFunction combo = f;
  for (size_t i = 0; i < combo.values.size(); ++i)
    combo.values[i] = combo.values[i] - 2.0 * h.values[i];
  const GridFunction uh = hardy_average(h, psi);
  const GridFunction ucombo = hardy_average(combo, psi);
  for (size_t i = 0; i < ucombo.values.size(); ++i)
    CHECK(ucombo.values[i] ==
          doctest::Approx(uf.values[i] - 2.0 * uh.values[i]).epsilon(1e-12));
}

TEST_CASE("Hardy-type average acts as a scalar on homogeneous weights") {
  const Grid g = Grid::make_1d(-1, 1, 256);
  const double alpha = 0.5;
  const Weight w = Weight::power(g, alpha);
  const PsiProfile psi = PsiProfile::constant(1.0);
  const GridFunction u = hardy_average(w.values, psi);
  const double scalar = psi.integral_against_power(alpha);
  // Away from the origin kink and the boundary clamp the cellwise ratio
  // matches the scalar to interpolation accuracy.
  for (int i = 32; i < 224; ++i) {
    if (std::fabs(g.center(0, i)) < 0.25) continue;
    CHECK(u.values[static_cast<size_t>(i)] /
              w.values.values[static_cast<size_t>(i)] ==
          doctest::Approx(scalar).epsilon(5e-3));
  }
}

TEST_CASE("companion average: escape metadata and constant action") {
  const Grid g = Grid::make_1d(-1, 1, 64);
  const PsiProfile psi = PsiProfile::window(0.5, 1.0);
  const GridFunction c = GridFunction::constant(g, 2.0);
  const CesaroResult cr = cesaro_average(c, psi);
  REQUIRE(cr.escape_fraction.size() == c.values.size());
  for (double e : cr.escape_fraction) {
    CHECK(e >= 0.0);
    CHECK(e <= 1.0);
  }
  // Boundary cells sample x/t outside the box; central cells do not.
  CHECK(cr.escape_fraction.front() > 0.0);
  CHECK(cr.escape_fraction[32] == 0.0);
  // On zero-escape cells V(c) = c * ln 2 for this window.
  const double expect = 2.0 * std::log(2.0);
  for (size_t i = 0; i < c.values.size(); ++i)
    if (cr.escape_fraction[i] == 0.0)
      CHECK(cr.values.values[i] == doctest::Approx(expect).epsilon(1e-4));
}

TEST_CASE("interpolation is linear between centers and clamps outside") {
  const Grid g = Grid::make_1d(0, 1, 4);  // centers 0.125, 0.375, 0.625, 0.875
  const GridFunction f = GridFunction::from_values(g, {1.0, 3.0, 5.0, 7.0});
  CHECK(interpolate(f, {0.25, 0.0}) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(interpolate(f, {0.5, 0.0}) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(interpolate(f, {0.0, 0.0}) == 1.0);   // clamped to the first center
  CHECK(interpolate(f, {2.0, 0.0}) == 7.0);   // clamped to the last center
  const Grid g2 = Grid::make_2d(0, 1, 2, 0, 1, 2);
  const GridFunction f2 = GridFunction::from_values(g2, {0.0, 1.0, 2.0, 3.0});
  CHECK(interpolate(f2, {0.5, 0.5}) == doctest::Approx(1.5).epsilon(1e-14));
}
