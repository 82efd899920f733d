// Weighted norm scales: Lebesgue, weak Lebesgue, Morrey, weak Morrey, and
// the two oscillation norms, with their ordering and homogeneity properties.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "weightlab/dsl.hpp"
#include "weightlab/errors.hpp"
#include "weightlab/experiments.hpp"
#include "weightlab/grid.hpp"
#include "weightlab/norms.hpp"
#include "weightlab/reference.hpp"
#include "weightlab/weights.hpp"

using namespace weightlab;

namespace {
const CubeFamily kAll = CubeFamily::All;
}

TEST_CASE("norm spec construction validates exponents") {
  CHECK_THROWS_AS(NormSpec::lebesgue(0.5), std::invalid_argument);
  CHECK_THROWS_AS(NormSpec::weak_lebesgue(0.0), std::invalid_argument);
  CHECK_THROWS_AS(NormSpec::morrey(2.0, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(NormSpec::morrey(2.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(NormSpec::bmo(0.2), std::invalid_argument);
  CHECK(NormSpec::morrey(2.0, 2.0).q == 2.0);
  CHECK(NormSpec::lebesgue(1.5).render() == "Lp:1.5");
  CHECK(NormSpec::weak_morrey(2.0, 1.5).render() == "wMorrey:2,1.5");
  CHECK(NormSpec::bmo_inf().render() == "BMOinf");
}

TEST_CASE("grid mismatch is rejected") {
  const Grid g4 = Grid::make_1d(0, 1, 4), g5 = Grid::make_1d(0, 1, 5);
  const GridFunction f = GridFunction::constant(g4, 1.0);
  const Weight w = Weight::constant(g5, 1.0);
  CHECK_THROWS_AS(lebesgue_norm(f, w, 2.0), std::invalid_argument);
}

TEST_CASE("Lebesgue norm of simple shapes") {
  const Grid g = Grid::make_1d(0, 1, 8);
  const Weight w = Weight::constant(g, 1.0);
  const GridFunction c2 = GridFunction::constant(g, 2.0);
  for (double p : {1.0, 2.0, 3.0})
    CHECK(lebesgue_norm(c2, w, p) == doctest::Approx(2.0).epsilon(1e-14));
  // Signs do not matter.
  GridFunction cm = c2;
  for (double& v : cm.values) v = -v;
  CHECK(lebesgue_norm(cm, w, 2.0) == lebesgue_norm(c2, w, 2.0));
  // Half-domain indicator: ||f||_p = (1/2)^{1/p}.
  const GridFunction ind = FunctionSelector::parse("indicator:0,0.5").build(&g);
  CHECK(lebesgue_norm(ind, w, 2.0) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  // Weighted: w = 4 on the support quadruples the p = 2 square.
  const Weight w4 = Weight::constant(g, 4.0);
  CHECK(lebesgue_norm(ind, w4, 2.0) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("weak Lebesgue level scan on a staircase") {
  // f = (1,2,3,4) on [0,1), unit weight: lambda sweep gives
  // max(1*1, 2*3/4, 3*1/2, 4*1/4) = 1.5 at p = 1.
  const Grid g = Grid::make_1d(0, 1, 4);
  const GridFunction f = GridFunction::from_values(g, {1, 2, 3, 4});
  const Weight w = Weight::constant(g, 1.0);
  CHECK(weak_lebesgue_norm(f, w, 1.0) == 1.5);
  // Weak norm never exceeds the strong norm (Chebyshev).
  for (double p : {1.0, 2.0, 2.7})
    CHECK(weak_lebesgue_norm(f, w, p) <= lebesgue_norm(f, w, p) + 1e-12);
}

TEST_CASE("a denser level grid never beats the level scan") {
  const Grid g = Grid::make_1d(0, 1, 12);
  const GridFunction f = smoothed_random(g, 77, -1.0, 2.0);
  const Weight w = Weight::from_function(smoothed_random(g, 78, 0.2, 2.0));
  const double p = 2.0;
  const double scan = weak_lebesgue_norm(f, w, p);
  // Brute force: 10x denser lambda ladder over [0, max|f|].
  double fmax = 0.0;
  for (double v : f.values) fmax = std::max(fmax, std::fabs(v));
  double brute = 0.0;
  const int kDense = 120;
  for (int k = 1; k <= kDense; ++k) {
    const double lam = fmax * static_cast<double>(k) / kDense;
    double mass = 0.0;
    for (size_t i = 0; i < f.values.size(); ++i)
      if (std::fabs(f.values[i]) >= lam)
        mass += w.values.values[i] * g.cell_volume();
    brute = std::max(brute, lam * std::pow(mass, 1.0 / p));
  }
  CHECK(brute <= scan + 1e-12);
}

TEST_CASE("Morrey norm of a half-domain indicator (regression)") {
  const Grid g = Grid::make_1d(0, 1, 8);
  const Weight w = Weight::constant(g, 1.0);
  const GridFunction ind = FunctionSelector::parse("indicator:0,0.5").build(&g);
  const SupResult m = morrey_norm(ind, w, 4.0, 2.0, kAll);
  // Supremum at the support cube: |Q|^{1/4-1/2} * |Q|^{1/2} = (1/2)^{1/4}.
  CHECK(m.value == doctest::Approx(std::pow(0.5, 0.25)).epsilon(1e-13));
  CHECK(m.witness == Cube{{0, 0}, 4});
}

TEST_CASE("weak Morrey of a staircase (regression)") {
  const Grid g = Grid::make_1d(0, 1, 4);
  const GridFunction f = GridFunction::from_values(g, {1, 2, 3, 4});
  const Weight w = Weight::constant(g, 1.0);
  const SupResult wm = weak_morrey_norm(f, w, 2.0, 1.0, kAll);
  CHECK(wm.value == doctest::Approx(3.0 / std::sqrt(2.0)).epsilon(1e-13));
}

TEST_CASE("q = p collapses the Morrey scale to local Lebesgue sups") {
  const Grid g = Grid::make_1d(-1, 1, 10);
  const GridFunction f = smoothed_random(g, 5, -1.0, 1.0);
  const Weight w = Weight::from_function(smoothed_random(g, 6, 0.3, 2.0));
  const double p = 2.0;
  const SupResult m = morrey_norm(f, w, p, p, kAll);
  // w(Q)^{1/p-1/q} = 1, so the sup is over local L^p norms; the whole grid
  // dominates, giving exactly the global norm.
  CHECK(m.value == doctest::Approx(lebesgue_norm(f, w, p)).epsilon(1e-12));
  const SupResult wm = weak_morrey_norm(f, w, p, p, kAll);
  CHECK(wm.value == doctest::Approx(weak_lebesgue_norm(f, w, p)).epsilon(1e-12));
}

TEST_CASE("norm ordering: weak below strong, Morrey below global Lebesgue") {
  for (std::uint64_t seed : {101, 102, 103}) {
    const Grid g = Grid::make_1d(0, 1, 16);
    const GridFunction f = smoothed_random(g, seed, -2.0, 1.0);
    const Weight w = Weight::from_function(smoothed_random(g, seed + 50, 0.2, 2.2));
    const double p = 2.0, q = 1.5;
    const double morrey = morrey_norm(f, w, p, q, kAll).value;
    const double wmorrey = weak_morrey_norm(f, w, p, q, kAll).value;
    CHECK(wmorrey <= morrey + 1e-12);
    CHECK(morrey <= lebesgue_norm(f, w, p) + 1e-12);
  }
}

TEST_CASE("norms are positively homogeneous") {
  const Grid g = Grid::make_1d(0, 1, 12);
  const GridFunction f = smoothed_random(g, 9, -1.0, 1.5);
  const Weight w = Weight::from_function(smoothed_random(g, 10, 0.4, 2.0));
  GridFunction f3 = f;
  for (double& v : f3.values) v *= -3.0;
  const double p = 2.0, q = 1.5;
  CHECK(lebesgue_norm(f3, w, p) ==
        doctest::Approx(3.0 * lebesgue_norm(f, w, p)).epsilon(1e-12));
  CHECK(weak_lebesgue_norm(f3, w, p) ==
        doctest::Approx(3.0 * weak_lebesgue_norm(f, w, p)).epsilon(1e-12));
  CHECK(morrey_norm(f3, w, p, q, kAll).value ==
        doctest::Approx(3.0 * morrey_norm(f, w, p, q, kAll).value).epsilon(1e-12));
  CHECK(weak_morrey_norm(f3, w, p, q, kAll).value ==
        doctest::Approx(3.0 * weak_morrey_norm(f, w, p, q, kAll).value)
            .epsilon(1e-12));
  CHECK(bmo_norm(f3, w, 2.0, kAll).value ==
        doctest::Approx(3.0 * bmo_norm(f, w, 2.0, kAll).value).epsilon(1e-12));
}

TEST_CASE("oscillation norms vanish on constants and ignore shifts") {
  const Grid g = Grid::make_1d(-1, 1, 12);
  const Weight w = Weight::from_function(smoothed_random(g, 20, 0.3, 2.0));
  const GridFunction c = GridFunction::constant(g, 5.5);
  CHECK(bmo_norm(c, w, 1.0, kAll).value == 0.0);
  CHECK(bmo_norm(c, w, 2.0, kAll).value == 0.0);
  CHECK(bmo_inf_norm(c, w, kAll).value == 0.0);
  const GridFunction f = smoothed_random(g, 21, -1.0, 1.0);
  GridFunction fs = f;
  for (double& v : fs.values) v += 3.25;
  for (double p : {1.0, 2.0})
    CHECK(bmo_norm(fs, w, p, kAll).value ==
          doctest::Approx(bmo_norm(f, w, p, kAll).value).epsilon(1e-12));
  CHECK(bmo_inf_norm(fs, w, kAll).value ==
        doctest::Approx(bmo_inf_norm(f, w, kAll).value).epsilon(1e-12));
}

TEST_CASE("BMO of a half-domain indicator with the tie-break witness") {
  const Grid g = Grid::make_1d(0, 1, 8);
  const Weight w = Weight::constant(g, 1.0);
  const GridFunction ind = FunctionSelector::parse("indicator:0,0.5").build(&g);
  const SupResult b = bmo_norm(ind, w, 1.0, kAll);
  // Any cube straddling the jump with half mass on each side oscillates by
  // exactly 1/2; the first such cube in enumeration order is [3,5) (side 2).
  CHECK(b.value == 0.5);
  CHECK(b.witness == Cube{{3, 0}, 2});
}

TEST_CASE("BMO with p > 1 needs a strictly positive weight") {
  const Grid g = Grid::make_1d(0, 1, 4);
  const Weight w = Weight::from_function(GridFunction::from_values(g, {1, 0, 1, 1}));
  const GridFunction f = GridFunction::from_values(g, {0, 1, 0, 1});
  CHECK_THROWS_AS(bmo_norm(f, w, 2.0, kAll), DegenerateWeightError);
  CHECK_THROWS_AS(bmo_inf_norm(f, w, kAll), DegenerateWeightError);
}

TEST_CASE("local functionals reproduce sup values on their witnesses") {
  for (std::uint64_t seed : {31, 32}) {
    for (const Grid& g :
         {Grid::make_1d(-1, 1, 14), Grid::make_2d(0, 1, 4, 0, 1, 4)}) {
      const GridFunction f = smoothed_random(g, seed, -1.0, 2.0);
      const Weight w = Weight::from_function(smoothed_random(g, seed + 8, 0.3, 2.0));
      const double p = 2.0, q = 1.5;
      const SupResult m = morrey_norm(f, w, p, q, kAll);
      CHECK(morrey_local(f, w, p, q, m.witness) == m.value);
      const SupResult wm = weak_morrey_norm(f, w, p, q, kAll);
      CHECK(weak_morrey_local(f, w, p, q, wm.witness) == wm.value);
      const SupResult b = bmo_norm(f, w, 1.5, kAll);
      CHECK(bmo_local(f, w, 1.5, b.witness) == b.value);
      const SupResult bi = bmo_inf_norm(f, w, kAll);
      CHECK(bmo_inf_local(f, w, bi.witness) == bi.value);
    }
  }
}

TEST_CASE("norm_value dispatch agrees with the direct calls") {
  const Grid g = Grid::make_1d(0, 1, 10);
  const GridFunction f = smoothed_random(g, 61, -1.0, 1.0);
  const Weight w = Weight::from_function(smoothed_random(g, 62, 0.4, 2.0));
  CHECK(norm_value(f, w, NormSpec::lebesgue(2), kAll) == lebesgue_norm(f, w, 2));
  CHECK(norm_value(f, w, NormSpec::weak_lebesgue(2), kAll) ==
        weak_lebesgue_norm(f, w, 2));
  CHECK(norm_value(f, w, NormSpec::morrey(2, 1.5), kAll) ==
        morrey_norm(f, w, 2, 1.5, kAll).value);
  CHECK(norm_value(f, w, NormSpec::weak_morrey(2, 1.5), kAll) ==
        weak_morrey_norm(f, w, 2, 1.5, kAll).value);
  CHECK(norm_value(f, w, NormSpec::bmo(1.5), kAll) ==
        bmo_norm(f, w, 1.5, kAll).value);
  CHECK(norm_value(f, w, NormSpec::bmo_inf(), kAll) ==
        bmo_inf_norm(f, w, kAll).value);
}

TEST_CASE("production norms match the sequential reference bitwise") {
  for (std::uint64_t seed : {71, 72, 73}) {
    for (const Grid& g :
         {Grid::make_1d(-0.7, 0.9, 15), Grid::make_2d(0, 1, 3, 0, 2, 4)}) {
      const GridFunction f = smoothed_random(g, seed, -1.5, 1.0);
      const Weight w = Weight::from_function(smoothed_random(g, seed + 9, 0.2, 3.0));
      CHECK(lebesgue_norm(f, w, 2.0) == ref::lebesgue_norm(f, w, 2.0));
      CHECK(weak_lebesgue_norm(f, w, 2.0) == ref::weak_lebesgue_norm(f, w, 2.0));
      const SupResult m = morrey_norm(f, w, 2.0, 1.5, kAll);
      const SupResult mr = ref::morrey_norm(f, w, 2.0, 1.5, kAll);
      CHECK(m.value == mr.value);
      CHECK(m.witness == mr.witness);
      const SupResult wm = weak_morrey_norm(f, w, 2.0, 1.5, kAll);
      const SupResult wmr = ref::weak_morrey_norm(f, w, 2.0, 1.5, kAll);
      CHECK(wm.value == wmr.value);
      CHECK(wm.witness == wmr.witness);
      const SupResult b = bmo_norm(f, w, 1.5, kAll);
      const SupResult br = ref::bmo_norm(f, w, 1.5, kAll);
      CHECK(b.value == br.value);
      CHECK(b.witness == br.witness);
      const SupResult bi = bmo_inf_norm(f, w, kAll);
      const SupResult bir = ref::bmo_inf_norm(f, w, kAll);
      CHECK(bi.value == bir.value);
      CHECK(bi.witness == bir.witness);
    }
  }
}
