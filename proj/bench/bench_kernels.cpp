// Timing comparison: the parallel window-scan kernels against the plain
// sequential per-cube reference. Both must agree bitwise — the table includes
// that check so a speedup never hides a numeric drift.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "weightlab/experiments.hpp"
#include "weightlab/grid.hpp"
#include "weightlab/norms.hpp"
#include "weightlab/operators.hpp"
#include "weightlab/reference.hpp"
#include "weightlab/weights.hpp"

using namespace weightlab;

namespace {

using Clock = std::chrono::steady_clock;

double ms_of(const std::function<void()>& fn) {
  const Clock::time_point t0 = Clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void row(const std::string& kernel, int n, double par_ms, double seq_ms, bool same) {
  std::printf("%-24s %6d %12.2f %12.2f %9.2fx   %s\n", kernel.c_str(), n, par_ms,
              seq_ms, seq_ms / par_ms, same ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not available; both columns run sequentially\n");
#endif
  std::printf("%-24s %6s %12s %12s %10s   %s\n", "kernel", "cells", "parallel ms",
              "serial ms", "speedup", "agreement");

  for (int n : {256, 512, 1024}) {
    const Grid g = Grid::make_1d(-1, 1, n);
    const Weight w = Weight::from_function(smoothed_random(g, 7, 0.5, 2.5));
    SupResult a, b;
    const double pm = ms_of([&] { a = ap_constant(w, 2.0, CubeFamily::All); });
    const double sm = ms_of([&] { b = ref::ap_constant(w, 2.0, CubeFamily::All); });
    row("ap_constant p=2 ALL", n, pm, sm, a.value == b.value && a.witness == b.witness);
  }

  for (int n : {256, 512}) {
    const Grid g = Grid::make_1d(-1, 1, n);
    const GridFunction f = smoothed_random(g, 8, -1.0, 2.0);
    GridFunction a = f, b = f;
    const double pm = ms_of([&] { a = maximal_function(f, CubeFamily::All); });
    const double sm = ms_of([&] { b = ref::maximal_function(f, CubeFamily::All); });
    row("maximal_function ALL", n, pm, sm, a.values == b.values);
  }

  for (int n : {128, 256}) {
    const Grid g = Grid::make_1d(-1, 1, n);
    const Weight w = Weight::from_function(smoothed_random(g, 7, 0.5, 2.5));
    const GridFunction f = smoothed_random(g, 8, -1.0, 2.0);
    SupResult a, b;
    double pm = ms_of([&] { a = bmo_norm(f, w, 1.5, CubeFamily::All); });
    double sm = ms_of([&] { b = ref::bmo_norm(f, w, 1.5, CubeFamily::All); });
    row("bmo_norm p=1.5 ALL", n, pm, sm,
        a.value == b.value && a.witness == b.witness);
    pm = ms_of([&] { a = morrey_norm(f, w, 2.0, 1.5, CubeFamily::All); });
    sm = ms_of([&] { b = ref::morrey_norm(f, w, 2.0, 1.5, CubeFamily::All); });
    row("morrey_norm 2,1.5 ALL", n, pm, sm,
        a.value == b.value && a.witness == b.witness);
    pm = ms_of([&] { a = weak_morrey_norm(f, w, 2.0, 1.5, CubeFamily::All); });
    sm = ms_of([&] { b = ref::weak_morrey_norm(f, w, 2.0, 1.5, CubeFamily::All); });
    row("weak_morrey 2,1.5 ALL", n, pm, sm,
        a.value == b.value && a.witness == b.witness);
  }
  return 0;
}
