#include <benchmark/benchmark.h>

#include "swt/admissibility.hpp"
#include "swt/dirac.hpp"
#include "swt/flow.hpp"
#include "swt/functional.hpp"
#include "swt/gauge.hpp"
#include "swt/grid.hpp"
#include "swt/poisson.hpp"
#include "swt/rng.hpp"

namespace {

using namespace swt;

struct Fixture {
  Geometry geom;
  Connection conn;
  SpinorField phi;
  LinkField links;

  explicit Fixture(int n) : geom(make_geometry({n, n, n, n}, {1.0 / n, 1.0 / n, 1.0 / n, 1.0 / n}, -1.0)) {
    Rng rng(42);
    conn = make_connection(geom.grid, {2, 0, 0, 0, 0, -2});
    conn.a = smooth_one_form(geom.grid, rng, 0.5, 2);
    phi = smooth_spinor_field(geom.grid, rng, 0.8, 2);
    links = spinor_links(geom, conn);
  }
};

Fixture& fixture(int n) {
  static Fixture f8(8), f16(16);
  return n == 16 ? f16 : f8;
}

void bm_dirac(benchmark::State& state) {
  Fixture& f = fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dirac(f.geom.grid, f.links, f.phi));
  }
  state.SetItemsProcessed(state.iterations() * f.geom.grid.sites);
}
BENCHMARK(bm_dirac)->Arg(8)->Arg(16);

void bm_laplacian(benchmark::State& state) {
  Fixture& f = fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(laplacian(f.geom.grid, f.links, f.phi));
  }
  state.SetItemsProcessed(state.iterations() * f.geom.grid.sites);
}
BENCHMARK(bm_laplacian)->Arg(8)->Arg(16);

void bm_curvature(benchmark::State& state) {
  Fixture& f = fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(curvature(f.geom, f.conn));
  }
  state.SetItemsProcessed(state.iterations() * f.geom.grid.sites);
}
BENCHMARK(bm_curvature)->Arg(8)->Arg(16);

void bm_sw_energy(benchmark::State& state) {
  Fixture& f = fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sw_energy(f.geom, f.conn, f.phi).total);
  }
  state.SetItemsProcessed(state.iterations() * f.geom.grid.sites);
}
BENCHMARK(bm_sw_energy)->Arg(8)->Arg(16);

void bm_sw_gradient(benchmark::State& state) {
  Fixture& f = fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sw_gradient(f.geom, f.conn, f.phi).g_phi.size());
  }
  state.SetItemsProcessed(state.iterations() * f.geom.grid.sites);
}
BENCHMARK(bm_sw_gradient)->Arg(8)->Arg(16);

void bm_coulomb_project(benchmark::State& state) {
  Fixture& f = fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    Connection c = f.conn;
    coulomb_project(f.geom, c);
    benchmark::DoNotOptimize(c.a[0]);
  }
  state.SetItemsProcessed(state.iterations() * f.geom.grid.sites);
}
BENCHMARK(bm_coulomb_project)->Arg(8)->Arg(16);

void bm_flow_steps(benchmark::State& state) {
  Fixture& f = fixture(8);
  FlowOptions opts;
  opts.max_iters = 10;
  opts.grad_tol = 1e-300;  // never satisfied: measures ten full descent steps
  for (auto _ : state) {
    Connection c = f.conn;
    SpinorField p = f.phi;
    benchmark::DoNotOptimize(minimize(f.geom, c, p, opts).iters);
  }
}
BENCHMARK(bm_flow_steps)->Unit(benchmark::kMillisecond);

void bm_enumerate(benchmark::State& state) {
  const IntersectionForm f = standard_form("e8");
  const Window w = admissible_window(3.0, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_admissible(f, 2, w).size());
  }
}
BENCHMARK(bm_enumerate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
