#include <benchmark/benchmark.h>

#include "bandplan/config_optimizer.hpp"
#include "bandplan/monte_carlo.hpp"
#include "bandplan/scenario.hpp"

using namespace bandplan;

namespace {

ScenarioConfig small_scenario() {
  ScenarioConfig sc;
  sc.sensors = 120;
  return sc;
}

void bm_ul_batch(benchmark::State& state, Exec exec) {
  ScenarioConfig sc = small_scenario();
  auto alphas = sensor_alphas(sc);
  for (auto _ : state) {
    auto rep = total_bandwidth_bound(sc, alphas, {6, 1, 3}, equal_split(sc.eps_max), exec);
    benchmark::DoNotOptimize(rep.total_hz);
  }
}

void bm_link_loss(benchmark::State& state, Exec exec) {
  ScenarioConfig sc = small_scenario();
  LinkParams lp = ul_link(sc, path_gain_linear(sc.cell_radius_m));
  LinkContext ctx = LinkContext::uplink(6 * sc.t_f_s);
  auto plan = solve_link(lp, ctx, 1e-3, solver_config(sc));
  SimConfig sim{1, 0, 100000, 0, exec};
  for (auto _ : state) {
    auto r = simulate_link_loss(lp, ctx, *plan, sim);
    benchmark::DoNotOptimize(r.rate);
  }
}

void bm_availability(benchmark::State& state, Exec exec) {
  ScenarioConfig sc = small_scenario();
  sc.sensors = 300;
  SimConfig sim{1, 0, 0, 2000, exec};
  for (auto _ : state) {
    auto r = simulate_availability(sc, 6, sc.eps_max / 3, sim);
    benchmark::DoNotOptimize(r.availability.rate);
  }
}

}  // namespace

BENCHMARK_CAPTURE(bm_ul_batch, serial, Exec::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_ul_batch, parallel, Exec::parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_link_loss, serial, Exec::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_link_loss, parallel, Exec::parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_availability, serial, Exec::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_availability, parallel, Exec::parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
