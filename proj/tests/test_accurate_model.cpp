#include <doctest.h>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bandplan/accurate_model.hpp"
#include "bandplan/special_math.hpp"
#include "bandplan/units.hpp"

using namespace bandplan;

namespace {

LinkParams edge_link(int nt, double distance_m) {
  return {path_gain_linear(distance_m), 0.2, 3.98e-21, 1.0, nt, 160.0, 1e-4};
}

}  // namespace

TEST_CASE("exact-loss sizing collapses to one unit under overwhelming power") {
  SolverConfig cfg;
  LinkParams lp = edge_link(8, 100);
  // One unit leaves so little time-bandwidth product that the gain threshold
  // sits at ~4x the mean gain; the power has to push it deep into the left
  // tail of the fading distribution before a single unit suffices.
  lp.p_max = 1e9;
  const auto b = min_bandwidth_exact(lp, LinkContext::uplink(5e-4), 1, 1e-7, cfg);
  REQUIRE(b.has_value());
  CHECK(*b == cfg.b0_hz);
}

TEST_CASE("exact-loss sizing matches an upward grid scan") {
  SolverConfig cfg;
  cfg.w_c_hz = 12 * cfg.b0_hz;
  const auto ctx = LinkContext::uplink(4e-4);
  for (int nt : {4, 8, 16}) {
    for (double d : {80.0, 150.0, 250.0}) {
      const LinkParams lp = edge_link(nt, d);
      for (int n : {1, 2}) {
        const double split = power_split(lp, ctx, n);
        const double tau = tx_duration(lp, ctx);
        std::optional<double> scan;
        for (long long u = 1; u <= cfg.cap_units(); ++u) {
          if (exact_loss_probability(lp, u * cfg.b0_hz, split, n, tau) <= 1e-5) {
            scan = u * cfg.b0_hz;
            break;
          }
        }
        const auto got = min_bandwidth_exact(lp, ctx, n, 1e-5, cfg);
        REQUIRE(got.has_value() == scan.has_value());
        if (got) CHECK(*got == *scan);
      }
    }
  }
}

TEST_CASE("tighter targets never shrink the exact bandwidth") {
  SolverConfig cfg;
  const LinkParams lp = edge_link(8, 200);
  const auto ctx = LinkContext::uplink(5e-4);
  const auto loose = min_bandwidth_exact(lp, ctx, 1, 1e-3, cfg);
  const auto mid = min_bandwidth_exact(lp, ctx, 1, 1e-5, cfg);
  const auto tight = min_bandwidth_exact(lp, ctx, 1, 1e-7, cfg);
  REQUIRE(loose.has_value());
  REQUIRE(mid.has_value());
  REQUIRE(tight.has_value());
  CHECK(*loose <= *mid);
  CHECK(*mid <= *tight);
  CHECK_THROWS_AS(min_bandwidth_exact(lp, ctx, 0, 1e-5, cfg), std::domain_error);
  CHECK_THROWS_AS(min_bandwidth_exact(lp, ctx, 1, 0.0, cfg), std::domain_error);
}

TEST_CASE("threshold bound never undercuts the exact requirement") {
  ScenarioConfig sc;
  const auto rows = bound_vs_exact_grid(sc, {8, 32}, {100, 250}, 4, sc.eps_max / 3);
  REQUIRE(rows.size() == 4);
  double gap_8_250 = -1, gap_32_250 = -1;
  for (const auto& r : rows) {
    if (r.bound_feasible) CHECK(r.exact_feasible);  // the bound is conservative
    if (r.bound_feasible && r.exact_feasible) {
      CHECK(r.exact_b_hz <= r.bound_b_hz);
      CHECK(r.gap_hz == r.bound_b_hz - r.exact_b_hz);
      if (r.distance_m == 250) {
        if (r.nt == 8) gap_8_250 = r.gap_hz;
        if (r.nt == 32) gap_32_250 = r.gap_hz;
      }
    }
  }
  REQUIRE(gap_8_250 >= 0);
  REQUIRE(gap_32_250 >= 0);
  CHECK(gap_32_250 <= gap_8_250);  // more antennas tighten the outage split
}

TEST_CASE("one-bit feedback plans are self-consistent and cheaper") {
  SolverConfig cfg;
  const LinkParams lp = edge_link(16, 250);
  const double d_u_s = 4e-4;
  const double eps = 1e-7;

  const auto plan = one_bit_csit_plan(lp, d_u_s, eps, cfg);
  REQUIRE(plan.has_value());
  CHECK(plan->loss <= eps);
  CHECK(plan->reserved_hz == plan->n * plan->b_hz);
  CHECK(plan->g_th == ul_gain_threshold(lp, plan->b_hz, 1, d_u_s, plan->e_th));

  const double f = erlang_gain_cdf(lp.nt, plan->g_th);
  double fn = 1.0;
  for (int i = 0; i < plan->n; ++i) fn *= f;
  CHECK(plan->loss == doctest::Approx(fn + (1 - fn) * plan->e_th).epsilon(1e-12));

  const auto used_only = one_bit_csit_plan(lp, d_u_s, eps, cfg, false);
  REQUIRE(used_only.has_value());
  CHECK(used_only->reserved_hz == used_only->b_hz);
  CHECK(used_only->reserved_hz <= plan->reserved_hz);

  const auto blind = solve_link(lp, LinkContext::uplink(d_u_s), eps, cfg);
  REQUIRE(blind.has_value());
  CHECK(plan->reserved_hz <= blind->total_hz() + 1e-9);

  CHECK_THROWS_AS(one_bit_csit_plan(lp, d_u_s, 0.0, cfg), std::domain_error);
  LinkParams dead = lp;
  dead.alpha = 1e-30;
  CHECK(!one_bit_csit_plan(dead, d_u_s, eps, cfg).has_value());
}
