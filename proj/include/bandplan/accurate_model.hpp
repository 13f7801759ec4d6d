#pragma once
#include <optional>
#include <vector>

#include "scenario.hpp"
#include "solver.hpp"

namespace bandplan {

// Smallest grid bandwidth whose exact averaged loss meets eps at diversity
// n. The exact loss needs no threshold split, so there is no inner search:
// the grid is scanned downward from the cap while still feasible.
std::optional<double> min_bandwidth_exact(const LinkParams& lp, const LinkContext& ctx, int n,
                                          double eps, const SolverConfig& cfg);

struct ComparisonRow {
  int nt = 0;
  double distance_m = 0;
  bool bound_feasible = false, exact_feasible = false;
  double bound_b_hz = 0, exact_b_hz = 0, gap_hz = 0;
};

// Threshold-bound plan vs exact-loss plan for a single-subchannel uplink at
// each (antenna count, distance) grid point.
std::vector<ComparisonRow> bound_vs_exact_grid(const ScenarioConfig& sc,
                                               const std::vector<int>& antenna_counts,
                                               const std::vector<double>& distances_m,
                                               int d_u_frames, double eps);

struct OneBitPlan {
  int n = 0;            // subchannel candidates probed for the one good gain
  double b_hz = 0;      // per-subchannel width
  double e_th = 0;      // decode error spent on the selected subchannel
  double g_th = 0;
  double loss = 0;      // miss-everywhere outage plus decode error
  double reserved_hz = 0;
};

// Plan when the BS learns one bit per subchannel (gain above threshold or
// not) and the sensor transmits at full power on a selected good one: loss
// is F^n + (1 - F^n) e_th. reserve_all charges all n candidate widths to the
// budget; otherwise only the one used.
std::optional<OneBitPlan> one_bit_csit_plan(const LinkParams& lp, double d_u_s, double eps,
                                            const SolverConfig& cfg, bool reserve_all = true);

}  // namespace bandplan
