#pragma once
#include <optional>
#include <string>
#include <vector>

#include "parallel.hpp"
#include "scenario.hpp"

namespace bandplan {

struct DelaySplit {
  int d_u = 0, d_d = 0, d_q = 0;  // frames
};

struct EpsilonSplit {
  double eps_u = 0, eps_d = 0, eps_q = 0;
};

inline EpsilonSplit equal_split(double eps_max) {
  return {eps_max / 3.0, eps_max / 3.0, eps_max / 3.0};
}

// Result of evaluating one (delay split, epsilon split) configuration:
// per-sensor uplink plans, the cell-edge downlink plan, and the provisioned
// bandwidth bound they add up to.
struct ConfigReport {
  DelaySplit delay;
  EpsilonSplit eps;
  bool feasible = false;
  std::string infeasible_reason;

  std::vector<LinkPlan> ul_plans;  // index-aligned with sensor_alphas
  std::optional<LinkPlan> dl_plan;
  int eb_plus = 0;
  long long m_a_th = 0;
  long long ul_units = 0;  // sum over sensors of n * b_units

  double ul_bound_hz = 0, dl_bound_hz = 0, total_hz = 0;
};

// The one place the bound is assembled from its integer parts; reports are
// reproducible bit for bit by re-running this on the stored fields.
void assemble_totals(const ScenarioConfig& sc, ConfigReport& rep);
double recompute_total(const ScenarioConfig& sc, const ConfigReport& rep);

ConfigReport total_bandwidth_bound(const ScenarioConfig& sc, const std::vector<double>& alphas,
                                   DelaySplit delay, EpsilonSplit eps,
                                   Exec exec = Exec::parallel);

// Scans delay splits within the end-to-end budget. The queueing leg always
// takes the budget left over from d_u + d_d (the bound never increases with
// more queueing delay), and d_d stays at one frame unless some scan point
// pins the downlink at the coherence cap, in which case the full (d_u, d_d)
// grid is searched.
ConfigReport optimize_delays(const ScenarioConfig& sc, const std::vector<double>& alphas,
                             EpsilonSplit eps, Exec exec = Exec::parallel);

struct DelayCurveRow {
  DelaySplit delay;
  bool feasible = false;
  double ul_hz = 0, dl_hz = 0, total_hz = 0;
};

// The d_d = 1 scan as data: one row per d_u with the leftover budget queued.
std::vector<DelayCurveRow> bandwidth_vs_delay_curve(const ScenarioConfig& sc,
                                                    const std::vector<double>& alphas,
                                                    EpsilonSplit eps,
                                                    Exec exec = Exec::parallel);

struct EpsilonSearchResult {
  EpsilonSplit eps;
  ConfigReport report;
  double equal_split_total_hz = 0;
  bool equal_split_feasible = false;
};

// Grid search over the error-budget simplex eps_u + eps_d + eps_q = eps_max
// in multiples of step * eps_max; uplink totals are memoized per eps_u since
// the per-sensor solves dominate the cost.
EpsilonSearchResult optimize_epsilon_split(const ScenarioConfig& sc,
                                           const std::vector<double>& alphas, DelaySplit delay,
                                           double step, Exec exec = Exec::parallel);

}  // namespace bandplan
