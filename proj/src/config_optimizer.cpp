#include "bandplan/config_optimizer.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "bandplan/queueing.hpp"

namespace bandplan {

namespace {

struct UlBatch {
  bool feasible = false;
  int first_failed = -1;
  long long units = 0;
  std::vector<LinkPlan> plans;
};

UlBatch solve_ul_batch(const ScenarioConfig& sc, const std::vector<double>& alphas, int d_u,
                       double eps_u, Exec exec) {
  UlBatch out;
  const int m = static_cast<int>(alphas.size());
  out.plans.resize(m);
  std::vector<char> ok(m, 1);
  const auto cfg = solver_config(sc);
  const auto ctx = LinkContext::uplink(d_u * sc.t_f_s);
  for_each_index(exec, m, [&](std::int64_t i) {
    auto p = solve_link(ul_link(sc, alphas[i]), ctx, eps_u, cfg);
    if (p)
      out.plans[i] = *p;
    else
      ok[i] = 0;
  });
  for (int i = 0; i < m; ++i) {
    if (!ok[i]) {
      out.first_failed = i;
      out.plans.clear();
      return out;
    }
    out.units += out.plans[i].total_units();
  }
  out.feasible = true;
  return out;
}

bool delay_split_valid(const ScenarioConfig& sc, DelaySplit d) {
  return d.d_u >= 3 && d.d_d >= 1 && d.d_q >= 1 &&
         d.d_u + d.d_d + d.d_q <= sc.budget_frames();
}

}  // namespace

void assemble_totals(const ScenarioConfig& sc, ConfigReport& rep) {
  rep.ul_bound_hz = sc.sensors > 0 ? static_cast<double>(rep.m_a_th) *
                                         (static_cast<double>(rep.ul_units) * sc.b0_hz) /
                                         static_cast<double>(sc.sensors)
                                   : 0.0;
  rep.dl_bound_hz = rep.dl_plan ? (1.0 / sc.reuse_factor) * static_cast<double>(rep.delay.d_d) *
                                      static_cast<double>(rep.eb_plus) * rep.dl_plan->total_hz()
                                : 0.0;
  rep.total_hz = rep.ul_bound_hz + rep.dl_bound_hz;
}

double recompute_total(const ScenarioConfig& sc, const ConfigReport& rep) {
  ConfigReport copy = rep;
  assemble_totals(sc, copy);
  return copy.total_hz;
}

ConfigReport total_bandwidth_bound(const ScenarioConfig& sc, const std::vector<double>& alphas,
                                   DelaySplit delay, EpsilonSplit eps, Exec exec) {
  ConfigReport rep;
  rep.delay = delay;
  rep.eps = eps;
  if (!delay_split_valid(sc, delay)) {
    rep.infeasible_reason = "delay split outside the latency budget of " +
                            std::to_string(sc.budget_frames()) +
                            " frames (need d_u >= 3, d_d >= 1, d_q >= 1)";
    return rep;
  }
  if (sc.sensors == 0) {  // no traffic: the empty provision is trivially valid
    rep.feasible = true;
    assemble_totals(sc, rep);
    return rep;
  }
  rep.eb_plus = service_rate_ceiling(effective_bandwidth(sc.lambda_queue(), delay.d_q, eps.eps_q));
  rep.m_a_th = sc.sensors > 0
                   ? active_sensor_threshold(sc.lambda_total() * (delay.d_u - 2), sc.eps_m)
                   : 0;
  const auto cfg = solver_config(sc);
  auto dl = solve_link(dl_link(sc), LinkContext::downlink(delay.d_d * sc.t_f_s, rep.eb_plus),
                       eps.eps_d, cfg);
  if (!dl) {
    rep.infeasible_reason = "downlink plan infeasible at the coherence-bandwidth cap";
    return rep;
  }
  rep.dl_plan = dl;
  auto ul = solve_ul_batch(sc, alphas, delay.d_u, eps.eps_u, exec);
  if (!ul.feasible) {
    rep.infeasible_reason =
        "uplink plan infeasible for sensor " + std::to_string(ul.first_failed);
    return rep;
  }
  rep.ul_plans = std::move(ul.plans);
  rep.ul_units = ul.units;
  rep.feasible = true;
  assemble_totals(sc, rep);
  return rep;
}

std::vector<DelayCurveRow> bandwidth_vs_delay_curve(const ScenarioConfig& sc,
                                                    const std::vector<double>& alphas,
                                                    EpsilonSplit eps, Exec exec) {
  std::vector<DelayCurveRow> rows;
  const int budget = sc.budget_frames();
  for (int d_u = 3; d_u <= budget - 2; ++d_u) {
    DelaySplit d{d_u, 1, budget - 1 - d_u};
    auto rep = total_bandwidth_bound(sc, alphas, d, eps, exec);
    rows.push_back({d, rep.feasible, rep.ul_bound_hz, rep.dl_bound_hz, rep.total_hz});
  }
  return rows;
}

ConfigReport optimize_delays(const ScenarioConfig& sc, const std::vector<double>& alphas,
                             EpsilonSplit eps, Exec exec) {
  const int budget = sc.budget_frames();
  if (budget < 5) {
    ConfigReport rep;
    rep.delay = {3, 1, 1};
    rep.eps = eps;
    rep.infeasible_reason = "latency budget of " + std::to_string(budget) +
                            " frames cannot fit the minimum split d_u=3, d_d=1, d_q=1";
    return rep;
  }
  const long long cap_units = solver_config(sc).cap_units();
  ConfigReport best;
  bool need_full_scan = false;
  // d_q always takes the budget left over: more queueing delay only lowers
  // the service rate, so the optimum sits on the budget face. Keep d_d at
  // one frame first; that is optimal whenever the downlink never pins at the
  // coherence cap.
  for (int d_u = 3; d_u <= budget - 2; ++d_u) {
    auto rep = total_bandwidth_bound(sc, alphas, {d_u, 1, budget - 1 - d_u}, eps, exec);
    if (!rep.feasible) {
      need_full_scan = true;
      continue;
    }
    if (rep.dl_plan && rep.dl_plan->b_units >= cap_units) need_full_scan = true;
    if (!best.feasible || rep.total_hz < best.total_hz) best = std::move(rep);
  }
  if (best.feasible && !need_full_scan) return best;
  for (int d_d = 2; d_d <= budget - 4; ++d_d) {
    for (int d_u = 3; d_u <= budget - 1 - d_d; ++d_u) {
      auto rep = total_bandwidth_bound(sc, alphas, {d_u, d_d, budget - d_u - d_d}, eps, exec);
      if (!rep.feasible) continue;
      if (!best.feasible || rep.total_hz < best.total_hz) best = std::move(rep);
    }
  }
  if (!best.feasible) {
    best.delay = {3, 1, budget - 4};
    best.eps = eps;
    best.infeasible_reason = "no feasible delay split within the latency budget";
  }
  return best;
}

EpsilonSearchResult optimize_epsilon_split(const ScenarioConfig& sc,
                                           const std::vector<double>& alphas, DelaySplit delay,
                                           double step, Exec exec) {
  if (!(step > 0) || !(step <= 0.5))
    throw std::domain_error("optimize_epsilon_split: step must lie in (0, 0.5]");
  const int k = static_cast<int>(std::llround(1.0 / step));
  if (k < 3) throw std::domain_error("optimize_epsilon_split: step leaves no room for 3 shares");
  EpsilonSearchResult out;
  if (!delay_split_valid(sc, delay)) {
    out.report.delay = delay;
    out.report.infeasible_reason = "delay split outside the latency budget";
    return out;
  }
  if (sc.sensors == 0) {  // every split carries nothing; report the even one
    out.eps = equal_split(sc.eps_max);
    out.report = total_bandwidth_bound(sc, alphas, delay, out.eps, exec);
    out.equal_split_feasible = out.report.feasible;
    out.equal_split_total_hz = out.report.total_hz;
    return out;
  }
  const double unit = sc.eps_max / k;
  const auto cfg = solver_config(sc);
  const auto dl_params = dl_link(sc);
  const long long m_a =
      sc.sensors > 0 ? active_sensor_threshold(sc.lambda_total() * (delay.d_u - 2), sc.eps_m) : 0;

  std::map<int, UlBatch> ul_memo;
  auto ul_for = [&](int i) -> const UlBatch& {
    auto it = ul_memo.find(i);
    if (it == ul_memo.end())
      it = ul_memo.emplace(i, solve_ul_batch(sc, alphas, delay.d_u, i * unit, exec)).first;
    return it->second;
  };

  double best_total = std::numeric_limits<double>::infinity();
  int best_i = 0, best_j = 0;
  for (int i = 1; i <= k - 2; ++i) {
    for (int j = 1; j <= k - 1 - i; ++j) {
      const int l = k - i - j;
      int eb_plus;
      try {
        eb_plus = service_rate_ceiling(effective_bandwidth(sc.lambda_queue(), delay.d_q, l * unit));
      } catch (const std::domain_error&) {
        continue;  // eps_q >= 1 never happens here, but stay defensive
      }
      auto dl = solve_link(dl_params, LinkContext::downlink(delay.d_d * sc.t_f_s, eb_plus),
                           j * unit, cfg);
      if (!dl) continue;
      const auto& ul = ul_for(i);
      if (!ul.feasible) continue;
      ConfigReport probe;
      probe.delay = delay;
      probe.eb_plus = eb_plus;
      probe.m_a_th = m_a;
      probe.dl_plan = dl;
      probe.ul_units = ul.units;
      assemble_totals(sc, probe);
      if (probe.total_hz < best_total) {
        best_total = probe.total_hz;
        best_i = i;
        best_j = j;
      }
    }
  }
  auto equal = total_bandwidth_bound(sc, alphas, delay, equal_split(sc.eps_max), exec);
  out.equal_split_feasible = equal.feasible;
  out.equal_split_total_hz = equal.total_hz;
  if (best_i == 0) {
    out.report.delay = delay;
    out.report.infeasible_reason = "no feasible error split on the grid";
    return out;
  }
  out.eps = {best_i * unit, best_j * unit, (k - best_i - best_j) * unit};
  out.report = total_bandwidth_bound(sc, alphas, delay, out.eps, exec);
  return out;
}

}  // namespace bandplan
