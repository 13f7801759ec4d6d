#include "bandplan/accurate_model.hpp"

#include <cmath>
#include <stdexcept>

#include "bandplan/special_math.hpp"

namespace bandplan {

std::optional<double> min_bandwidth_exact(const LinkParams& lp, const LinkContext& ctx, int n,
                                          double eps, const SolverConfig& cfg) {
  if (n < 1 || !(eps > 0)) throw std::domain_error("min_bandwidth_exact: bad n or eps");
  const long long cap = cfg.cap_units();
  if (cap < 1) return std::nullopt;
  const double split = power_split(lp, ctx, n);
  const double tau = tx_duration(lp, ctx);
  auto loss = [&](long long units) {
    return exact_loss_probability(lp, units * cfg.b0_hz, split, n, tau);
  };
  if (!(loss(cap) <= eps)) return std::nullopt;
  long long units = cap;
  while (units > 1 && loss(units - 1) <= eps) --units;
  return units * cfg.b0_hz;
}

std::vector<ComparisonRow> bound_vs_exact_grid(const ScenarioConfig& sc,
                                               const std::vector<int>& antenna_counts,
                                               const std::vector<double>& distances_m,
                                               int d_u_frames, double eps) {
  std::vector<ComparisonRow> rows;
  const auto cfg = solver_config(sc);
  const auto ctx = LinkContext::uplink(d_u_frames * sc.t_f_s);
  for (int nt : antenna_counts) {
    for (double d : distances_m) {
      LinkParams lp = ul_link(sc, path_gain_linear(d));
      lp.nt = nt;
      ComparisonRow row;
      row.nt = nt;
      row.distance_m = d;
      auto bound = min_bandwidth_for_diversity(lp, ctx, 1, eps, cfg);
      auto exact = min_bandwidth_exact(lp, ctx, 1, eps, cfg);
      row.bound_feasible = bound.has_value();
      row.exact_feasible = exact.has_value();
      if (bound) row.bound_b_hz = bound->b_hz;
      if (exact) row.exact_b_hz = *exact;
      if (bound && exact) row.gap_hz = row.bound_b_hz - row.exact_b_hz;
      rows.push_back(row);
    }
  }
  return rows;
}

std::optional<OneBitPlan> one_bit_csit_plan(const LinkParams& lp, double d_u_s, double eps,
                                            const SolverConfig& cfg, bool reserve_all) {
  if (!(eps > 0)) throw std::domain_error("one_bit_csit_plan: eps must be > 0");
  std::optional<OneBitPlan> best;
  const double e_lo = cfg.e_floor, e_hi = 0.5 - 1e-6;
  for (int n = 1; n <= cfg.n_max; ++n) {
    // The sensor probes n subchannels, transmits at full power on one whose
    // gain clears the threshold; losing requires either every probe below
    // threshold (F^n) or a decode error on the chosen one.
    auto optimized = [&](double b, double* e_out) {
      auto h = [&](double e) {
        double f = erlang_gain_cdf(lp.nt, ul_gain_threshold(lp, b, 1, d_u_s, e));
        double fn = 1.0;
        for (int i = 0; i < n; ++i) fn *= f;
        return fn + (1.0 - fn) * e;
      };
      double e_best;
      if (ul_gain_threshold(lp, b, 1, d_u_s, e_hi) < lp.nt - 1) {
        e_best = detail::golden_min_log(h, e_lo, e_hi, 64);
      } else {
        const int kCoarse = 512;
        const double la = std::log(e_lo), lb = std::log(e_hi);
        e_best = e_lo;
        double v_best = 2.0;
        for (int i = 0; i < kCoarse; ++i) {
          double e = std::exp(la + (lb - la) * i / (kCoarse - 1));
          double v = h(e);
          if (v < v_best) {
            v_best = v;
            e_best = e;
          }
        }
      }
      for (double e : {e_lo, e_hi})
        if (h(e) < h(e_best)) e_best = e;
      if (e_out) *e_out = e_best;
      return h(e_best);
    };
    auto units = detail::min_feasible_units(
        [&](double b) { return optimized(b, nullptr); }, eps, cfg);
    if (!units) continue;
    const double b = *units * cfg.b0_hz;
    double e_th;
    const double loss = optimized(b, &e_th);
    OneBitPlan plan;
    plan.n = n;
    plan.b_hz = b;
    plan.e_th = e_th;
    plan.g_th = ul_gain_threshold(lp, b, 1, d_u_s, e_th);
    plan.loss = loss;
    plan.reserved_hz = (reserve_all ? n : 1) * b;
    if (!best || plan.reserved_hz < best->reserved_hz - 1e-9) best = plan;
  }
  return best;
}

}  // namespace bandplan
