#include "bandplan/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "bandplan/special_math.hpp"

namespace bandplan {

double power_split(const LinkParams& lp, const LinkContext& ctx, int n) {
  if (ctx.dir == LinkContext::Dir::uplink) return n;
  return (ctx.duration_s / lp.t_f) * ctx.eb_plus * n * lp.nt;
}

double tx_duration(const LinkParams& lp, const LinkContext& ctx) {
  return ctx.dir == LinkContext::Dir::uplink ? ctx.duration_s - 2.0 * lp.t_f : ctx.duration_s;
}

double gain_threshold(const LinkParams& lp, const LinkContext& ctx, double b_hz, int n,
                      double e_th) {
  return ctx.dir == LinkContext::Dir::uplink
             ? ul_gain_threshold(lp, b_hz, n, ctx.duration_s, e_th)
             : dl_gain_threshold(lp, b_hz, n, ctx.duration_s, ctx.eb_plus, e_th);
}

double bounded_loss(const LinkParams& lp, const LinkContext& ctx, double b_hz, int n,
                    double e_th) {
  double g = gain_threshold(lp, ctx, b_hz, n, e_th);
  return bounded_loss_probability(erlang_gain_cdf(lp.nt, g), e_th, n);
}

namespace detail {

double golden_min_log(const std::function<double(double)>& f, double lo, double hi, int iters) {
  const double gr = 0.61803398874989485;
  double a = std::log(lo), c = std::log(hi);
  double x1 = c - gr * (c - a), x2 = a + gr * (c - a);
  double f1 = f(std::exp(x1)), f2 = f(std::exp(x2));
  for (int it = 0; it < iters; ++it) {
    if (f1 <= f2) {
      c = x2;
      x2 = x1;
      f2 = f1;
      x1 = c - gr * (c - a);
      f1 = f(std::exp(x1));
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (c - a);
      f2 = f(std::exp(x2));
    }
  }
  return std::exp(0.5 * (a + c));
}

std::optional<long long> min_feasible_units(const std::function<double(double)>& optimized_loss,
                                            double eps, const SolverConfig& cfg) {
  const long long cap = cfg.cap_units();
  if (cap < 1) return std::nullopt;
  const double b_cap = cap * cfg.b0_hz;
  if (!(optimized_loss(b_cap) <= eps)) return std::nullopt;
  double lo = 0.0, hi = b_cap;
  const double db = cfg.resolved_delta_b();
  while (hi - lo > db) {
    double mid = 0.5 * (lo + hi);
    if (optimized_loss(mid) <= eps)
      hi = mid;
    else
      lo = mid;
  }
  long long units = static_cast<long long>(std::ceil(hi / cfg.b0_hz - 1e-9));
  if (units < 1) units = 1;
  if (units > cap) units = cap;
  // The grid point just above the bisection cut can sit above a feasible
  // neighbor when the loss is flat; walking down keeps the result exactly
  // grid-minimal.
  while (units > 1 && optimized_loss((units - 1) * cfg.b0_hz) <= eps) --units;
  // Re-verify the landing point and walk up if bisection caught a spurious
  // feasible pocket.
  while (units <= cap && !(optimized_loss(units * cfg.b0_hz) <= eps)) ++units;
  if (units > cap) return std::nullopt;
  return units;
}

}  // namespace detail

EThresholdResult optimize_error_threshold(const LinkParams& lp, const LinkContext& ctx,
                                          double b_hz, int n, const SolverConfig& cfg) {
  const double e_lo = cfg.e_floor, e_hi = 0.5 - 1e-6;
  auto h = [&](double e) {
    return erlang_gain_cdf(lp.nt, gain_threshold(lp, ctx, b_hz, n, e)) + e;
  };
  double best_e, best_h;
  if (gain_threshold(lp, ctx, b_hz, n, e_hi) < lp.nt - 1) {
    // The gain CDF is convex left of the density mode, so F(g_th(e)) + e is
    // unimodal and golden section applies.
    best_e = detail::golden_min_log(h, e_lo, e_hi, 64);
    best_h = h(best_e);
  } else {
    // Coarse log grid with one refinement pass between the argmin's
    // neighbors.
    const int kCoarse = 1024;
    const double la = std::log(e_lo), lb = std::log(e_hi);
    int best_i = 0;
    best_h = 2.0;
    best_e = e_lo;
    for (int i = 0; i < kCoarse; ++i) {
      double e = std::exp(la + (lb - la) * i / (kCoarse - 1));
      double v = h(e);
      if (v < best_h) {
        best_h = v;
        best_e = e;
        best_i = i;
      }
    }
    int ilo = best_i > 0 ? best_i - 1 : 0;
    int ihi = best_i < kCoarse - 1 ? best_i + 1 : kCoarse - 1;
    double la2 = la + (lb - la) * ilo / (kCoarse - 1);
    double lb2 = la + (lb - la) * ihi / (kCoarse - 1);
    for (int i = 0; i <= 64; ++i) {
      double e = std::exp(la2 + (lb2 - la2) * i / 64.0);
      double v = h(e);
      if (v < best_h) {
        best_h = v;
        best_e = e;
      }
    }
  }
  for (double e : {e_lo, e_hi}) {
    double v = h(e);
    if (v < best_h) {
      best_h = v;
      best_e = e;
    }
  }
  double one = best_h > 1.0 ? 1.0 : best_h;
  double loss = 1.0;
  for (int i = 0; i < n; ++i) loss *= one;
  return {best_e, loss};
}

std::optional<LinkPlan> min_bandwidth_for_diversity(const LinkParams& lp, const LinkContext& ctx,
                                                    int n, double eps, const SolverConfig& cfg) {
  if (n < 1 || !(eps > 0)) throw std::domain_error("min_bandwidth_for_diversity: bad n or eps");
  auto optimized_loss = [&](double b) {
    return optimize_error_threshold(lp, ctx, b, n, cfg).loss;
  };
  auto units = detail::min_feasible_units(optimized_loss, eps, cfg);
  if (!units) return std::nullopt;
  double b = *units * cfg.b0_hz;
  auto r = optimize_error_threshold(lp, ctx, b, n, cfg);
  LinkPlan plan;
  plan.n = n;
  plan.b_hz = b;
  plan.e_th = r.e_th;
  plan.g_th = gain_threshold(lp, ctx, b, n, r.e_th);
  plan.loss = r.loss;
  plan.b_units = *units;
  return plan;
}

std::optional<LinkPlan> solve_link(const LinkParams& lp, const LinkContext& ctx, double eps,
                                   const SolverConfig& cfg) {
  std::optional<LinkPlan> best;
  for (int n = 1; n <= cfg.n_max; ++n) {
    if (best && n >= best->total_units()) break;  // even one unit each cannot beat the best
    auto p = min_bandwidth_for_diversity(lp, ctx, n, eps, cfg);
    if (p && (!best || p->total_units() < best->total_units())) best = p;
  }
  return best;
}

}  // namespace bandplan
