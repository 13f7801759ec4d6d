#include "bandplan/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bandplan {

RateEstimate rate_with_interval(long long events, long long total) {
  if (total < 1 || events < 0 || events > total)
    throw std::domain_error("rate_with_interval: need 0 <= events <= total, total >= 1");
  RateEstimate out;
  out.events = events;
  out.total = total;
  const double n = static_cast<double>(total);
  const double p = static_cast<double>(events) / n;
  out.rate = p;
  const double z = 1.959963984540054;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  out.ci_low = std::max(0.0, center - half);
  out.ci_high = std::min(1.0, center + half);
  return out;
}

std::vector<std::uint32_t> bernoulli_arrival_counts(std::uint64_t seed, std::uint64_t stream_kind,
                                                    const std::vector<double>& probs,
                                                    long long frames) {
  if (frames < 0) throw std::domain_error("bernoulli_arrival_counts: frames must be >= 0");
  Philox g(seed);
  std::vector<std::uint32_t> counts(frames, 0);
  for (std::size_t m = 0; m < probs.size(); ++m) {
    const double p = probs[m];
    if (!(p >= 0) || !(p <= 1)) throw std::domain_error("bernoulli_arrival_counts: bad prob");
    if (p == 0.0) continue;
    const double log1m_p = std::log1p(-p);
    const std::uint64_t sid = stream::sub(stream_kind, m);
    long long frame = -1;
    std::uint64_t k = 0;
    for (;;) {
      frame += geometric_gap(g, sid, k++, log1m_p);
      if (frame >= frames) break;
      ++counts[frame];
    }
  }
  return counts;
}

RateEstimate simulate_queue(const std::vector<std::uint32_t>& arrivals, int service_rate,
                            int d_q_frames) {
  if (service_rate < 1 || d_q_frames < 1)
    throw std::domain_error("simulate_queue: need service_rate >= 1 and d_q >= 1");
  const long long cap = static_cast<long long>(service_rate) * d_q_frames;
  long long q = 0, violations = 0, total = 0;
  for (std::uint32_t a_u : arrivals) {
    const long long a = a_u;
    total += a;
    // A packet entering at backlog position pos departs after ceil(pos /
    // service) frames; it violates the budget iff pos > service * d_q.
    long long room = cap - q;
    if (room < 0) room = 0;
    if (a > room) violations += a - room;
    q += a - service_rate;
    if (q < 0) q = 0;
  }
  return rate_with_interval(violations, std::max(1ll, total));
}

RateEstimate simulate_link_loss(const LinkParams& lp, const LinkContext& ctx,
                                const LinkPlan& plan, const SimConfig& sim) {
  if (plan.n < 1 || !(plan.b_hz > 0)) throw std::domain_error("simulate_link_loss: bad plan");
  const Philox g(sim.seed);
  const double split = power_split(lp, ctx, plan.n);
  const double tau = tx_duration(lp, ctx);
  const long long trials = sim.trials;
  const long long chunk = 8192;
  const long long chunks = (trials + chunk - 1) / chunk;
  std::vector<long long> lost(chunks, 0);
  for_each_index(sim.exec, chunks, [&](std::int64_t c) {
    const long long t0 = c * chunk, t1 = std::min(trials, t0 + chunk);
    long long local = 0;
    for (long long t = t0; t < t1; ++t) {
      bool all_failed = true;
      for (int j = 0; j < plan.n && all_failed; ++j) {
        const std::uint64_t copy = static_cast<std::uint64_t>(t) * plan.n + j;
        double gain = 0.0;
        for (int a = 0; a < lp.nt; ++a)
          gain += exponential_unit(g, stream::gain, copy * lp.nt + a);
        const double e = decode_error_probability(lp, plan.b_hz, split, tau, gain);
        if (uniform_open(g, stream::decode, copy) >= e) all_failed = false;
      }
      if (all_failed) ++local;
    }
    lost[c] = local;
  });
  long long events = 0;
  for (long long v : lost) events += v;
  return rate_with_interval(events, std::max(1ll, trials));
}

TraceStats simulate_bandwidth_trace(const ScenarioConfig& sc, const ConfigReport& rep,
                                    const SimConfig& sim) {
  if (!rep.feasible) throw std::domain_error("simulate_bandwidth_trace: report not feasible");
  if (static_cast<int>(rep.ul_plans.size()) != sc.sensors)
    throw std::domain_error("simulate_bandwidth_trace: plans do not match scenario");
  const long long frames = sim.frames;
  TraceStats out;
  out.frames = frames;
  out.bound_hz = rep.total_hz;
  out.dl_hz = rep.dl_bound_hz;
  if (frames <= 0) return out;
  const int hold = rep.delay.d_u - 2;  // payload frames a grant occupies
  const double p = sc.packet_prob();
  const double log1m_p = p < 1.0 ? std::log1p(-p) : -std::numeric_limits<double>::infinity();
  const Philox g(sim.seed);
  std::vector<long long> diff(frames + 1, 0);
  for (int m = 0; m < sc.sensors; ++m) {
    if (p <= 0.0) break;
    const long long w = rep.ul_plans[m].total_units();
    const std::uint64_t sid = stream::sub(stream::trace_gap, m);
    long long frame = -1, active_until = -1;
    std::uint64_t k = 0;
    for (;;) {
      frame += geometric_gap(g, sid, k++, log1m_p);
      if (frame >= frames) break;
      long long s = std::max(frame, active_until + 1);
      long long e = std::min(frame + hold - 1, frames - 1);
      if (s <= e) {
        diff[s] += w;
        diff[e + 1] -= w;
      }
      active_until = std::max(active_until, frame + hold - 1);
    }
  }
  long long cur = 0, max_units = 0;
  long long sum_units = 0;
  long long above = 0;
  for (long long f = 0; f < frames; ++f) {
    cur += diff[f];
    sum_units += cur;
    if (cur > max_units) max_units = cur;
    if (cur * sc.b0_hz + out.dl_hz > out.bound_hz) ++above;
  }
  out.max_hz = max_units * sc.b0_hz + out.dl_hz;
  out.mean_hz = static_cast<double>(sum_units) / frames * sc.b0_hz + out.dl_hz;
  out.frames_above_bound = above;
  return out;
}

double feasible_alpha_threshold(const ScenarioConfig& sc, int d_u_frames, double eps_u) {
  const auto cfg = solver_config(sc);
  const auto ctx = LinkContext::uplink(d_u_frames * sc.t_f_s);
  auto feasible = [&](double alpha) {
    return solve_link(ul_link(sc, alpha), ctx, eps_u, cfg).has_value();
  };
  double hi = 1.0;
  for (int i = 0; i < 40 && !feasible(hi); ++i) hi *= 10.0;
  if (!feasible(hi))
    throw std::runtime_error("feasible_alpha_threshold: no feasible gain up to 1e40");
  double lo = hi;
  for (int i = 0; i < 60 && feasible(lo); ++i) lo /= 10.0;
  if (feasible(lo)) return 0.0;  // feasible down to vanishing gain
  for (int i = 0; i < 80; ++i) {
    double mid = std::sqrt(lo * hi);
    if (feasible(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;  // smallest gain proven feasible
}

AvailabilityResult simulate_availability(const ScenarioConfig& sc, int d_u_frames, double eps_u,
                                         const SimConfig& sim, AvailabilityMode mode) {
  AvailabilityResult out;
  out.alpha_star = feasible_alpha_threshold(sc, d_u_frames, eps_u);
  const Philox g(sim.seed);
  const int drops = sim.drops;
  const int m = sc.sensors;
  const double sigma = sc.shadowing_sigma_db;
  const double alpha_star = out.alpha_star;
  const long long chunk = 64;
  const long long chunks = (drops + chunk - 1) / chunk;
  std::vector<long long> good(chunks, 0);
  for_each_index(sim.exec, chunks, [&](std::int64_t c) {
    const long long d0 = c * chunk, d1 = std::min<long long>(drops, d0 + chunk);
    long long local = 0;
    for (long long d = d0; d < d1; ++d) {
      long long ok = 0;
      for (int s = 0; s < m; ++s) {
        const std::uint64_t idx = static_cast<std::uint64_t>(d) * m + s;
        const double dist =
            sc.min_distance_m +
            (sc.cell_radius_m - sc.min_distance_m) * uniform_open(g, stream::drop_pos, idx);
        const double shadow_db = sigma * normal_unit(g, stream::drop_shadow, idx);
        const double alpha = path_gain_linear(dist) * std::pow(10.0, shadow_db / 10.0);
        if (alpha >= alpha_star)
          ++ok;
        else if (mode == AvailabilityMode::all_sensors)
          break;
      }
      if (mode == AvailabilityMode::sensor_average)
        local += ok;
      else if (ok == m)
        ++local;
    }
    good[c] = local;
  });
  long long events = 0;
  for (long long v : good) events += v;
  const long long total = mode == AvailabilityMode::sensor_average
                              ? static_cast<long long>(drops) * m
                              : drops;
  out.availability = rate_with_interval(events, std::max(1ll, total));
  return out;
}

}  // namespace bandplan
