#pragma once
#include <cstdint>
#include <vector>

#include "config_optimizer.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "scenario.hpp"

namespace bandplan {

struct SimConfig {
  std::uint64_t seed = 1;
  long long frames = 1000000;  // queue and trace length
  long long trials = 200000;   // link-loss trials
  int drops = 10000;           // availability redraws
  Exec exec = Exec::parallel;
};

struct RateEstimate {
  double rate = 0;
  double ci_low = 0, ci_high = 0;  // Wilson 95%
  long long events = 0, total = 0;
};

RateEstimate rate_with_interval(long long events, long long total);

// Per-frame arrival counts for sensors firing independently with the given
// probabilities, generated by geometric gap-skipping from the seed.
std::vector<std::uint32_t> bernoulli_arrival_counts(std::uint64_t seed, std::uint64_t stream_kind,
                                                    const std::vector<double>& probs,
                                                    long long frames);

// FIFO queue served at an integer rate per frame; counts packets whose
// sojourn exceeds d_q_frames. Arrivals join at frame start, service happens
// at frame end.
RateEstimate simulate_queue(const std::vector<std::uint32_t>& arrivals, int service_rate,
                            int d_q_frames);

// Packet-level decode trials for one link plan: per trial, draw the fading
// gain of each of the n subchannel copies, flip the decode coin at the
// instantaneous error probability, and count the trials where every copy
// fails.
RateEstimate simulate_link_loss(const LinkParams& lp, const LinkContext& ctx, const LinkPlan& plan,
                                const SimConfig& sim);

struct TraceStats {
  double max_hz = 0;
  double mean_hz = 0;
  double dl_hz = 0;     // constant downlink share included in max/mean
  double bound_hz = 0;  // provisioned bound the trace is compared against
  long long frames = 0;
  long long frames_above_bound = 0;
};

// Realized spectrum occupancy over time: every arrival holds its sensor's
// subchannels for the d_u - 2 payload frames; the downlink share is constant.
// Accumulated in integer grid units so the result is exact and thread-count
// independent.
TraceStats simulate_bandwidth_trace(const ScenarioConfig& sc, const ConfigReport& rep,
                                    const SimConfig& sim);

// Smallest large-scale gain a sensor can have and still receive a feasible
// uplink plan; feasibility is monotone in the gain, so drops reduce to a
// threshold comparison.
double feasible_alpha_threshold(const ScenarioConfig& sc, int d_u_frames, double eps_u);

enum class AvailabilityMode {
  sensor_average,  // fraction of (drop, sensor) pairs that are servable
  all_sensors,     // fraction of drops where every sensor is servable
};

struct AvailabilityResult {
  RateEstimate availability;
  double alpha_star = 0;
};

// Redraws placements and lognormal shadowing `drops` times and scores
// each sensor against the feasibility threshold.
AvailabilityResult simulate_availability(const ScenarioConfig& sc, int d_u_frames, double eps_u,
                                         const SimConfig& sim,
                                         AvailabilityMode mode = AvailabilityMode::sensor_average);

}  // namespace bandplan
