#pragma once
#include <functional>
#include <optional>

#include "fbl_channel.hpp"

namespace bandplan {

struct SolverConfig {
  int n_max = 10;          // largest diversity order tried
  double w_c_hz = 0.5e6;   // per-subchannel cap (coherence bandwidth)
  double b0_hz = 12.5e3;   // bandwidth grid unit
  double delta_b_hz = 0;   // bisection resolution; 0 means b0/16
  double e_floor = 1e-12;  // decode-error search floor

  double resolved_delta_b() const { return delta_b_hz > 0 ? delta_b_hz : b0_hz / 16.0; }
  long long cap_units() const { return static_cast<long long>(w_c_hz / b0_hz + 1e-9); }
};

// Which leg of the link a plan is for, with the leg-specific timing inputs.
struct LinkContext {
  enum class Dir { uplink, downlink };
  Dir dir;
  double duration_s;  // d_u for uplink (includes 2 control frames), d_d for downlink
  int eb_plus;        // downlink only: packets in service per frame

  static LinkContext uplink(double d_u_s) { return {Dir::uplink, d_u_s, 0}; }
  static LinkContext downlink(double d_d_s, int eb_plus) {
    return {Dir::downlink, d_d_s, eb_plus};
  }
};

// How many ways the transmit power is divided for this leg at diversity n.
double power_split(const LinkParams& lp, const LinkContext& ctx, int n);

// Payload transmission time for this leg.
double tx_duration(const LinkParams& lp, const LinkContext& ctx);

double gain_threshold(const LinkParams& lp, const LinkContext& ctx, double b_hz, int n,
                      double e_th);

// Loss bound for a concrete (n, b, e_th) candidate.
double bounded_loss(const LinkParams& lp, const LinkContext& ctx, double b_hz, int n, double e_th);

struct EThresholdResult {
  double e_th;
  double loss;
};

// Minimizes the loss bound over the decode-error threshold. Uses golden
// section on log e when the gain threshold at e -> 0.5 sits left of the
// density mode (the bound is then convex in e); otherwise falls back to a
// log-spaced grid with one refinement pass.
EThresholdResult optimize_error_threshold(const LinkParams& lp, const LinkContext& ctx,
                                          double b_hz, int n, const SolverConfig& cfg);

struct LinkPlan {
  int n = 0;           // subchannels (diversity order)
  double b_hz = 0;     // per-subchannel bandwidth, a multiple of b0
  double e_th = 0;     // decode-error threshold the plan operates at
  double g_th = 0;     // corresponding gain threshold
  double loss = 1;     // loss bound achieved
  long long b_units = 0;

  long long total_units() const { return n * b_units; }
  double total_hz() const { return static_cast<double>(n) * b_hz; }
};

// Smallest grid bandwidth whose optimized loss meets eps at diversity n:
// bisection for a proven-feasible width, snap up to the grid, then walk down
// grid steps while still feasible. nullopt when even the cap fails.
std::optional<LinkPlan> min_bandwidth_for_diversity(const LinkParams& lp, const LinkContext& ctx,
                                                    int n, double eps, const SolverConfig& cfg);

// Full plan search over n = 1..n_max minimizing total bandwidth n*b; ties go
// to the smaller n.
std::optional<LinkPlan> solve_link(const LinkParams& lp, const LinkContext& ctx, double eps,
                                   const SolverConfig& cfg);

namespace detail {
// Shared by the per-leg solver and the one-bit-feedback variant: smallest
// unit count in [1, cap_units] whose optimized loss meets eps, assuming
// feasibility is monotone in b. optimized_loss(b_hz) returns the loss after
// its own inner minimization.
std::optional<long long> min_feasible_units(const std::function<double(double)>& optimized_loss,
                                            double eps, const SolverConfig& cfg);

// Golden-section minimum of f over [lo, hi] after the log substitution;
// assumes f is unimodal in its argument. Returns the argmin.
double golden_min_log(const std::function<double(double)>& f, double lo, double hi, int iters);
}  // namespace detail

}  // namespace bandplan
