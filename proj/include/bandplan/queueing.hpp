#pragma once

namespace bandplan {

// Statistical-multiplexing service rate (packets per frame) that keeps the
// queueing delay of an aggregated Bernoulli/Poisson arrival stream of lambda
// packets per frame below d_q_frames except with probability eps_q. Always
// at least lambda; grows toward it as eps_q -> 1.
double effective_bandwidth(double lambda, int d_q_frames, double eps_q);

// Integer service rate actually provisioned (ceiling with a guard against
// float noise on exact integers).
int service_rate_ceiling(double eff_bandwidth);

struct MuxGainCheck {
  double combined;   // effective bandwidth of the aggregate
  double split_sum;  // l separate queues at lambda/l each
  bool holds;        // split_sum >= combined (strict for l >= 2)
};

// Serving l tributaries separately costs at least as much as serving their
// aggregate; returns both sides of the comparison.
MuxGainCheck multiplexing_gain_check(double lambda, int l, int d_q_frames, double eps_q);

// Smallest m with P(Poisson(mu) > m) <= eps_m: how many simultaneously
// active sensors the uplink must be provisioned for.
long long active_sensor_threshold(double mu, double eps_m);

}  // namespace bandplan
