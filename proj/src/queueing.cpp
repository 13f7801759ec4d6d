#include "bandplan/queueing.hpp"

#include <cmath>
#include <stdexcept>

#include "bandplan/special_math.hpp"

namespace bandplan {

double effective_bandwidth(double lambda, int d_q_frames, double eps_q) {
  if (!(lambda > 0) || d_q_frames < 1 || !(eps_q > 0) || !(eps_q < 1))
    throw std::domain_error(
        "effective_bandwidth: need lambda > 0, d_q >= 1 frame, eps_q in (0, 1)");
  double u = -std::log(eps_q);  // ln(1/eps)
  double x = u / (lambda * d_q_frames);
  return u / (d_q_frames * std::log1p(x));
}

int service_rate_ceiling(double eff_bandwidth) {
  if (!(eff_bandwidth >= 0) || eff_bandwidth > 2e9)
    throw std::domain_error("service_rate_ceiling: rate out of range");
  return static_cast<int>(std::ceil(eff_bandwidth - 1e-9));
}

MuxGainCheck multiplexing_gain_check(double lambda, int l, int d_q_frames, double eps_q) {
  if (l < 1) throw std::domain_error("multiplexing_gain_check: l must be >= 1");
  MuxGainCheck out;
  out.combined = effective_bandwidth(lambda, d_q_frames, eps_q);
  out.split_sum = l * effective_bandwidth(lambda / l, d_q_frames, eps_q);
  out.holds = l == 1 ? out.split_sum == out.combined : out.split_sum > out.combined;
  return out;
}

long long active_sensor_threshold(double mu, double eps_m) {
  if (!(mu >= 0) || !(eps_m > 0) || !(eps_m < 1))
    throw std::domain_error("active_sensor_threshold: need mu >= 0 and eps_m in (0, 1)");
  if (mu == 0.0) return 0;
  long long hi = static_cast<long long>(mu + 12.0 * std::sqrt(mu) + 50.0);
  while (poisson_upper_tail(mu, hi) > eps_m) hi *= 2;
  long long lo = -1;  // P(X > -1) = 1 > eps_m
  while (hi - lo > 1) {
    long long mid = lo + (hi - lo) / 2;
    if (poisson_upper_tail(mu, mid) <= eps_m)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace bandplan
