#include "bandplan/fbl_channel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "bandplan/integrate.hpp"
#include "bandplan/special_math.hpp"

namespace bandplan {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

void check_link(const LinkParams& lp) {
  if (!(lp.alpha > 0) || !(lp.p_max > 0) || !(lp.n0 > 0) || !(lp.phi > 0) || lp.nt < 1 ||
      !(lp.packet_bits > 0) || !(lp.t_f > 0))
    throw std::domain_error("link params must be positive");
}

// exp(b ln2 / (tau B) + sqrt(1 / (tau B)) Q^-1(e)) - 1: the SNR a gain
// threshold must clear, before the noise/power prefactor.
double snr_bracket(double packet_bits, double tb, double e_th) {
  double arg = packet_bits * kLn2 / tb + std::sqrt(1.0 / tb) * q_inverse(e_th);
  if (arg > 700.0) return std::exp(700.0);  // saturate instead of overflowing to inf
  return std::expm1(arg);
}

}  // namespace

double achievable_rate(const LinkParams& lp, double b_hz, int n, double tau_s, double g,
                       double e) {
  check_link(lp);
  if (!(b_hz > 0) || n < 1 || !(tau_s > 0) || !(g >= 0))
    throw std::domain_error("achievable_rate: b, n, tau must be positive and g >= 0");
  double snr = lp.alpha * lp.p_max * g / (lp.phi * lp.n0 * b_hz * n);
  double dispersion = std::sqrt(1.0 / (tau_s * b_hz)) * q_inverse(e);
  return lp.t_f * b_hz / kLn2 * (std::log1p(snr) - dispersion);
}

double ul_gain_threshold(const LinkParams& lp, double b_hz, int n, double d_u_s, double e_th) {
  check_link(lp);
  double tau = d_u_s - 2.0 * lp.t_f;
  if (!(b_hz > 0) || n < 1 || !(tau > 0))
    throw std::domain_error("ul_gain_threshold: need b > 0 and d_u above the 2 control frames");
  return lp.phi * lp.n0 * b_hz * n / (lp.alpha * lp.p_max) *
         snr_bracket(lp.packet_bits, tau * b_hz, e_th);
}

double dl_gain_threshold(const LinkParams& lp, double b_hz, int n, double d_d_s, int eb_plus,
                         double e_th) {
  check_link(lp);
  if (!(b_hz > 0) || n < 1 || eb_plus < 1 || !(d_d_s > 0.5 * lp.t_f))
    throw std::domain_error("dl_gain_threshold: need b > 0, eb_plus >= 1, d_d >= one frame");
  double split = (d_d_s / lp.t_f) * eb_plus * n * lp.nt;
  return lp.phi * lp.n0 * b_hz * split / (lp.alpha * lp.p_max) *
         snr_bracket(lp.packet_bits, d_d_s * b_hz, e_th);
}

double decode_error_probability(const LinkParams& lp, double b_hz, double power_split,
                                double tau_s, double g) {
  check_link(lp);
  if (!(b_hz > 0) || !(power_split >= 1) || !(tau_s > 0) || !(g >= 0))
    throw std::domain_error("decode_error_probability: bad inputs");
  double tb = tau_s * b_hz;
  double snr = lp.alpha * lp.p_max / (lp.phi * lp.n0 * b_hz * power_split);
  double arg = std::sqrt(tb) * (std::log1p(snr * g) - lp.packet_bits * kLn2 / tb);
  if (arg > 39.0) return 0.0;
  if (arg < -39.0) return 1.0;
  return q_function(arg);
}

double bounded_loss_probability(double cdf_at_threshold, double e_th, int n) {
  if (!(cdf_at_threshold >= 0) || !(cdf_at_threshold <= 1) || !(e_th >= 0) || n < 1)
    throw std::domain_error("bounded_loss_probability: bad inputs");
  double one = cdf_at_threshold + e_th;
  if (one > 1.0) one = 1.0;
  double out = 1.0;
  for (int i = 0; i < n; ++i) out *= one;
  return out;
}

double exact_loss_probability(const LinkParams& lp, double b_hz, double power_split, int n,
                              double tau_s) {
  check_link(lp);
  if (!(b_hz > 0) || !(power_split >= 1) || n < 1 || !(tau_s > 0))
    throw std::domain_error("exact_loss_probability: bad inputs");
  double tb = tau_s * b_hz;
  double snr = lp.alpha * lp.p_max / (lp.phi * lp.n0 * b_hz * power_split);
  // Beyond g_up the decode error is under ~5e-17; beyond the Erlang bulk the
  // density mass is below that. Integrate to the nearer cutoff and bound the
  // remainder analytically.
  double r = lp.packet_bits * kLn2 / tb;
  double arg_up = r + 8.3 / std::sqrt(tb);
  double g_up = arg_up > 700.0 ? std::numeric_limits<double>::max()
                               : std::expm1(arg_up) / snr;
  double g_bulk = lp.nt + 45.0 * std::sqrt(static_cast<double>(lp.nt)) + 60.0;
  double g_hi = g_up < g_bulk ? g_up : g_bulk;
  auto f = [&](double g) {
    return decode_error_probability(lp, b_hz, power_split, tau_s, g) *
           erlang_gain_pdf(lp.nt, g);
  };
  auto quad = integrate(f, 0.0, g_hi, 1e-12, 1e-9, 4000);
  double tail_mass = 1.0 - erlang_gain_cdf(lp.nt, g_hi);
  double tail = (g_up <= g_bulk ? 1e-16 : 1.0) * tail_mass;
  double one = quad.value + tail;
  if (one > 1.0) one = 1.0;
  if (one < 0.0) one = 0.0;
  double out = 1.0;
  for (int i = 0; i < n; ++i) out *= one;
  return out;
}

}  // namespace bandplan
