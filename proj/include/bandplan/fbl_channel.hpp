#pragma once

namespace bandplan {

// Static link budget shared by every per-link computation. alpha is the
// large-scale channel gain (path loss already linear), p_max the transmit
// power in watts, n0 the noise density in W/Hz, phi >= 1 an SNR penalty
// margin, nt the antenna count (the small-scale gain is a sum of nt
// unit-mean exponentials), packet_bits the fixed payload, t_f the frame
// duration in seconds.
struct LinkParams {
  double alpha;
  double p_max;
  double n0;
  double phi;
  int nt;
  double packet_bits;
  double t_f;
};

// Short-blocklength achievable rate in bits per frame over bandwidth b_hz
// with instantaneous gain g, transmit power split n ways, transmission
// duration tau_s, and decoding error target e in (0, 0.5).
double achievable_rate(const LinkParams& lp, double b_hz, int n, double tau_s, double g, double e);

// Smallest instantaneous gain that carries one packet within d_u_s minus the
// two control frames (grant plus feedback), decoding at error e_th, power
// split across n subchannels.
double ul_gain_threshold(const LinkParams& lp, double b_hz, int n, double d_u_s, double e_th);

// Downlink variant: full duration d_d_s is payload, but power is further
// split across the (d_d/t_f) * eb_plus packets in flight and the nt antennas.
double dl_gain_threshold(const LinkParams& lp, double b_hz, int n, double d_d_s, int eb_plus,
                         double e_th);

// Decode error at instantaneous gain g when power is divided power_split
// ways and the transmission lasts tau_s. Saturates to 0 and 1 cleanly.
double decode_error_probability(const LinkParams& lp, double b_hz, double power_split,
                                double tau_s, double g);

// Loss bound (F + e_th)^n: outage below the gain threshold counted as loss,
// decode error e_th charged above it, n independent subchannel copies.
// cdf_at_threshold is the gain CDF evaluated at the threshold.
double bounded_loss_probability(double cdf_at_threshold, double e_th, int n);

// Packet loss without the outage/decode split: the decode error averaged
// over the gain density, raised to the n-th power. power_split divides the
// transmit power exactly as in decode_error_probability.
double exact_loss_probability(const LinkParams& lp, double b_hz, double power_split, int n,
                              double tau_s);

}  // namespace bandplan
