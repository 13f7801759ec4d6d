#pragma once

namespace bandplan {

// Gaussian upper-tail probability Q(x) = P(Z > x) for standard normal Z.
double q_function(double x);

// Inverse of q_function for p in (0, 0.5): the x > 0 with Q(x) = p.
// Rational initial estimate polished by one Newton step against the
// erfc-based forward function; throws std::domain_error outside (0, 0.5).
double q_inverse(double p);

// CDF of the sum of nt unit-mean exponentials (channel power gain with nt
// antennas and maximum-ratio combining): P(g <= x). Evaluated through the
// Poisson tail identity so the left tail keeps full relative precision
// down to values near 1e-300.
double erlang_gain_cdf(int nt, double x);

// Matching density x^(nt-1) e^(-x) / (nt-1)!.
double erlang_gain_pdf(int nt, double x);

// P(X > m) for X ~ Poisson(mu), accurate in the far tail.
double poisson_upper_tail(double mu, long long m);

}  // namespace bandplan
