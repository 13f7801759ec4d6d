#include "bandplan/special_math.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace bandplan {

double q_function(double x) { return 0.5 * std::erfc(x * 0.70710678118654752440); }

namespace {

// Rational approximation of the standard normal quantile (Acklam's
// coefficients), good to ~1.2e-9 relative; the Newton polish below removes
// the rest.
double norm_quantile_estimate(double p) {
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  if (p < 0.02425) {
    double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  double q = p - 0.5, r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

const std::vector<double>& log_factorials() {
  static const std::vector<double> table = [] {
    std::vector<double> t(4200);
    t[0] = 0.0;
    for (std::size_t k = 1; k < t.size(); ++k) t[k] = t[k - 1] + std::log(static_cast<double>(k));
    return t;
  }();
  return table;
}

}  // namespace

double q_inverse(double p) {
  if (!(p > 0.0) || !(p < 0.5)) throw std::domain_error("q_inverse: p must lie in (0, 0.5)");
  double x = -norm_quantile_estimate(p);  // Q^-1(p) = -Phi^-1(p)
  double pdf = kInvSqrt2Pi * std::exp(-0.5 * x * x);
  if (pdf > 0.0) x += (q_function(x) - p) / pdf;
  return x;
}

double erlang_gain_cdf(int nt, double x) {
  if (nt < 1) throw std::domain_error("erlang_gain_cdf: nt must be >= 1");
  const auto& lf = log_factorials();
  if (static_cast<std::size_t>(nt) >= lf.size())
    throw std::domain_error("erlang_gain_cdf: nt too large");
  if (!(x > 0.0)) return 0.0;
  if (!(x < std::numeric_limits<double>::max())) return 1.0;
  const double lx = std::log(x);
  if (x < 0.9 * nt) {
    // Left tail via P(Gamma(nt) <= x) = P(Poisson(x) >= nt): summing the
    // Poisson upper tail directly keeps tiny values at full precision.
    double term = std::exp(nt * lx - x - lf[nt]);
    double sum = term;
    for (int k = nt; k < nt + 100000; ++k) {
      term *= x / static_cast<double>(k + 1);
      sum += term;
      if (term < sum * 1e-18 || term < 1e-320) break;
    }
    return sum < 1.0 ? sum : 1.0;
  }
  // Bulk and right tail: complement of the Poisson lower sum. The result is
  // at least ~0.4 here, so the cancellation is harmless.
  double sum = 0.0;
  for (int k = 0; k < nt; ++k) sum += std::exp(k * lx - x - lf[k]);
  double r = 1.0 - sum;
  return r < 0.0 ? 0.0 : (r > 1.0 ? 1.0 : r);
}

double erlang_gain_pdf(int nt, double x) {
  if (nt < 1) throw std::domain_error("erlang_gain_pdf: nt must be >= 1");
  const auto& lf = log_factorials();
  if (static_cast<std::size_t>(nt) >= lf.size())
    throw std::domain_error("erlang_gain_pdf: nt too large");
  if (!(x > 0.0)) return nt == 1 ? 1.0 : 0.0;
  return std::exp((nt - 1) * std::log(x) - x - lf[nt - 1]);
}

double poisson_upper_tail(double mu, long long m) {
  if (mu < 0.0) throw std::domain_error("poisson_upper_tail: mu must be >= 0");
  if (m < 0) return 1.0;
  if (m + 1 >= 4200) throw std::domain_error("poisson_upper_tail: m too large");
  // P(X > m) = P(X >= m + 1) = P(Gamma(m + 1) <= mu)
  return erlang_gain_cdf(static_cast<int>(m + 1), mu);
}

}  // namespace bandplan
