#include "bandplan/integrate.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace bandplan {

namespace {

// 15-point Kronrod extension of 7-point Gauss on [-1, 1]. Odd-indexed
// abscissae are the embedded Gauss nodes.
const double kXgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                        0.741531185599394, 0.586087235467691, 0.405845151377397,
                        0.207784955007898, 0.0};
const double kWgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                        0.140653259715525, 0.169004726639267, 0.190350578064785,
                        0.204432940075298, 0.209482141084728};
const double kWg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                       0.417959183673469};

struct Panel {
  double a, b, integral, err;
};

Panel eval_panel(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double ik = kWgk[7] * fc;
  double ig = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double x = h * kXgk[j];
    const double f1 = f(c - x), f2 = f(c + x);
    ik += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) ig += kWg[j / 2] * (f1 + f2);
  }
  ik *= h;
  ig *= h;
  return {a, b, ik, std::fabs(ik - ig)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double tol_abs, double tol_rel, int max_panels) {
  if (!(b > a)) return {0.0, 0.0, 0};
  const double full = b - a;
  std::vector<Panel> work{eval_panel(f, a, b)};
  double value = 0.0, err = 0.0;
  int accepted = 0, produced = 1;
  while (!work.empty()) {
    Panel p = work.back();
    work.pop_back();
    const double budget = tol_abs * (p.b - p.a) / full + tol_rel * std::fabs(p.integral);
    if (p.err <= budget || (p.b - p.a) < full * 1e-14) {
      value += p.integral;
      err += p.err;
      ++accepted;
      continue;
    }
    if (produced + 2 > max_panels)
      throw std::runtime_error("integrate: tolerance unmet after max panel refinement");
    const double mid = 0.5 * (p.a + p.b);
    work.push_back(eval_panel(f, p.a, mid));
    work.push_back(eval_panel(f, mid, p.b));
    produced += 2;
  }
  return {value, err, accepted};
}

}  // namespace bandplan
