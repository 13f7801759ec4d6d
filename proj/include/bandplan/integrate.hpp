#pragma once
#include <functional>

namespace bandplan {

struct QuadratureResult {
  double value;
  double error;       // accumulated local error estimates
  int panels;         // panels accepted
};

// Adaptive Gauss-Kronrod 15/7 on [a, b]. A panel is accepted once its local
// error estimate fits within its share of tol_abs plus tol_rel of its own
// integral; throws std::runtime_error when max_panels is exhausted first.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double tol_abs, double tol_rel, int max_panels = 2000);

}  // namespace bandplan
