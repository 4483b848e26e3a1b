// Scalar optimization helpers: coarse grid followed by golden-section
// refinement around the best grid point.
#pragma once

#include <cmath>
#include <functional>

namespace qht::detail {

struct ScalarOpt {
  double x = 0.0;
  double value = 0.0;
};

inline ScalarOpt minimize_scalar(const std::function<double(double)>& f, double lo,
                                 double hi, int grid = 64, double xtol = 1e-8) {
  double best_x = lo;
  double best_f = f(lo);
  for (int k = 1; k <= grid; ++k) {
    const double x = lo + (hi - lo) * k / grid;
    const double v = f(x);
    if (v < best_f) {
      best_f = v;
      best_x = x;
    }
  }
  const double h = (hi - lo) / grid;
  double a = std::max(lo, best_x - h);
  double b = std::min(hi, best_x + h);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > xtol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    }
  }
  const double xm = 0.5 * (a + b);
  const double fm = f(xm);
  if (fm < best_f) return {xm, fm};
  return {best_x, best_f};
}

inline ScalarOpt maximize_scalar(const std::function<double(double)>& f, double lo,
                                 double hi, int grid = 64, double xtol = 1e-8) {
  const auto r = minimize_scalar([&](double x) { return -f(x); }, lo, hi, grid, xtol);
  return {r.x, -r.value};
}

}  // namespace qht::detail
