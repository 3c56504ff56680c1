#pragma once

#include <algorithm>
#include <array>
#include <functional>

#include "speclab/geometry.hpp"

namespace speclab::detail {

struct SimplexMinimum {
  Point x = Point::Zero();
  double value = 0.0;
};

/// Derivative-free minimization over R^2 (Nelder-Mead, standard coefficients).
inline SimplexMinimum nelder_mead_2d(const std::function<double(const Point&)>& f, const Point& x0,
                                     double initial_step, double x_tol = 1e-9, int max_iters = 400) {
  std::array<Point, 3> s = {x0, x0 + Point(initial_step, 0.0), x0 + Point(0.0, initial_step)};
  std::array<double, 3> fs = {f(s[0]), f(s[1]), f(s[2])};
  for (int iter = 0; iter < max_iters; ++iter) {
    std::array<int, 3> idx = {0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fs[a] < fs[b]; });
    const int best = idx[0], mid = idx[1], worst = idx[2];
    if ((s[worst] - s[best]).norm() < x_tol && (s[mid] - s[best]).norm() < x_tol) break;
    const Point centroid = 0.5 * (s[best] + s[mid]);
    const Point xr = centroid + (centroid - s[worst]);
    const double fr = f(xr);
    if (fr < fs[best]) {
      const Point xe = centroid + 2.0 * (centroid - s[worst]);
      const double fe = f(xe);
      s[worst] = fe < fr ? xe : xr;
      fs[worst] = std::min(fe, fr);
    } else if (fr < fs[mid]) {
      s[worst] = xr;
      fs[worst] = fr;
    } else {
      const Point xc = centroid + 0.5 * (s[worst] - centroid);
      const double fc = f(xc);
      if (fc < fs[worst]) {
        s[worst] = xc;
        fs[worst] = fc;
      } else {
        for (int i : {mid, worst}) {
          s[i] = s[best] + 0.5 * (s[i] - s[best]);
          fs[i] = f(s[i]);
        }
      }
    }
  }
  const int k = static_cast<int>(std::min_element(fs.begin(), fs.end()) - fs.begin());
  return {s[k], fs[k]};
}

}  // namespace speclab::detail
