#pragma once

#include <cmath>
#include <concepts>
#include <stdexcept>

namespace periodkit {

// Adaptive Simpson with Richardson correction. The integrand must be finite on
// [a, b]; endpoint singularities have to be removed by substitution before
// calling (see bounds.cpp for the power-law decay substitution).
template <std::invocable<double> F>
double adaptive_simpson(F&& f, double a, double b, double tol = 1e-12,
                        int max_depth = 52) {
  if (!(a <= b)) throw std::invalid_argument("adaptive_simpson: a > b");
  if (a == b) return 0.0;

  struct Impl {
    F& f;
    double tol_floor;
    double recurse(double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
      const double m = 0.5 * (a + b);
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = f(lm), frm = f(rm);
      const double h6 = (b - a) / 12.0;
      const double left = h6 * (fa + 4.0 * flm + fm);
      const double right = h6 * (fm + 4.0 * frm + fb);
      const double delta = left + right - whole;
      if (depth <= 0 || std::abs(delta) <= 15.0 * std::max(tol, tol_floor))
        return left + right + delta / 15.0;
      return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
             recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
  };

  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  Impl impl{f, 1e-307};
  return impl.recurse(a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace periodkit
