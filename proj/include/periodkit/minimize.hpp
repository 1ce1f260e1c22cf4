#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace periodkit {

struct ScalarMinimizerConfig {
  double abs_tol = 1e-12;
  int max_iters = 200;
  double bracket_lo = 1e-9;
  double bracket_hi = 1.0 - 1e-9;
  int scan_points = 1024;
};

struct MinimizeResult {
  double x;
  double value;
  int iterations;
};

// Thrown when the golden-section phase fails to shrink the bracket to abs_tol
// within max_iters. Carries the best iterate seen so the caller can decide
// whether the partial answer is usable.
struct minimizer_error : std::runtime_error {
  double best_x;
  double best_value;
  minimizer_error(const std::string& msg, double x, double v)
      : std::runtime_error(msg), best_x(x), best_value(v) {}
};

// Minimizes f on (cfg.bracket_lo, cfg.bracket_hi). Unimodality is not assumed:
// a uniform scan locates the best sample first, golden-section refines the
// surrounding bracket, and three guarded Newton steps on f' (central
// differences) polish the result. Newton steps that leave the bracket or do
// not improve f are discarded.
inline MinimizeResult minimize_scalar(const std::function<double(double)>& f,
                                      const ScalarMinimizerConfig& cfg = {}) {
  const double lo = cfg.bracket_lo, hi = cfg.bracket_hi;
  if (!(lo < hi)) throw std::invalid_argument("minimize_scalar: empty bracket");
  const int n = cfg.scan_points < 3 ? 3 : cfg.scan_points;

  double best_x = lo, best_f = f(lo);
  int best_i = 0;
  for (int i = 0; i < n; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    const double fx = f(x);
    if (fx < best_f) { best_f = fx; best_x = x; best_i = i; }
  }
  const double step = (hi - lo) / (n - 1);
  double a = best_i == 0 ? lo : best_x - step;
  double b = best_i == n - 1 ? hi : best_x + step;

  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  int it = 0;
  while (b - a > cfg.abs_tol) {
    if (++it > cfg.max_iters)
      throw minimizer_error("minimize_scalar: golden section exceeded max_iters",
                            f1 < f2 ? x1 : x2, std::min(f1, f2));
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - inv_phi * (b - a); f1 = f(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + inv_phi * (b - a); f2 = f(x2);
    }
  }
  best_x = f1 < f2 ? x1 : x2;
  best_f = std::min(f1, f2);

  const double h = 1e-5 * std::max(1.0, std::abs(best_x));
  double x = best_x;
  for (int k = 0; k < 3; ++k) {
    if (x - h <= lo || x + h >= hi) break;
    const double fp = (f(x + h) - f(x - h)) / (2.0 * h);
    const double fpp = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    if (!(fpp > 0.0)) break;
    const double xn = x - fp / fpp;
    if (!(xn > lo && xn < hi)) break;
    const double fn = f(xn);
    if (fn <= best_f) { best_f = fn; best_x = xn; }
    x = xn;
  }
  return {best_x, best_f, it};
}

}  // namespace periodkit
