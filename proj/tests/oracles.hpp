#pragma once

// Independent reference computations for the test suite. Everything here
// deliberately avoids the code paths used by the library: integrals go
// through tanh-sinh quadrature, matrix norms through power iteration, and
// maxima through dense angle scans.

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <random>
#include <utility>

namespace oracles {

template <typename F>
double integrate(F&& f, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> quad;
  return quad.integrate(std::forward<F>(f), a, b);
}

// Lower incomplete gamma; tanh-sinh absorbs the s^{a-1} endpoint singularity.
inline double incomplete_gamma(double a, double x) {
  return integrate([a](double s) { return std::pow(s, a - 1.0) * std::exp(-s); },
                   0.0, x);
}

// Largest singular value of [[a, b], [c, d]] by power iteration on M^H M,
// two fixed starting vectors to dodge an unlucky orthogonal start.
inline double svd_norm_2x2(std::complex<double> a, std::complex<double> b,
                           std::complex<double> c, std::complex<double> d) {
  using C = std::complex<double>;
  auto step = [&](C& u, C& v) {
    const C mu = a * u + b * v, mv = c * u + d * v;
    C nu = std::conj(a) * mu + std::conj(c) * mv;
    C nv = std::conj(b) * mu + std::conj(d) * mv;
    const double n = std::sqrt(std::norm(nu) + std::norm(nv));
    if (n == 0.0) return 0.0;
    u = nu / n;
    v = nv / n;
    return n;  // converges to sigma_max^2
  };
  double best = 0.0;
  for (const auto& start : {std::pair<C, C>{{1.0, 0.2}, {0.4, -0.7}},
                            std::pair<C, C>{{-0.3, 0.9}, {1.0, 0.5}}}) {
    C u = start.first, v = start.second;
    double s2 = 0.0;
    for (int i = 0; i < 400; ++i) s2 = step(u, v);
    best = std::max(best, std::sqrt(s2));
  }
  return best;
}

// Dense three-angle scan of max |z z1 + z2| over the complex unit sphere.
// Slower and more redundant than the library's two-angle reduction on
// purpose: it does not assume any phase invariance.
template <typename Value>
double sphere_scan_3angle(int n, Value&& value) {
  const double pi = 3.14159265358979323846;
  double best = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double theta = 0.5 * pi * i / n;
    for (int j = 0; j < 2 * n; ++j) {
      const double p1 = pi * j / n;
      for (int k = 0; k < 2 * n; ++k) {
        const double p2 = pi * k / n;
        const std::complex<double> z1 = std::polar(std::cos(theta), p1);
        const std::complex<double> z2 = std::polar(std::sin(theta), p2);
        best = std::max(best, value(z1, z2));
      }
    }
  }
  return best;
}

inline double linear_max_scan(std::complex<double> z, int n) {
  return sphere_scan_3angle(n, [z](std::complex<double> z1, std::complex<double> z2) {
    return std::abs(z * z1 + z2);
  });
}

inline double quadratic_max_scan(std::complex<double> z, int n) {
  return sphere_scan_3angle(n, [z](std::complex<double> z1, std::complex<double> z2) {
    return std::norm(z1) + std::norm(2.0 * z * z1 + z2);
  });
}

inline std::mt19937 rng(unsigned salt = 0) {
  const char* env = std::getenv("PERIODKIT_SEED");
  const unsigned base = (env && *env)
                            ? static_cast<unsigned>(std::strtoul(env, nullptr, 10))
                            : 42u;
  return std::mt19937(base + salt);
}

inline double uniform(std::mt19937& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline double log_uniform(std::mt19937& g, double lo, double hi) {
  return std::exp(uniform(g, std::log(lo), std::log(hi)));
}

}  // namespace oracles
