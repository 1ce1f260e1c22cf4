#include "periodkit/galerkin.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "periodkit/bounds.hpp"
#include "periodkit/spectral.hpp"

namespace periodkit::galerkin {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::domain_error(msg);
}

constexpr double pi = 3.14159265358979323846;

using State = std::array<double, 4>;  // u1, u2, v1, v2 (v unused when parabolic)

std::array<double, 2> force_parabolic(const OrbitSpec& s, const std::array<double, 2>& u) {
  // f(u) = lambda u + omega J u.
  return {s.lambda * u[0] - s.omega * u[1], s.lambda * u[1] + s.omega * u[0]};
}

std::array<double, 2> force_hyperbolic(const OrbitSpec& s, const std::array<double, 2>& u,
                                       const std::array<double, 2>& v) {
  // f(u, v) = (lambda - omega^2) u + alpha lambda v.
  const double c = s.lambda - s.omega * s.omega;
  return {c * u[0] + s.alpha * s.lambda * v[0], c * u[1] + s.alpha * s.lambda * v[1]};
}

State rhs(const OrbitSpec& s, const State& y) {
  if (s.kind == OrbitKind::parabolic) {
    const std::array<double, 2> u{y[0], y[1]};
    const auto f = force_parabolic(s, u);
    return {-s.lambda * u[0] + f[0], -s.lambda * u[1] + f[1], 0.0, 0.0};
  }
  const std::array<double, 2> u{y[0], y[1]}, v{y[2], y[3]};
  const auto f = force_hyperbolic(s, u, v);
  return {v[0], v[1], -s.lambda * (u[0] + s.alpha * v[0]) + f[0],
          -s.lambda * (u[1] + s.alpha * v[1]) + f[1]};
}

State rk4_step(const OrbitSpec& s, const State& y, double dt) {
  auto axpy = [](const State& a, double h, const State& b) {
    State r;
    for (int i = 0; i < 4; ++i) r[i] = a[i] + h * b[i];
    return r;
  };
  const State k1 = rhs(s, y);
  const State k2 = rhs(s, axpy(y, 0.5 * dt, k1));
  const State k3 = rhs(s, axpy(y, 0.5 * dt, k2));
  const State k4 = rhs(s, axpy(y, dt, k3));
  State out;
  for (int i = 0; i < 4; ++i)
    out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

struct Resolved {
  double dt, t_max;
};

Resolved resolve(const OrbitSpec& s, const SimConfig& cfg) {
  Resolved r;
  r.dt = cfg.dt > 0.0 ? cfg.dt : s.period_exact / 2000.0;
  r.t_max = cfg.t_max > 0.0 ? cfg.t_max : 1.5 * s.period_exact;
  require(r.dt < s.period_exact / 100.0,
          "integrate: time step must resolve the period (dt < period/100)");
  require(r.t_max > r.dt, "integrate: horizon shorter than one step");
  return r;
}

void validate_common(double lambda, double omega, double amplitude) {
  require(lambda > 0.0, "orbit: lambda must be positive");
  require(omega > 0.0, "orbit: omega must be positive");
  require(amplitude > 0.0, "orbit: amplitude must be positive");
}

}  // namespace

OrbitSpec make_parabolic_orbit(double lambda, double omega, double amplitude,
                               double beta) {
  validate_common(lambda, omega, amplitude);
  require(beta >= 0.0 && beta < 1.0, "orbit: beta must lie in [0, 1)");
  OrbitSpec s;
  s.kind = OrbitKind::parabolic;
  s.lambda = lambda;
  s.omega = omega;
  s.amplitude = amplitude;
  s.beta = beta;
  s.period_exact = 2.0 * pi / omega;
  // f(u) = (lambda I + omega J) u is linear; its sharp constant from the
  // beta-weighted domain norm is |lambda + i omega| / lambda^beta.
  s.lipschitz_exact = std::hypot(lambda, omega) * std::pow(lambda, -beta);
  return s;
}

OrbitSpec make_hyperbolic_orbit(double lambda, double omega, double amplitude,
                                double alpha) {
  validate_common(lambda, omega, amplitude);
  require(alpha > 0.0, "orbit: alpha must be positive");
  OrbitSpec s;
  s.kind = OrbitKind::hyperbolic;
  s.lambda = lambda;
  s.omega = omega;
  s.amplitude = amplitude;
  s.alpha = alpha;
  s.period_exact = 2.0 * pi / omega;
  // Sharp constant of (u, v) |-> (lambda - omega^2) u + alpha lambda v from
  // the weighted state norm (lambda |u|^2 + |v|^2)^{1/2}.
  const double cu = (lambda - omega * omega);
  s.lipschitz_exact = std::sqrt(cu * cu / lambda + alpha * lambda * alpha * lambda);
  return s;
}

Trajectory integrate(const OrbitSpec& spec, const SimConfig& cfg) {
  const Resolved r = resolve(spec, cfg);
  const long n = static_cast<long>(std::ceil(r.t_max / r.dt - 1e-12));
  Trajectory traj;
  traj.t.reserve(n + 1);
  traj.u.reserve(n + 1);
  traj.v.reserve(n + 1);
  State y{spec.amplitude, 0.0, 0.0, spec.amplitude * spec.omega};
  if (spec.kind == OrbitKind::parabolic) y[2] = y[3] = 0.0;
  for (long i = 0; i <= n; ++i) {
    traj.t.push_back(static_cast<double>(i) * r.dt);
    traj.u.push_back({y[0], y[1]});
    if (spec.kind == OrbitKind::parabolic) {
      const State d = rhs(spec, y);  // report du/dt alongside u
      traj.v.push_back({d[0], d[1]});
    } else {
      traj.v.push_back({y[2], y[3]});
    }
    if (i < n) y = rk4_step(spec, y, r.dt);
  }
  return traj;
}

void write_csv(const Trajectory& traj, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("write_csv: cannot open " + path);
  std::fputs("t,u1,v1,u2,v2\n", f);
  for (std::size_t i = 0; i < traj.t.size(); ++i)
    std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g\n", traj.t[i], traj.u[i][0],
                 traj.v[i][0], traj.u[i][1], traj.v[i][1]);
  std::fclose(f);
}

double first_return_period(const Trajectory& traj, double poincare_tol) {
  for (std::size_t i = 0; i + 1 < traj.t.size(); ++i) {
    const double a = traj.u[i][1], b = traj.u[i + 1][1];
    if (a < 0.0 && b >= 0.0) {
      const double dt = traj.t[i + 1] - traj.t[i];
      if ((b - a) / dt <= poincare_tol) continue;  // tangential graze
      return traj.t[i] + dt * a / (a - b);
    }
  }
  throw std::runtime_error(
      "first_return_period: no upward section crossing before t_max");
}

VerifyReport verify_bound(const OrbitSpec& spec, const SimConfig& cfg) {
  const Trajectory traj = integrate(spec, cfg);
  VerifyReport rep;
  rep.period_exact = spec.period_exact;
  rep.observed_period = first_return_period(traj, cfg.poincare_tol);
  rep.lipschitz_exact = spec.lipschitz_exact;
  if (spec.kind == OrbitKind::parabolic)
    rep.bound =
        bounds::parabolic_bound({spec.lipschitz_exact, spec.beta}).lower_bound_T;
  else
    rep.bound =
        bounds::hyperbolic_bound({spec.lipschitz_exact, spec.alpha}).lower_bound_T;
  rep.margin = rep.period_exact / rep.bound;
  rep.pass = rep.period_exact >= rep.bound &&
             std::abs(rep.observed_period - rep.period_exact) <=
                 1e-3 * rep.period_exact;
  return rep;
}

double duhamel_residual(const OrbitSpec& spec, const SimConfig& cfg) {
  const Resolved r = resolve(spec, cfg);
  const Trajectory traj = integrate(spec, cfg);
  const std::size_t n = traj.t.size();
  double worst = 0.0;

  if (spec.kind == OrbitKind::parabolic) {
    const double e = std::exp(-spec.lambda * r.dt);
    std::array<double, 2> hom = traj.u[0];   // e^{-lambda t} u(0)
    std::array<double, 2> conv{0.0, 0.0};    // trapezoid convolution integral
    auto f_at = [&](std::size_t i) { return force_parabolic(spec, traj.u[i]); };
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const auto fa = f_at(i), fb = f_at(i + 1);
      for (int c = 0; c < 2; ++c) {
        conv[c] = e * (conv[c] + 0.5 * r.dt * fa[c]) + 0.5 * r.dt * fb[c];
        hom[c] *= e;
      }
      const double r1 = traj.u[i + 1][0] - hom[0] - conv[0];
      const double r2 = traj.u[i + 1][1] - hom[1] - conv[1];
      worst = std::max(worst, std::hypot(r1, r2));
    }
    return worst;
  }

  // Damped case: per displacement component, the linear part is one 2x2 block.
  const spectral::Mat2c ec =
      spectral::block_exponential(spec.lambda, spec.alpha, r.dt);
  const double e11 = ec.a.real(), e12 = ec.b.real();
  const double e21 = ec.c.real(), e22 = ec.d.real();
  std::array<double, 2> hu = {traj.u[0][0], traj.u[0][1]};
  std::array<double, 2> hv = {traj.v[0][0], traj.v[0][1]};
  std::array<double, 2> cu{0.0, 0.0}, cv{0.0, 0.0};
  auto f_at = [&](std::size_t i) {
    return force_hyperbolic(spec, traj.u[i], traj.v[i]);
  };
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const auto fa = f_at(i), fb = f_at(i + 1);
    for (int c = 0; c < 2; ++c) {
      // Forcing enters the velocity slot only: F = (0, f_c).
      const double au = cu[c], av = cv[c] + 0.5 * r.dt * fa[c];
      cu[c] = e11 * au + e12 * av;
      cv[c] = e21 * au + e22 * av + 0.5 * r.dt * fb[c];
      const double gu = hu[c], gv = hv[c];
      hu[c] = e11 * gu + e12 * gv;
      hv[c] = e21 * gu + e22 * gv;
    }
    double res2 = 0.0;
    for (int c = 0; c < 2; ++c) {
      const double du = traj.u[i + 1][c] - hu[c] - cu[c];
      const double dv = traj.v[i + 1][c] - hv[c] - cv[c];
      res2 += spec.lambda * du * du + dv * dv;
    }
    worst = std::max(worst, std::sqrt(res2));
  }
  return worst;
}

}  // namespace periodkit::galerkin
