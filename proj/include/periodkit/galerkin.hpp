#pragma once

#include <array>
#include <string>
#include <vector>

// Manufactured periodic orbits of planar mode systems, used to validate the
// period lower bounds end to end: each orbit has a closed-form period and an
// exact Lipschitz constant for its nonlinearity, the trajectory is integrated
// numerically, and the observed first-return period is compared against the
// bound computed from (L, beta) or (L, alpha) alone.
namespace periodkit::galerkin {

enum class OrbitKind { parabolic, hyperbolic };

// A circle orbit u(t) = amplitude * (cos(omega t), sin(omega t)).
//   parabolic:  u' = -lambda u + f(u),      f(u) = lambda u + omega J u
//   hyperbolic: u'' = -lambda(u + alpha u') + f(u, u'),
//               f(u, v) = (lambda - omega^2) u + alpha lambda v
// with J the quarter-turn rotation. lipschitz_exact is the sharp Lipschitz
// constant of f in the norm the corresponding bound expects (the
// lambda^{-beta}-weighted norm for the parabolic scale, the per-mode
// (lambda |u|^2 + |v|^2)^{1/2} norm for the damped system).
struct OrbitSpec {
  OrbitKind kind;
  double lambda = 1.0;
  double omega = 1.0;
  double amplitude = 1.0;
  double beta = 0.0;   // parabolic only
  double alpha = 1.0;  // hyperbolic only
  double period_exact = 0.0;
  double lipschitz_exact = 0.0;
};

OrbitSpec make_parabolic_orbit(double lambda, double omega, double amplitude,
                               double beta);
OrbitSpec make_hyperbolic_orbit(double lambda, double omega, double amplitude,
                                double alpha);

struct SimConfig {
  double dt = 0.0;            // <= 0: period_exact / 2000
  double t_max = 0.0;         // <= 0: 1.5 * period_exact
  double poincare_tol = 1e-8; // minimum section-crossing speed
};

// v holds du/dt in both cases (the velocity component for the damped system).
struct Trajectory {
  std::vector<double> t;
  std::vector<std::array<double, 2>> u;
  std::vector<std::array<double, 2>> v;
};

// Fixed-step RK4 from u(0) = (amplitude, 0) on the section {u2 = 0, u2' > 0}.
// Throws std::domain_error if the resolved step is coarser than 1/100 of the
// exact period.
Trajectory integrate(const OrbitSpec& spec, const SimConfig& cfg = {});

// Columns: t,u1,v1,u2,v2.
void write_csv(const Trajectory& traj, const std::string& path);

// First return time to the section {u2 = 0, u2' > 0}, located by a sign
// change of u2 with linear interpolation inside the step. Throws
// std::runtime_error if the trajectory never crosses.
double first_return_period(const Trajectory& traj, double poincare_tol = 1e-8);

struct VerifyReport {
  double period_exact;
  double observed_period;
  double lipschitz_exact;
  double bound;    // period lower bound computed from the Lipschitz data only
  double margin;   // period_exact / bound
  bool pass;       // bound holds and the observed period matches to 0.1%
};
VerifyReport verify_bound(const OrbitSpec& spec, const SimConfig& cfg = {});

// Maximum deviation of the integrated trajectory from its own
// variation-of-constants form, with the convolution accumulated by the
// trapezoid rule; O(dt^2) for smooth orbits. A large value means the
// trajectory is not a mild solution of the system it claims to solve.
double duhamel_residual(const OrbitSpec& spec, const SimConfig& cfg = {});

}  // namespace periodkit::galerkin
