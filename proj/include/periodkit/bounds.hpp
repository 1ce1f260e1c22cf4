#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "periodkit/minimize.hpp"

// Lower bounds on the minimal period of nonstationary periodic orbits of
// semilinear evolution systems u' + Au = f(u) with globally Lipschitz f.
// Three concrete settings are covered (plain ODEs, analytic semigroups with a
// fractional-power Lipschitz norm, strongly damped second-order systems) plus
// a grid certificate for arbitrary semigroup splitting profiles.
namespace periodkit::bounds {

enum class Method {
  ode_hilbert,
  ode_banach,
  parabolic_kbeta,
  parabolic_closed_form,
  parabolic_baseline,
  uniform_profile,
  hyperbolic,
};

const char* method_name(Method m);

struct BoundResult {
  double lower_bound_T = 0.0;
  Method method{};
  std::map<std::string, double> diagnostics;  // sorted keys, deterministic
};

struct ParabolicBoundInput {
  double lipschitz_L;  // Lipschitz constant of f : X^beta -> X
  double beta;         // fractional power in [0, 1)
};

struct HyperbolicBoundInput {
  double lipschitz_L;  // Lipschitz constant in the energy norm
  double alpha;        // strong damping coefficient, > 0
};

struct OdeBounds {
  BoundResult hilbert;  // T >= 2*pi/L, inner-product space
  BoundResult banach;   // T >= 6/L, general norm
};
OdeBounds ode_bounds(double L);

// (beta/e)^beta, the sharp constant in ||e^{-tA} A^beta|| <= M_beta t^-beta;
// equals 1 at beta = 0 and is continuous there.
double m_beta(double beta);

// integral_0^eta s^-beta e^-s ds, handled by an alternating series (the
// endpoint singularity is never quadratured through). Absolute accuracy 1e-12.
double incomplete_integral(double beta, double eta);

// Profile whose minimum over eta in (0,1) gives the parabolic period constant:
// H(eta) = eta^beta/(1-eta) + (M_beta/eta)(e^-eta + eta^beta * incomplete).
double parabolic_H(double eta, double beta);

// Variant obtained by keeping the decay tail inside the final integral
// instead of comparing it away. Strictly above parabolic_H for beta > 0 and
// equal at beta = 0 (the two derivations coincide for constant decay).
double parabolic_H_alt(double eta, double beta);

struct KBetaResult {
  double k_beta;    // min of parabolic_H over (0, 1)
  double eta_star;  // argmin
};
KBetaResult k_beta(double beta, const ScalarMinimizerConfig& cfg = {});

// T >= (1/(L K_beta))^{1/(1-beta)}; reduces to T >= 1/(4L) at beta = 0.
BoundResult parabolic_bound(const ParabolicBoundInput& in,
                            const ScalarMinimizerConfig& cfg = {});

// Closed form obtained by evaluating the profile bound at eta = 1/2:
// T >= (L * (2^{1-beta} + 2 M_beta e^{-1/2} + M_beta/(1-beta)))^{-1/(1-beta)}.
// beta = 0 is rejected; the direct 1/(4L) result is sharper there.
BoundResult parabolic_closed_form_bound(const ParabolicBoundInput& in);

// Earlier closed-form estimate kept as a comparison baseline:
// T >= (L * (2^{1-beta} + M_beta/((1-e^{-1/2})(1-beta))))^{-1/(1-beta)}.
BoundResult parabolic_baseline_bound(const ParabolicBoundInput& in);

// Closed form for a uniform splitting profile (decay threshold mu0 >= 0,
// growth constant M > 0, constant decay weight, projection constants
// (1 - mu0/mu)^{-1}): T >= 1/(L (1 + sqrt(M (1 + mu0/L)))^2).
BoundResult uniform_profile_bound(double L, double mu0, double M);

// Strongly damped second-order systems: the splitting of the damped block
// operator yields mu0 = 2/alpha and M = 1 + sqrt(2), so this is exactly
// uniform_profile_bound(L, 2/alpha, 1 + sqrt(2)).
BoundResult hyperbolic_bound(const HyperbolicBoundInput& in);

// Decay weight m(t) multiplying the stable-part semigroup estimate.
struct DecayProfile {
  enum class Kind { constant, power };
  Kind kind = Kind::constant;
  double c = 1.0;        // constant value
  double m_coeff = 1.0;  // power kind: m(t) = m_coeff * t^-exponent
  double exponent = 0.0; // in [0, 1) so the weighted integrals stay finite

  static DecayProfile constant(double value);
  static DecayProfile power(double coeff, double exponent);

  double operator()(double t) const;
  // integral_0^{mu T} m(s/mu) e^-s ds, closed form / series per kind.
  double weighted_exp_integral(double mu, double T) const;
};

// Constants of a semigroup splitting at rate mu: stable part decays like
// m(t) e^{-mu t}, the complementary generator is bounded by mu*M, and the two
// projections are bounded by k_plus(mu), k_minus(mu).
struct SemigroupProfile {
  double mu0 = 0.0;  // splitting exists for every mu > mu0
  double M = 1.0;
  DecayProfile decay;
  std::function<double(double)> k_plus;
  std::function<double(double)> k_minus;

  // Analytic-semigroup profile: mu0 = 0, M = 1, m(t) = M_beta t^-beta,
  // k_plus = mu^beta, k_minus = 1.
  static SemigroupProfile parabolic(double beta);
  // Uniform profile with constant decay weight and k_pm = (1-mu0/mu)^{-1}.
  static SemigroupProfile uniform(double mu0, double M);
};

// Right-hand side of the period inequality at rate mu: any nonstationary
// T-periodic orbit forces RHS(mu) >= 1, so RHS(mu) < 1 certifies nonexistence.
double certificate_rhs(const SemigroupProfile& p, double L, double T, double mu);

// Algebraic variant that keeps the whole decay tail inside the integral term;
// identical for constant decay weights, never smaller for decreasing ones.
double certificate_rhs_alt(const SemigroupProfile& p, double L, double T, double mu);

struct CertificateResult {
  std::optional<double> violated_at;  // first grid mu with RHS < 1
  double rhs_min;                     // +inf when no grid mu is admissible
  double rhs_argmin;                  // NaN in the same case
  bool certified() const { return violated_at.has_value(); }
};

// Scans RHS(mu) on a logarithmic grid over (mu0, 1/(M T)). Periods with
// T >= 1/(mu0 M) admit no mu and return the empty result.
CertificateResult period_certificate(const SemigroupProfile& p, double L,
                                     double T, int mu_grid = 4096);

// Checks integral_0^T m(tau) e^{-mu tau} dtau >= m(T)(1 - e^{-mu T})/mu by
// adaptive quadrature (tolerance 1e-10). Holds for nonincreasing m with
// equality for constant m; increasing weights can break it.
bool comparison_inequality_check(const DecayProfile& m, double mu, double T);
bool comparison_inequality_check(const std::function<double(double)>& m,
                                 double mu, double T);

}  // namespace periodkit::bounds
