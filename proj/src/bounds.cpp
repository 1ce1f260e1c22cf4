#include "periodkit/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "periodkit/quadrature.hpp"

namespace periodkit::bounds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require(bool ok, const char* msg) {
  if (!ok) throw std::domain_error(msg);
}

// integral_0^x s^{a-1} e^-s ds for a in (0, 1]. Alternating series
// sum_k (-1)^k x^{k+a} / (k! (k+a)) while x is small enough that the terms
// decay without cancellation; otherwise integrate exp(-w^{1/a}) after the
// substitution w = s^a, which removes the endpoint singularity.
double lower_incomplete_gamma(double a, double x) {
  if (x == 0.0) return 0.0;
  if (x <= 1.5) {
    double pow_x = std::pow(x, a);  // x^{k+a}, advanced by *x each term
    double factorial = 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 0; k < 200; ++k) {
      const double term = pow_x / (factorial * (k + a));
      sum += sign * term;
      if (term < 1e-16 * std::max(1.0, sum)) break;
      pow_x *= x;
      factorial *= k + 1.0;
      sign = -sign;
    }
    return sum;
  }
  const double inv_a = 1.0 / a;
  return inv_a * adaptive_simpson(
                     [inv_a](double w) { return std::exp(-std::pow(w, inv_a)); },
                     0.0, std::pow(x, a), 1e-13);
}

BoundResult power_law_bound(double L, double beta, double constant, Method tag) {
  BoundResult r;
  r.method = tag;
  r.lower_bound_T = std::pow(L * constant, -1.0 / (1.0 - beta));
  r.diagnostics["constant"] = constant;
  return r;
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::ode_hilbert: return "ode_hilbert";
    case Method::ode_banach: return "ode_banach";
    case Method::parabolic_kbeta: return "parabolic_kbeta";
    case Method::parabolic_closed_form: return "parabolic_closed_form";
    case Method::parabolic_baseline: return "parabolic_baseline";
    case Method::uniform_profile: return "uniform_profile";
    case Method::hyperbolic: return "hyperbolic";
  }
  return "unknown";
}

OdeBounds ode_bounds(double L) {
  require(L > 0.0, "ode_bounds: L must be positive");
  OdeBounds out;
  out.hilbert = {2.0 * std::acos(-1.0) / L, Method::ode_hilbert, {}};
  out.banach = {6.0 / L, Method::ode_banach, {}};
  return out;
}

double m_beta(double beta) {
  require(beta >= 0.0 && beta < 1.0, "m_beta: beta must lie in [0, 1)");
  if (beta == 0.0) return 1.0;
  return std::exp(beta * (std::log(beta) - 1.0));
}

double incomplete_integral(double beta, double eta) {
  require(beta >= 0.0 && beta < 1.0, "incomplete_integral: beta must lie in [0, 1)");
  require(eta > 0.0 && eta < 1.0, "incomplete_integral: eta must lie in (0, 1)");
  return lower_incomplete_gamma(1.0 - beta, eta);
}

double parabolic_H(double eta, double beta) {
  require(eta > 0.0 && eta < 1.0, "parabolic_H: eta must lie in (0, 1)");
  const double mb = m_beta(beta);
  const double eta_b = std::pow(eta, beta);
  return eta_b / (1.0 - eta) +
         mb / eta * (std::exp(-eta) + eta_b * incomplete_integral(beta, eta));
}

double parabolic_H_alt(double eta, double beta) {
  require(eta > 0.0 && eta < 1.0, "parabolic_H_alt: eta must lie in (0, 1)");
  const double mb = m_beta(beta);
  const double eta_b = std::pow(eta, beta);
  const double one_minus_exp = -std::expm1(-eta);
  return eta_b / (1.0 - eta) +
         mb * eta_b / (eta * one_minus_exp) * incomplete_integral(beta, eta);
}

KBetaResult k_beta(double beta, const ScalarMinimizerConfig& cfg) {
  require(beta >= 0.0 && beta < 1.0, "k_beta: beta must lie in [0, 1)");
  require(cfg.bracket_lo > 0.0 && cfg.bracket_hi < 1.0,
          "k_beta: bracket must be strictly inside (0, 1)");
  const auto r = minimize_scalar([beta](double eta) { return parabolic_H(eta, beta); }, cfg);
  return {r.value, r.x};
}

BoundResult parabolic_bound(const ParabolicBoundInput& in,
                            const ScalarMinimizerConfig& cfg) {
  require(in.lipschitz_L > 0.0, "parabolic_bound: L must be positive");
  const auto kb = k_beta(in.beta, cfg);
  BoundResult r;
  r.method = Method::parabolic_kbeta;
  r.lower_bound_T = std::pow(1.0 / (in.lipschitz_L * kb.k_beta), 1.0 / (1.0 - in.beta));
  r.diagnostics["K_beta"] = kb.k_beta;
  r.diagnostics["eta_star"] = kb.eta_star;
  return r;
}

BoundResult parabolic_closed_form_bound(const ParabolicBoundInput& in) {
  require(in.lipschitz_L > 0.0, "parabolic_closed_form_bound: L must be positive");
  require(in.beta > 0.0 && in.beta < 1.0,
          "parabolic_closed_form_bound: beta must lie in (0, 1); "
          "beta = 0 has the sharper direct bound 1/(4L), use parabolic_bound");
  const double mb = m_beta(in.beta);
  const double c = std::pow(2.0, 1.0 - in.beta) + 2.0 * mb * std::exp(-0.5) +
                   mb / (1.0 - in.beta);
  return power_law_bound(in.lipschitz_L, in.beta, c, Method::parabolic_closed_form);
}

BoundResult parabolic_baseline_bound(const ParabolicBoundInput& in) {
  require(in.lipschitz_L > 0.0, "parabolic_baseline_bound: L must be positive");
  require(in.beta > 0.0 && in.beta < 1.0,
          "parabolic_baseline_bound: beta must lie in (0, 1)");
  const double mb = m_beta(in.beta);
  const double c = std::pow(2.0, 1.0 - in.beta) +
                   mb / (-std::expm1(-0.5) * (1.0 - in.beta));
  return power_law_bound(in.lipschitz_L, in.beta, c, Method::parabolic_baseline);
}

BoundResult uniform_profile_bound(double L, double mu0, double M) {
  require(L > 0.0, "uniform_profile_bound: L must be positive");
  require(mu0 >= 0.0, "uniform_profile_bound: mu0 must be nonnegative");
  require(M > 0.0, "uniform_profile_bound: M must be positive");
  const double C = M * (L + mu0);
  const double sL = std::sqrt(L), sC = std::sqrt(C);
  const double G0 = (sL + sC) * (sL + sC);
  BoundResult r;
  r.method = Method::uniform_profile;
  r.lower_bound_T = 1.0 / G0;
  r.diagnostics["C"] = C;
  r.diagnostics["G0"] = G0;
  r.diagnostics["M"] = M;
  r.diagnostics["eta0"] = sC / (sL + sC);
  r.diagnostics["mu0"] = mu0;
  return r;
}

BoundResult hyperbolic_bound(const HyperbolicBoundInput& in) {
  require(in.alpha > 0.0, "hyperbolic_bound: alpha must be positive");
  BoundResult r = uniform_profile_bound(in.lipschitz_L, 2.0 / in.alpha,
                                        1.0 + std::sqrt(2.0));
  r.method = Method::hyperbolic;
  r.diagnostics["alpha"] = in.alpha;
  return r;
}

DecayProfile DecayProfile::constant(double value) {
  if (!(value > 0.0)) throw std::domain_error("DecayProfile: constant must be positive");
  DecayProfile p;
  p.kind = Kind::constant;
  p.c = value;
  return p;
}

DecayProfile DecayProfile::power(double coeff, double exponent) {
  if (!(coeff > 0.0)) throw std::domain_error("DecayProfile: coefficient must be positive");
  if (!(exponent >= 0.0 && exponent < 1.0))
    throw std::domain_error("DecayProfile: exponent must lie in [0, 1)");
  DecayProfile p;
  p.kind = Kind::power;
  p.m_coeff = coeff;
  p.exponent = exponent;
  return p;
}

double DecayProfile::operator()(double t) const {
  if (kind == Kind::constant) return c;
  if (!(t > 0.0)) throw std::domain_error("DecayProfile: power weight needs t > 0");
  return m_coeff * std::pow(t, -exponent);
}

double DecayProfile::weighted_exp_integral(double mu, double T) const {
  if (!(mu > 0.0 && T > 0.0))
    throw std::domain_error("DecayProfile: weighted integral needs mu, T > 0");
  const double x = mu * T;
  if (kind == Kind::constant) return c * -std::expm1(-x);
  // m(s/mu) = m_coeff (s/mu)^-exponent pulls out mu^exponent.
  return m_coeff * std::pow(mu, exponent) *
         lower_incomplete_gamma(1.0 - exponent, x);
}

SemigroupProfile SemigroupProfile::parabolic(double beta) {
  SemigroupProfile p;
  p.mu0 = 0.0;
  p.M = 1.0;
  p.decay = DecayProfile::power(m_beta(beta), beta);
  p.k_plus = [beta](double mu) { return std::pow(mu, beta); };
  p.k_minus = [](double) { return 1.0; };
  return p;
}

SemigroupProfile SemigroupProfile::uniform(double mu0, double M) {
  if (!(mu0 >= 0.0)) throw std::domain_error("SemigroupProfile: mu0 must be nonnegative");
  if (!(M > 0.0)) throw std::domain_error("SemigroupProfile: M must be positive");
  SemigroupProfile p;
  p.mu0 = mu0;
  p.M = M;
  p.decay = DecayProfile::constant(1.0);
  const auto k = [mu0](double mu) { return 1.0 / (1.0 - mu0 / mu); };
  p.k_plus = k;
  p.k_minus = k;
  return p;
}

namespace {

void require_rate(const SemigroupProfile& p, double L, double T, double mu) {
  require(L > 0.0 && T > 0.0, "certificate_rhs: L and T must positive");
  require(mu > p.mu0, "certificate_rhs: mu must exceed the profile threshold mu0");
  require(mu * p.M * T < 1.0, "certificate_rhs: mu must stay below 1/(M T)");
}

}  // namespace

double certificate_rhs(const SemigroupProfile& p, double L, double T, double mu) {
  require_rate(p, L, T, mu);
  const double tail = std::exp(-mu * T) * p.decay(T) +
                      p.decay.weighted_exp_integral(mu, T);
  return T * L * (p.k_plus(mu) / (1.0 - mu * p.M * T) +
                  p.k_minus(mu) / (mu * T) * tail);
}

double certificate_rhs_alt(const SemigroupProfile& p, double L, double T, double mu) {
  require_rate(p, L, T, mu);
  const double w = p.decay.weighted_exp_integral(mu, T);
  return T * L * (p.k_plus(mu) / (1.0 - mu * p.M * T) +
                  p.k_minus(mu) / (mu * T * -std::expm1(-mu * T)) * w);
}

CertificateResult period_certificate(const SemigroupProfile& p, double L,
                                     double T, int mu_grid) {
  require(L > 0.0, "period_certificate: L must be positive");
  require(T > 0.0, "period_certificate: T must be positive");
  require(mu_grid >= 2, "period_certificate: grid needs at least two points");
  CertificateResult out{std::nullopt, kInf, kNaN};
  if (p.mu0 > 0.0 && T >= 1.0 / (p.mu0 * p.M)) return out;  // no admissible mu

  const double span = 1.0 / (p.M * T) - p.mu0;
  const double eps = 1e-9 * span;
  const double lo = p.mu0 + eps, hi = 1.0 / (p.M * T) - eps;
  const double log_lo = std::log(lo), log_hi = std::log(hi);
  for (int i = 0; i < mu_grid; ++i) {
    const double mu =
        std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(i) / (mu_grid - 1));
    const double rhs = certificate_rhs(p, L, T, mu);
    if (rhs < out.rhs_min) {
      out.rhs_min = rhs;
      out.rhs_argmin = mu;
    }
    if (rhs < 1.0 && !out.violated_at) out.violated_at = mu;
  }
  return out;
}

bool comparison_inequality_check(const DecayProfile& m, double mu, double T) {
  require(mu > 0.0 && T > 0.0, "comparison_inequality_check: mu, T > 0 required");
  double lhs;
  if (m.kind == DecayProfile::Kind::power && m.exponent > 0.0) {
    // tau = w^{1/(1-exponent)} removes the endpoint singularity.
    const double a = 1.0 - m.exponent;
    const double inv_a = 1.0 / a;
    lhs = m.m_coeff * inv_a *
          adaptive_simpson(
              [mu, inv_a](double w) { return std::exp(-mu * std::pow(w, inv_a)); },
              0.0, std::pow(T, a), 1e-12);
  } else {
    lhs = adaptive_simpson([&](double tau) { return m(tau == 0.0 ? 1e-300 : tau) *
                                                    std::exp(-mu * tau); },
                           0.0, T, 1e-12);
  }
  const double rhs = m(T) * -std::expm1(-mu * T) / mu;
  return lhs >= rhs - 1e-10 * std::max(1.0, std::abs(rhs));
}

bool comparison_inequality_check(const std::function<double(double)>& m,
                                 double mu, double T) {
  require(mu > 0.0 && T > 0.0, "comparison_inequality_check: mu, T > 0 required");
  const double lhs = adaptive_simpson(
      [&](double tau) { return m(tau) * std::exp(-mu * tau); }, 0.0, T, 1e-12);
  const double rhs = m(T) * -std::expm1(-mu * T) / mu;
  return lhs >= rhs - 1e-10 * std::max(1.0, std::abs(rhs));
}

}  // namespace periodkit::bounds
