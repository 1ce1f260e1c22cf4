#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "oracles.hpp"
#include "periodkit/bounds.hpp"
#include "periodkit/minimize.hpp"
#include "periodkit/quadrature.hpp"

namespace pb = periodkit::bounds;
using doctest::Approx;

namespace {
constexpr double pi = 3.14159265358979323846;
}

TEST_CASE("adaptive simpson on smooth integrands") {
  CHECK(periodkit::adaptive_simpson([](double x) { return x * x; }, 0.0, 1.0) ==
        Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(periodkit::adaptive_simpson([](double x) { return std::sin(x); }, 0.0, pi) ==
        Approx(2.0).epsilon(1e-12));
  CHECK(periodkit::adaptive_simpson([](double) { return 1.0; }, 2.0, 2.0) ==
        Approx(0.0));
  CHECK_THROWS_AS(periodkit::adaptive_simpson([](double x) { return x; }, 1.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("scalar minimizer finds interior minima") {
  const auto r = periodkit::minimize_scalar(
      [](double x) { return (x - 0.3) * (x - 0.3) + 1.5; });
  CHECK(r.x == Approx(0.3).epsilon(1e-9));
  CHECK(r.value == Approx(1.5).epsilon(1e-13));

  // Asymmetric, non-polynomial objective.
  const auto s = periodkit::minimize_scalar(
      [](double x) { return 1.0 / x + 4.0 * x; });  // min at x = 1/2
  CHECK(s.x == Approx(0.5).epsilon(1e-9));
  CHECK(s.value == Approx(4.0).epsilon(1e-12));

  // Unreachable tolerance: the iteration cap fires but the best iterate
  // travels with the exception.
  periodkit::ScalarMinimizerConfig tight;
  tight.abs_tol = 1e-300;
  tight.max_iters = 60;
  try {
    periodkit::minimize_scalar([](double x) { return (x - 0.4) * (x - 0.4); },
                               tight);
    FAIL("expected minimizer_error");
  } catch (const periodkit::minimizer_error& e) {
    CHECK(std::abs(e.best_x - 0.4) < 1e-3);
  }
}

TEST_CASE("ode bounds") {
  const auto r = pb::ode_bounds(3.0);
  CHECK(r.hilbert.lower_bound_T == Approx(2.0 * pi / 3.0).epsilon(1e-15));
  CHECK(r.banach.lower_bound_T == Approx(2.0).epsilon(1e-15));
  CHECK(r.hilbert.method == pb::Method::ode_hilbert);
  CHECK(r.banach.method == pb::Method::ode_banach);
  CHECK_THROWS_AS(pb::ode_bounds(0.0), std::domain_error);
}

TEST_CASE("decay weight coefficient") {
  CHECK(pb::m_beta(0.0) == Approx(1.0).epsilon(1e-15));
  CHECK(pb::m_beta(0.5) == Approx(0.42888194248035340).epsilon(1e-14));
  CHECK(pb::m_beta(1.0 - 1e-9) > 0.36);  // tends to 1/e from above
  for (double b : {0.1, 0.3, 0.6, 0.9})
    CHECK(pb::m_beta(b) == Approx(std::pow(b / std::exp(1.0), b)).epsilon(1e-14));
  CHECK_THROWS_AS(pb::m_beta(-0.1), std::domain_error);
  CHECK_THROWS_AS(pb::m_beta(1.0), std::domain_error);
}

TEST_CASE("incomplete integral matches tanh-sinh quadrature") {
  CHECK(pb::incomplete_integral(0.5, 0.5) ==
        Approx(1.2100356193111089).epsilon(1e-13));
  for (double beta : {0.0, 0.3, 0.7, 0.9})
    for (double eta : {0.05, 0.3, 0.5, 0.9, 0.99}) {
      const double val = pb::incomplete_integral(beta, eta);
      const double ref = oracles::incomplete_gamma(1.0 - beta, eta);
      CHECK(val == Approx(ref).epsilon(1e-11));
    }
  // beta = 0 collapses to 1 - e^{-eta}.
  CHECK(pb::incomplete_integral(0.0, 0.7) ==
        Approx(-std::expm1(-0.7)).epsilon(1e-14));
  CHECK_THROWS_AS(pb::incomplete_integral(1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(pb::incomplete_integral(0.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(pb::incomplete_integral(0.5, 1.0), std::domain_error);
}

TEST_CASE("H and its alternative form") {
  CHECK(pb::parabolic_H(0.5, 0.5) == Approx(2.6683973598525358).epsilon(1e-13));
  CHECK(pb::parabolic_H(0.5, 0.0) == Approx(4.0).epsilon(1e-14));
  CHECK(pb::parabolic_H_alt(0.5, 0.5) == Approx(3.2794763091999194).epsilon(1e-13));
  CHECK(pb::parabolic_H_alt(0.5, 0.0) == Approx(4.0).epsilon(1e-13));

  // The alternative form majorizes H strictly for beta > 0 and collapses
  // onto it at beta = 0.
  for (int i = 1; i < 20; ++i) {
    const double eta = i / 20.0;
    CHECK(pb::parabolic_H_alt(eta, 0.0) ==
          Approx(pb::parabolic_H(eta, 0.0)).epsilon(1e-12));
    for (double beta : {0.1, 0.4, 0.8})
      CHECK(pb::parabolic_H_alt(eta, beta) > pb::parabolic_H(eta, beta));
  }

  // Divergence at the right endpoint.
  CHECK(pb::parabolic_H(0.999, 0.5) > 100.0);
  CHECK_THROWS_AS(pb::parabolic_H(0.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(pb::parabolic_H(1.0, 0.5), std::domain_error);
}

TEST_CASE("K_beta frozen values") {
  const auto k0 = pb::k_beta(0.0);
  CHECK(k0.k_beta == Approx(4.0).epsilon(1e-10));
  CHECK(std::abs(k0.eta_star - 0.5) < 1e-6);

  const auto k25 = pb::k_beta(0.25);
  CHECK(k25.k_beta == Approx(2.8674884880822833).epsilon(1e-10));
  CHECK(std::abs(k25.eta_star - 0.41738195931922150) < 1e-6);

  const auto k50 = pb::k_beta(0.5);
  CHECK(k50.k_beta == Approx(2.5262389031125135).epsilon(1e-10));
  CHECK(std::abs(k50.eta_star - 0.38518214085564635) < 1e-6);

  const auto k75 = pb::k_beta(0.75);
  CHECK(k75.k_beta == Approx(2.8839076692672133).epsilon(1e-10));
  CHECK(std::abs(k75.eta_star - 0.37710285297436) < 1e-6);
}

TEST_CASE("K_beta agrees with a dense grid scan") {
  for (double beta : {0.15, 0.45, 0.85}) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 1; i < 20000; ++i)
      best = std::min(best, pb::parabolic_H(i / 20000.0, beta));
    const auto k = pb::k_beta(beta);
    CHECK(k.k_beta <= best + 1e-12);
    CHECK(k.k_beta == Approx(best).epsilon(1e-8));
  }
}

TEST_CASE("parabolic bound: frozen values and scaling law") {
  CHECK(pb::parabolic_bound({1.0, 0.0}).lower_bound_T ==
        Approx(0.25).epsilon(1e-10));
  CHECK(pb::parabolic_bound({1.0, 0.5}).lower_bound_T ==
        Approx(0.15669356531443625).epsilon(1e-11));
  CHECK(pb::parabolic_bound({2.0, 0.5}).lower_bound_T ==
        Approx(0.039173391328609061).epsilon(1e-11));
  CHECK(pb::parabolic_bound({1.0, 0.25}).lower_bound_T ==
        Approx(0.24546962319084109).epsilon(1e-11));

  // T(L) = T(1) * L^{-1/(1-beta)}.
  for (double beta : {0.0, 0.3, 0.6})
    for (double L : {0.25, 1.5, 7.0}) {
      const double t1 = pb::parabolic_bound({1.0, beta}).lower_bound_T;
      const double tl = pb::parabolic_bound({L, beta}).lower_bound_T;
      CHECK(tl == Approx(t1 * std::pow(L, -1.0 / (1.0 - beta))).epsilon(1e-11));
    }

  const auto r = pb::parabolic_bound({1.0, 0.5});
  CHECK(r.method == pb::Method::parabolic_kbeta);
  CHECK(r.diagnostics.at("K_beta") == Approx(2.5262389031125135).epsilon(1e-10));
  CHECK_THROWS_AS(pb::parabolic_bound({0.0, 0.5}), std::domain_error);
  CHECK_THROWS_AS(pb::parabolic_bound({1.0, 1.0}), std::domain_error);
}

TEST_CASE("closed form and baseline: frozen values and strict ordering") {
  const auto cf = pb::parabolic_closed_form_bound({1.0, 0.5});
  CHECK(cf.diagnostics.at("constant") == Approx(2.7922375423566907).epsilon(1e-13));
  CHECK(cf.lower_bound_T == Approx(0.12826119326194411).epsilon(1e-12));

  const auto bl = pb::parabolic_baseline_bound({1.0, 0.5});
  CHECK(bl.diagnostics.at("constant") == Approx(3.5942154002145064).epsilon(1e-13));
  CHECK(bl.lower_bound_T == Approx(0.077409060873087737).epsilon(1e-12));

  for (int i = 1; i <= 19; ++i) {
    const double beta = i / 20.0;
    const double kb = pb::k_beta(beta).k_beta;
    const double c_cf =
        pb::parabolic_closed_form_bound({1.0, beta}).diagnostics.at("constant");
    const double c_bl =
        pb::parabolic_baseline_bound({1.0, beta}).diagnostics.at("constant");
    CHECK(kb < c_cf);
    CHECK(c_cf < c_bl);
    // Smaller constant means a larger (better) lower bound.
    CHECK(pb::parabolic_bound({1.0, beta}).lower_bound_T >
          pb::parabolic_closed_form_bound({1.0, beta}).lower_bound_T);
    CHECK(pb::parabolic_closed_form_bound({1.0, beta}).lower_bound_T >
          pb::parabolic_baseline_bound({1.0, beta}).lower_bound_T);
  }

  CHECK_THROWS_AS(pb::parabolic_closed_form_bound({1.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(pb::parabolic_baseline_bound({1.0, 0.0}), std::domain_error);
}

TEST_CASE("uniform profile bound") {
  const auto r = pb::uniform_profile_bound(1.0, 1.0, 1.0);
  CHECK(r.lower_bound_T == Approx(0.17157287525380990).epsilon(1e-14));
  CHECK(r.diagnostics.at("C") == Approx(2.0).epsilon(1e-15));
  CHECK(r.diagnostics.at("G0") ==
        Approx((1.0 + std::sqrt(2.0)) * (1.0 + std::sqrt(2.0))).epsilon(1e-14));
  CHECK(r.lower_bound_T * r.diagnostics.at("G0") == Approx(1.0).epsilon(1e-14));

  // mu0 = 0, M = 1 collapses to 1/(4L).
  CHECK(pb::uniform_profile_bound(2.0, 0.0, 1.0).lower_bound_T ==
        Approx(0.125).epsilon(1e-14));

  // eta0 lies in (0, 1) and optimizes the rate split.
  CHECK(r.diagnostics.at("eta0") > 0.0);
  CHECK(r.diagnostics.at("eta0") < 1.0);

  CHECK_THROWS_AS(pb::uniform_profile_bound(0.0, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(pb::uniform_profile_bound(1.0, -1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(pb::uniform_profile_bound(1.0, 1.0, 0.0), std::domain_error);
}

TEST_CASE("hyperbolic bound is the uniform-profile composition") {
  const auto r = pb::hyperbolic_bound({1.0, 2.0});
  CHECK(r.lower_bound_T == Approx(0.097817079058734866).epsilon(1e-13));
  CHECK(r.method == pb::Method::hyperbolic);
  CHECK(r.diagnostics.at("alpha") == Approx(2.0));

  for (double L : {0.3, 1.0, 4.0, 20.0})
    for (double alpha : {0.2, 1.0, 3.0, 11.0}) {
      const double direct = pb::hyperbolic_bound({L, alpha}).lower_bound_T;
      const double composed =
          pb::uniform_profile_bound(L, 2.0 / alpha, 1.0 + std::sqrt(2.0))
              .lower_bound_T;
      CHECK(direct == Approx(composed).epsilon(1e-15));
    }

  // Monotonicity sanity: stronger damping (larger alpha) weakens mu0 and
  // improves the bound.
  CHECK(pb::hyperbolic_bound({1.0, 4.0}).lower_bound_T >
        pb::hyperbolic_bound({1.0, 1.0}).lower_bound_T);

  CHECK_THROWS_AS(pb::hyperbolic_bound({1.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(pb::hyperbolic_bound({0.0, 1.0}), std::domain_error);
}

TEST_CASE("decay profiles and their weighted integrals") {
  const auto c = pb::DecayProfile::constant(2.5);
  CHECK(c(0.1) == Approx(2.5));
  CHECK(c(10.0) == Approx(2.5));
  CHECK(c.weighted_exp_integral(0.7, 2.0) ==
        Approx(2.5 * -std::expm1(-1.4)).epsilon(1e-14));

  const auto p = pb::DecayProfile::power(3.0, 0.5);
  CHECK(p(4.0) == Approx(1.5).epsilon(1e-15));

  // Weighted integral against an independent quadrature, including ranges
  // that exercise both the series and the quadrature fallback internally.
  for (double beta : {0.1, 0.5, 0.9})
    for (double mu : {0.5, 2.0})
      for (double T : {0.4, 3.0}) {
        const auto prof = pb::DecayProfile::power(pb::m_beta(beta), beta);
        const double val = prof.weighted_exp_integral(mu, T);
        const double ref = oracles::integrate(
            [&](double s) { return prof(s / mu) * std::exp(-s); }, 0.0, mu * T);
        CHECK(val == Approx(ref).epsilon(1e-10));
      }

  CHECK_THROWS_AS(pb::DecayProfile::constant(0.0), std::domain_error);
  CHECK_THROWS_AS(pb::DecayProfile::power(1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(pb::DecayProfile::power(0.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(p(0.0), std::domain_error);
  CHECK_THROWS_AS(p.weighted_exp_integral(0.0, 1.0), std::domain_error);
}

TEST_CASE("semigroup profiles") {
  const auto par = pb::SemigroupProfile::parabolic(0.5);
  CHECK(par.mu0 == 0.0);
  CHECK(par.M == 1.0);
  CHECK(par.k_plus(4.0) == Approx(2.0).epsilon(1e-15));
  CHECK(par.k_minus(4.0) == Approx(1.0));
  CHECK(par.decay(1.0) == Approx(pb::m_beta(0.5)).epsilon(1e-15));

  const auto uni = pb::SemigroupProfile::uniform(2.0, 3.0);
  CHECK(uni.k_plus(4.0) == Approx(2.0).epsilon(1e-15));  // (1 - 2/4)^-1
  CHECK(uni.k_minus(8.0) == Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(uni.decay(5.0) == Approx(1.0));
  CHECK_THROWS_AS(pb::SemigroupProfile::uniform(-1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(pb::SemigroupProfile::uniform(0.0, 0.0), std::domain_error);
}

TEST_CASE("certificate right-hand side: analytic-profile identity") {
  // For the analytic-scale profile the certificate reduces to
  // T^{1-beta} L H(mu T); this ties the abstract machinery to the parabolic
  // optimization and underpins the bound bracketing below.
  for (double beta : {0.0, 0.25, 0.5, 0.75})
    for (double L : {0.5, 2.0})
      for (double T : {0.1, 0.5})
        for (double frac : {0.1, 0.5, 0.9}) {
          const double mu = frac / T;
          const auto prof = pb::SemigroupProfile::parabolic(beta);
          const double rhs = pb::certificate_rhs(prof, L, T, mu);
          const double ref =
              std::pow(T, 1.0 - beta) * L * pb::parabolic_H(mu * T, beta);
          CHECK(rhs == Approx(ref).epsilon(1e-12));
        }
}

TEST_CASE("alternative rhs dominates for nonincreasing weights") {
  for (double beta : {0.0, 0.3, 0.7})
    for (double T : {0.2, 0.8})
      for (double frac : {0.2, 0.6, 0.95}) {
        const auto prof = beta == 0.0
                              ? pb::SemigroupProfile::uniform(0.0, 1.0)
                              : pb::SemigroupProfile::parabolic(beta);
        const double mu = frac / T;
        const double base = pb::certificate_rhs(prof, 1.0, T, mu);
        const double alt = pb::certificate_rhs_alt(prof, 1.0, T, mu);
        CHECK(alt >= base * (1.0 - 1e-12));
        if (prof.decay.kind == pb::DecayProfile::Kind::constant)
          CHECK(alt == Approx(base).epsilon(1e-12));  // equality for constant m
      }

  const auto prof = pb::SemigroupProfile::parabolic(0.5);
  CHECK_THROWS_AS(pb::certificate_rhs(prof, 1.0, 1.0, 1.5), std::domain_error);
  CHECK_THROWS_AS(pb::certificate_rhs(prof, 1.0, 1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(pb::certificate_rhs(prof, 0.0, 1.0, 0.5), std::domain_error);
}

TEST_CASE("period certificate brackets the optimized parabolic bound") {
  for (double beta : {0.0, 0.25, 0.5, 0.75}) {
    const double bound = pb::parabolic_bound({1.0, beta}).lower_bound_T;
    const auto prof = pb::SemigroupProfile::parabolic(beta);

    const auto low = pb::period_certificate(prof, 1.0, 0.8 * bound);
    CHECK(low.certified());
    CHECK(low.rhs_min == Approx(std::pow(0.8, 1.0 - beta)).epsilon(1e-4));
    // The reported violation rate really violates.
    CHECK(pb::certificate_rhs(prof, 1.0, 0.8 * bound, *low.violated_at) < 1.0);

    const auto high = pb::period_certificate(prof, 1.0, 1.2 * bound);
    CHECK(!high.certified());
    CHECK(high.rhs_min == Approx(std::pow(1.2, 1.0 - beta)).epsilon(1e-4));
    CHECK(high.rhs_min >= 1.0);
  }
}

TEST_CASE("period certificate: trivial branch and argument checks") {
  const auto prof = pb::SemigroupProfile::uniform(2.0, 1.0);
  const auto trivial = pb::period_certificate(prof, 1.0, 0.6);  // T >= 1/(mu0 M)
  CHECK(!trivial.certified());
  CHECK(std::isinf(trivial.rhs_min));
  CHECK(std::isnan(trivial.rhs_argmin));

  const auto scanned = pb::period_certificate(prof, 1.0, 0.4);
  CHECK(std::isfinite(scanned.rhs_min));
  CHECK(scanned.rhs_argmin > 2.0);
  CHECK(scanned.rhs_argmin < 1.0 / 0.4);

  CHECK_THROWS_AS(pb::period_certificate(prof, 0.0, 0.4), std::domain_error);
  CHECK_THROWS_AS(pb::period_certificate(prof, 1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(pb::period_certificate(prof, 1.0, 0.4, 1), std::domain_error);
}

TEST_CASE("comparison inequality for nonincreasing weights") {
  CHECK(pb::comparison_inequality_check(pb::DecayProfile::constant(1.5), 0.7, 2.0));
  for (double beta : {0.1, 0.5, 0.9})
    for (double mu : {0.5, 2.0})
      for (double T : {1.0, 3.0})
        CHECK(pb::comparison_inequality_check(
            pb::DecayProfile::power(pb::m_beta(beta), beta), mu, T));

  // Generic nonincreasing weight through the function overload.
  CHECK(pb::comparison_inequality_check(
      [](double t) { return std::exp(-t); }, 1.0, 2.0));
  // An increasing weight must violate the comparison.
  CHECK(!pb::comparison_inequality_check([](double t) { return t; }, 1.0, 5.0));

  CHECK_THROWS_AS(
      pb::comparison_inequality_check(pb::DecayProfile::constant(1.0), 0.0, 1.0),
      std::domain_error);
}
