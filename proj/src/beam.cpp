#include "periodkit/beam.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "periodkit/bounds.hpp"

namespace periodkit::beam {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::domain_error(msg);
}

constexpr double pi = 3.14159265358979323846;

void validate(const BeamProblem& p) {
  require(p.length_l > 0.0, "beam: length must be positive");
  require(p.alpha > 0.0, "beam: alpha must be positive");
  require(p.beta_damp >= 0.0, "beam: feedback bound must be nonnegative");
  require(p.lipschitz_h >= 0.0, "beam: Lipschitz constant must be nonnegative");
  require(p.n_modes >= 1, "beam: at least one mode required");
}

std::vector<double> beam_lambdas(const BeamProblem& p) {
  std::vector<double> lams(p.n_modes);
  if (p.boundary == Boundary::hinged) {
    for (int k = 1; k <= p.n_modes; ++k) {
      const double kap = static_cast<double>(k) * pi / p.length_l;
      lams[k - 1] = kap * kap * kap * kap;
    }
  } else {
    const std::vector<double> kaps = clamped_kappas(p.length_l, p.n_modes);
    for (int k = 0; k < p.n_modes; ++k)
      lams[k] = kaps[k] * kaps[k] * kaps[k] * kaps[k];
  }
  return lams;
}

}  // namespace

std::vector<double> clamped_kappas(double length_l, int n_modes) {
  require(length_l > 0.0, "beam: length must be positive");
  require(n_modes >= 1, "beam: at least one mode required");
  // cos(x) cosh(x) = 1 rewritten as cos(x) - sech(x) = 0 to avoid overflow;
  // the sign of cos(k pi) - sech(k pi) alternates with k, so each window
  // (k pi, (k+1) pi) brackets exactly one root.
  auto g = [](double x) { return std::cos(x) - 1.0 / std::cosh(x); };
  std::vector<double> out(n_modes);
  for (int k = 1; k <= n_modes; ++k) {
    double a = static_cast<double>(k) * pi;
    double b = a + pi;
    double ga = g(a);
    for (int it = 0; it < 200 && (b - a) > 1e-13 * b; ++it) {
      const double m = 0.5 * (a + b);
      const double gm = g(m);
      if ((ga <= 0.0) == (gm <= 0.0)) {
        a = m;
        ga = gm;
      } else {
        b = m;
      }
    }
    out[k - 1] = 0.5 * (a + b) / length_l;
  }
  return out;
}

BeamSetup beam_setup(const BeamProblem& p) {
  validate(p);
  BeamSetup s;
  s.lambdas = beam_lambdas(p);
  const double l1 = s.lambdas.front();
  const double grad_gain = std::pow(l1, -0.25) + std::pow(l1, -0.5);
  s.l_tilde = std::sqrt(2.0) * std::max(p.lipschitz_h * (1.0 + grad_gain),
                                        p.lipschitz_h + p.beta_damp);
  require(s.l_tilde > 0.0,
          "beam: no forcing present (zero Lipschitz constant and feedback)");
  s.bound = bounds::hyperbolic_bound({s.l_tilde, p.alpha}).lower_bound_T;
  return s;
}

std::vector<double> fd_eigenvalues(double length_l, Boundary b, int grid_n,
                                   int n_modes) {
  require(length_l > 0.0, "beam: length must be positive");
  require(n_modes >= 1, "beam: at least one mode required");
  require(grid_n >= n_modes + 4, "beam: grid too coarse for requested modes");
  const lapack_int n = grid_n - 1;  // interior nodes
  const double h = length_l / grid_n;
  const double h4 = h * h * h * h;
  // Pentadiagonal stencil [1 -4 6 -4 1]/h^4. The endpoint rows fold in the
  // ghost node: u_{-1} = -u_1 (hinged, zero curvature) gives diagonal 5/h^4,
  // u_{-1} = u_1 (clamped, zero slope) gives 7/h^4.
  const double end_diag = (b == Boundary::hinged ? 5.0 : 7.0) / h4;
  const lapack_int kd = 2, ldab = 3;
  std::vector<double> ab(static_cast<std::size_t>(ldab) * n, 0.0);
  for (lapack_int j = 0; j < n; ++j) {
    ab[static_cast<std::size_t>(j) * ldab + 0] =
        (j == 0 || j == n - 1) ? end_diag : 6.0 / h4;
    if (j + 1 < n) ab[static_cast<std::size_t>(j) * ldab + 1] = -4.0 / h4;
    if (j + 2 < n) ab[static_cast<std::size_t>(j) * ldab + 2] = 1.0 / h4;
  }
  std::vector<double> w(n);
  const lapack_int info = LAPACKE_dsbev(LAPACK_COL_MAJOR, 'N', 'L', n, kd,
                                        ab.data(), ldab, w.data(), nullptr, 1);
  if (info != 0)
    throw std::runtime_error("beam: banded eigenvalue solve failed, info=" +
                             std::to_string(info));
  w.resize(std::min<std::size_t>(w.size(), static_cast<std::size_t>(n_modes)));
  require(static_cast<int>(w.size()) == n_modes,
          "beam: grid has fewer interior nodes than requested modes");
  return w;
}

LipschitzCheckReport beam_lipschitz_check(const BeamProblem& p, int draws,
                                          unsigned seed) {
  validate(p);
  require(p.boundary == Boundary::hinged,
          "beam: the Lipschitz harness needs the closed modal basis of hinged ends");
  require(draws >= 1, "beam: at least one draw required");
  const BeamSetup setup = beam_setup(p);
  const int n = p.n_modes;
  const double lh = p.lipschitz_h;

  // Worst-case admissible nonlinearity at full budget:
  //   f(z) = (L/2) (u + u_x - A^{1/2} u + v) - beta v.
  // Against the normalized sine basis, the u_x term produces cosine modes;
  // the cross Gram <s_j, c_k> = 4j / (pi (j^2 - k^2)) for j+k odd, else 0.
  std::vector<double> lam(setup.lambdas.begin(), setup.lambdas.end());
  std::vector<std::vector<double>> gram(n, std::vector<double>(n, 0.0));
  for (int j = 1; j <= n; ++j)
    for (int k = 1; k <= n; ++k)
      if ((j + k) % 2 == 1)
        gram[j - 1][k - 1] =
            4.0 * j / (pi * (static_cast<double>(j) * j - static_cast<double>(k) * k));

  std::mt19937 gen(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> da(n), db(n), sig(n), gam(n);
  double max_ratio = 0.0;
  for (int d = 0; d < draws; ++d) {
    double dz2 = 0.0;
    for (int k = 0; k < n; ++k) {
      da[k] = gauss(gen);
      db[k] = gauss(gen);
      dz2 += lam[k] * da[k] * da[k] + db[k] * db[k];
    }
    if (dz2 < 1e-24) continue;
    double df2 = 0.0;
    for (int k = 0; k < n; ++k) {
      sig[k] = 0.5 * lh * (da[k] + db[k] - std::sqrt(lam[k]) * da[k]) -
               p.beta_damp * db[k];
      gam[k] = 0.5 * lh * std::pow(lam[k], 0.25) * da[k];
      df2 += sig[k] * sig[k] + gam[k] * gam[k];
    }
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        df2 += 2.0 * sig[j] * gram[j][k] * gam[k];
    max_ratio = std::max(max_ratio, std::sqrt(std::max(0.0, df2) / dz2));
  }

  LipschitzCheckReport rep;
  rep.max_ratio = max_ratio;
  rep.l_tilde = setup.l_tilde;
  rep.pass = max_ratio <= setup.l_tilde * (1.0 + 1e-12);
  return rep;
}

}  // namespace periodkit::beam
