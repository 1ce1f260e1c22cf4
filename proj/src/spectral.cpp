#include "periodkit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace periodkit::spectral {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::domain_error(msg);
}

bool is_degenerate(double lambda, double alpha) {
  const double crit = critical_lambda(alpha);
  return std::abs(lambda - crit) <= degeneracy_rel_tol * crit;
}

}  // namespace

void validate(const ModeSystem& ms) {
  if (!(ms.alpha > 0.0))
    throw std::invalid_argument("mode system: alpha must be positive");
  if (ms.lambdas.empty())
    throw std::invalid_argument("mode system: at least one eigenvalue required");
  for (std::size_t k = 0; k < ms.lambdas.size(); ++k) {
    if (!(ms.lambdas[k] > 0.0))
      throw std::invalid_argument("mode system: eigenvalues must be positive");
    if (k > 0 && ms.lambdas[k] < ms.lambdas[k - 1])
      throw std::invalid_argument("mode system: eigenvalues must be nondecreasing");
  }
}

XiPair xi_pair(double lambda, double alpha) {
  require(lambda > 0.0, "xi_pair: lambda must be positive");
  require(alpha > 0.0, "xi_pair: alpha must be positive");
  XiPair out;
  out.lambda = lambda;
  if (is_degenerate(lambda, alpha)) {
    const double xi = -0.5 * alpha * lambda;
    out.xi_minus = out.xi_plus = xi;
    out.branch = RootBranch::double_root;
    return out;
  }
  const double disc = alpha * lambda * alpha * lambda - 4.0 * lambda;
  if (lambda > critical_lambda(alpha)) {
    // Fast root by direct formula (no cancellation: both terms negative),
    // slow root from the product xi_minus * xi_plus = lambda.
    const double xm = 0.5 * (-alpha * lambda - std::sqrt(disc));
    out.xi_minus = xm;
    out.xi_plus = lambda / xm;
    out.branch = RootBranch::real_distinct;
  } else {
    const double re = -0.5 * alpha * lambda;
    const double im = 0.5 * std::sqrt(-disc);
    out.xi_minus = complexd(re, -im);
    out.xi_plus = complexd(re, im);
    out.branch = RootBranch::complex_conjugate;
  }
  return out;
}

complexd s_map(complexd xi, double alpha) {
  require(alpha > 0.0, "s_map: alpha must be positive");
  const complexd denom = 1.0 + alpha * xi;
  require(std::abs(denom) > 1e-15 * (1.0 + std::abs(alpha * xi)),
          "s_map: singular at xi = -1/alpha");
  return -xi * xi / denom;
}

double unit_sphere_linear_max(complexd z) { return std::hypot(1.0, std::abs(z)); }

double unit_sphere_quadratic_max(complexd z) {
  const double az = std::abs(z);
  const double root = az + std::hypot(1.0, az);
  return root * root;
}

Mat2c mode_block(double lambda, double alpha) {
  require(lambda > 0.0, "mode_block: lambda must be positive");
  require(alpha > 0.0, "mode_block: alpha must be positive");
  return {0.0, 1.0, -lambda, -alpha * lambda};
}

Mat2c block_exponential(double lambda, double alpha, double t) {
  const XiPair xi = xi_pair(lambda, alpha);
  const Mat2c a = mode_block(lambda, alpha);
  if (xi.branch == RootBranch::double_root) {
    const complexd e = std::exp(xi.xi_minus * t);
    // exp(tA) = e^{xi t} (I + t (A - xi I)) on the Jordan block.
    return {e * (1.0 + t * (a.a - xi.xi_minus)), e * (t * a.b),
            e * (t * a.c), e * (1.0 + t * (a.d - xi.xi_minus))};
  }
  const complexd e1 = std::exp(xi.xi_minus * t);
  const complexd e2 = std::exp(xi.xi_plus * t);
  const complexd d = xi.xi_minus - xi.xi_plus;
  // exp(tA) = [e1 (A - xi2 I) - e2 (A - xi1 I)] / (xi1 - xi2).
  return {(e1 * (a.a - xi.xi_plus) - e2 * (a.a - xi.xi_minus)) / d,
          (e1 - e2) * a.b / d,
          (e1 - e2) * a.c / d,
          (e1 * (a.d - xi.xi_plus) - e2 * (a.d - xi.xi_minus)) / d};
}

double weighted_block_norm(const Mat2c& m, double lambda) {
  require(lambda > 0.0, "weighted_block_norm: lambda must be positive");
  const double s = std::sqrt(lambda);
  // Similarity by diag(sqrt(lambda), 1) turns the weighted norm into the
  // Euclidean operator norm of W; for 2x2, sigma_max follows from the
  // Frobenius norm and the (similarity-invariant) determinant.
  const complexd wa = m.a, wb = s * m.b, wc = m.c / s, wd = m.d;
  const double frob2 =
      std::norm(wa) + std::norm(wb) + std::norm(wc) + std::norm(wd);
  const double det2 = std::norm(m.a * m.d - m.b * m.c);
  const double disc = std::max(0.0, frob2 * frob2 - 4.0 * det2);
  return std::sqrt(0.5 * (frob2 + std::sqrt(disc)));
}

complexd ProjectionInfo::coeff_minus(complexd u, complexd v) const {
  return (roots.xi_plus * u - v) / (roots.xi_plus - roots.xi_minus);
}

complexd ProjectionInfo::coeff_plus(complexd u, complexd v) const {
  return (roots.xi_minus * u - v) / (roots.xi_minus - roots.xi_plus);
}

Mat2c ProjectionInfo::matrix_minus() const {
  const complexd d = roots.xi_plus - roots.xi_minus;
  // (u, v) |-> coeff_minus(u, v) * (1, xi_minus).
  return {roots.xi_plus / d, -1.0 / d,
          roots.xi_minus * roots.xi_plus / d, -roots.xi_minus / d};
}

Mat2c ProjectionInfo::matrix_plus() const {
  const complexd d = roots.xi_plus - roots.xi_minus;
  return {-roots.xi_minus / d, 1.0 / d,
          -roots.xi_minus * roots.xi_plus / d, roots.xi_plus / d};
}

ProjectionInfo projection_norm(double lambda, double alpha) {
  const XiPair xi = xi_pair(lambda, alpha);
  require(xi.branch != RootBranch::double_root,
          "projection_norm: projections are unbounded at the degenerate mode");
  const double crit = critical_lambda(alpha);
  ProjectionInfo out;
  out.roots = xi;
  out.norm = (lambda > crit) ? 1.0 / std::sqrt(1.0 - crit / lambda)
                             : 1.0 / std::sqrt(1.0 - lambda / crit);
  out.eigvec_norm_minus = std::sqrt(lambda + std::norm(xi.xi_minus));
  out.eigvec_norm_plus = std::sqrt(lambda + std::norm(xi.xi_plus));
  return out;
}

namespace {

// Smallest power-of-two theta count whose (n+1) x 4n angle grid reaches the
// requested sample budget. Power-of-two counts make successive grids nested,
// so enlarging `samples` can only increase the scanned maximum.
long theta_intervals(long samples) {
  if (samples <= 0)
    throw std::invalid_argument("brute force scan: samples must be positive");
  long n = 8;
  while ((n + 1) * (4 * n) < samples && n < (1L << 20)) n *= 2;
  return n;
}

constexpr double pi = 3.14159265358979323846;

// Scans the weighted unit sphere of one mode: u = e^{i phi} cos(theta)/sqrt(lambda),
// v = sin(theta). The overall complex phase is factored out, so two angles
// parameterize all norm-relevant states.
template <typename F>
double sphere_scan(double lambda, long samples, F&& value) {
  const long n = theta_intervals(samples);
  const double inv_sqrt_lambda = 1.0 / std::sqrt(lambda);
  double best = 0.0;
  for (long i = 0; i <= n; ++i) {
    const double theta = 0.5 * pi * static_cast<double>(i) / static_cast<double>(n);
    const double umag = std::cos(theta) * inv_sqrt_lambda;
    const double v = std::sin(theta);
    for (long j = 0; j < 4 * n; ++j) {
      const double phi = 2.0 * pi * static_cast<double>(j) / static_cast<double>(4 * n);
      const complexd u = std::polar(umag, phi);
      best = std::max(best, value(u, v));
    }
  }
  return best;
}

}  // namespace

double brute_force_projection_norm(double lambda, double alpha, long samples) {
  const ProjectionInfo info = projection_norm(lambda, alpha);
  return sphere_scan(lambda, samples, [&](complexd u, double v) {
    const double vm = std::abs(info.coeff_minus(u, v)) * info.eigvec_norm_minus;
    const double vp = std::abs(info.coeff_plus(u, v)) * info.eigvec_norm_plus;
    return std::max(vm, vp);
  });
}

double block_operator_norm(double lambda, double alpha) {
  require(lambda > 0.0, "block_operator_norm: lambda must be positive");
  require(alpha > 0.0, "block_operator_norm: alpha must be positive");
  const double r = critical_lambda(alpha) / lambda;
  return critical_rate(alpha) * (1.0 + std::sqrt(1.0 + r)) / r;
}

double brute_force_block_norm(double lambda, double alpha, long samples) {
  require(alpha > 0.0, "brute_force_block_norm: alpha must be positive");
  require(lambda > 0.0, "brute_force_block_norm: lambda must be positive");
  return sphere_scan(lambda, samples, [&](complexd u, double v) {
    // Image of (u, v) is (v, -lambda(u + alpha v)); weighted square norm.
    const double img2 =
        lambda * v * v + lambda * lambda * std::norm(u + alpha * v);
    return std::sqrt(img2);
  });
}

MuDecomposition mu_decomposition(const ModeSystem& ms, double mu) {
  validate(ms);
  require(mu > critical_rate(ms.alpha),
          "mu_decomposition: rate must exceed 2/alpha");
  MuDecomposition dec;
  dec.mu = mu;
  for (std::size_t k = 0; k < ms.lambdas.size(); ++k) {
    const XiPair xi = xi_pair(ms.lambdas[k], ms.alpha);
    switch (xi.branch) {
      case RootBranch::double_root:
        dec.degenerate.push_back(k);
        break;
      case RootBranch::complex_conjugate:
        dec.slow_complex.push_back(k);
        break;
      case RootBranch::real_distinct:
        if (xi.xi_minus.real() <= -mu)
          dec.stable.push_back(k);
        else
          dec.slow_real.push_back(k);
        break;
    }
  }
  return dec;
}

complexd x_inner(const ModeSystem& ms, const BlockVector& a, const BlockVector& b) {
  const std::size_t n = ms.lambdas.size();
  if (a.u.size() != n || a.v.size() != n || b.u.size() != n || b.v.size() != n)
    throw std::invalid_argument("x_inner: vector size must match the mode count");
  complexd sum = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    sum += ms.lambdas[k] * a.u[k] * std::conj(b.u[k]) + a.v[k] * std::conj(b.v[k]);
  return sum;
}

double x_norm(const ModeSystem& ms, const BlockVector& z) {
  return std::sqrt(std::max(0.0, x_inner(ms, z, z).real()));
}

BlockVector apply_block_operator(const ModeSystem& ms, const BlockVector& z) {
  const std::size_t n = ms.lambdas.size();
  if (z.u.size() != n || z.v.size() != n)
    throw std::invalid_argument(
        "apply_block_operator: vector size must match the mode count");
  BlockVector out;
  out.u.resize(n);
  out.v.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.u[k] = z.v[k];
    out.v[k] = -ms.lambdas[k] * (z.u[k] + ms.alpha * z.v[k]);
  }
  return out;
}

SplitProjectionNorms split_projection_norms(const ModeSystem& ms, double mu) {
  const MuDecomposition dec = mu_decomposition(ms, mu);
  SplitProjectionNorms out;
  out.bound = 1.0 / (1.0 - critical_rate(ms.alpha) / mu);
  out.norm_stable = 0.0;
  // Complement acts as the identity on every mode outside the stable set.
  out.norm_slow = (dec.stable.size() == ms.lambdas.size()) ? 0.0 : 1.0;
  for (std::size_t k : dec.stable) {
    const ProjectionInfo info = projection_norm(ms.lambdas[k], ms.alpha);
    out.norm_stable = std::max(
        out.norm_stable, weighted_block_norm(info.matrix_minus(), ms.lambdas[k]));
    out.norm_slow = std::max(
        out.norm_slow, weighted_block_norm(info.matrix_plus(), ms.lambdas[k]));
  }
  if (out.norm_stable > out.bound * (1.0 + 1e-9) ||
      out.norm_slow > out.bound * (1.0 + 1e-9))
    throw std::logic_error("split_projection_norms: norm exceeds its bound");
  return out;
}

SlowOperatorNorm slow_operator_norm(const ModeSystem& ms, double mu) {
  const MuDecomposition dec = mu_decomposition(ms, mu);
  SlowOperatorNorm out;
  out.bound = mu * (1.0 + std::sqrt(2.0));
  out.norm = 0.0;
  // On the xi_plus eigenline of a stable mode the generator is scalar.
  for (std::size_t k : dec.stable) {
    const XiPair xi = xi_pair(ms.lambdas[k], ms.alpha);
    out.norm = std::max(out.norm, std::abs(xi.xi_plus));
  }
  auto full_block = [&](const std::vector<std::size_t>& idx) {
    for (std::size_t k : idx)
      out.norm = std::max(out.norm, block_operator_norm(ms.lambdas[k], ms.alpha));
  };
  full_block(dec.degenerate);
  full_block(dec.slow_real);
  full_block(dec.slow_complex);
  if (out.norm > out.bound * (1.0 + 1e-9))
    throw std::logic_error("slow_operator_norm: norm exceeds its bound");
  return out;
}

bool semigroup_decay_check(const ModeSystem& ms, const MuDecomposition& dec,
                           const std::vector<double>& t_grid, unsigned seed) {
  validate(ms);
  const double mu = dec.mu;
  require(mu > 0.0, "semigroup_decay_check: rate must be positive");
  require(!dec.stable.empty(), "semigroup_decay_check: stable set is empty");
  for (double t : t_grid)
    require(t >= 0.0, "semigroup_decay_check: time grid must be nonnegative");
  for (std::size_t k : dec.stable)
    require(k < ms.lambdas.size(), "semigroup_decay_check: mode index out of range");

  std::vector<complexd> xi_fast(dec.stable.size());
  for (std::size_t i = 0; i < dec.stable.size(); ++i) {
    const XiPair xi = xi_pair(ms.lambdas[dec.stable[i]], ms.alpha);
    xi_fast[i] = xi.xi_minus;
    if (xi.xi_minus.real() > -mu * (1.0 - 1e-12)) return false;
    for (double t : t_grid)
      if (std::abs(std::exp(xi.xi_minus * t)) >
          std::exp(-mu * t) * (1.0 + 1e-12))
        return false;
  }

  // Quadratic form on random unit combinations of stable eigenvectors.
  std::mt19937 gen(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::size_t n = ms.lambdas.size();
  for (int draw = 0; draw < 32; ++draw) {
    BlockVector z;
    z.u.assign(n, 0.0);
    z.v.assign(n, 0.0);
    for (std::size_t i = 0; i < dec.stable.size(); ++i) {
      const complexd c(gauss(gen), gauss(gen));
      z.u[dec.stable[i]] += c;
      z.v[dec.stable[i]] += c * xi_fast[i];
    }
    const double nrm2 = x_inner(ms, z, z).real();
    if (nrm2 < 1e-24) continue;
    const double q = x_inner(ms, apply_block_operator(ms, z), z).real();
    if (q > -mu * nrm2 * (1.0 - 1e-10)) return false;
  }
  return true;
}

bool semigroup_decay_check(const ModeSystem& ms, double mu,
                           const std::vector<double>& t_grid, unsigned seed) {
  return semigroup_decay_check(ms, mu_decomposition(ms, mu), t_grid, seed);
}

}  // namespace periodkit::spectral
