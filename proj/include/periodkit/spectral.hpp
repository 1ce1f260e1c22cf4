#pragma once

#include <complex>
#include <cstddef>
#include <vector>

// Spectral calculus of the damped block operator (u, v) |-> (v, -A(u + alpha v))
// on finite mode systems: per-mode characteristic roots, spectral projections
// with exact weighted norms, and the rate-mu splitting into a stable part that
// decays like e^{-mu t} and a slow part with generator norm <= mu (1 + sqrt 2).
namespace periodkit::spectral {

using complexd = std::complex<double>;

// Diagonalized fourth-order (or any self-adjoint positive) operator A:
// eigenvalues lambdas, listed nondecreasing, with damping coefficient alpha.
// State (u, v) carries the weighted norm sum_k lambda_k |u_k|^2 + |v_k|^2.
struct ModeSystem {
  double alpha = 1.0;
  std::vector<double> lambdas;
};

void validate(const ModeSystem& ms);  // throws std::invalid_argument

// Rate and eigenvalue where the per-mode roots collide.
inline double critical_rate(double alpha) { return 2.0 / alpha; }
inline double critical_lambda(double alpha) {
  return critical_rate(alpha) * critical_rate(alpha);
}

// Modes within this relative distance of critical_lambda are treated as
// degenerate (double root).
inline constexpr double degeneracy_rel_tol = 1e-9;

enum class RootBranch { real_distinct, complex_conjugate, double_root };

// Roots of xi^2 + alpha lambda xi + lambda = 0. Real branch: xi_minus is the
// fast root (computed cancellation-free), xi_plus = lambda / xi_minus, and
// xi_minus < -2/alpha < xi_plus < -1/alpha. Complex branch: conjugate pair
// with real part -alpha lambda / 2; xi_minus carries the negative imaginary
// part.
struct XiPair {
  double lambda;
  complexd xi_minus;
  complexd xi_plus;
  RootBranch branch;
};
XiPair xi_pair(double lambda, double alpha);

// Inverse of the root map: s(xi) = -xi^2 / (1 + alpha xi), so s(xi_pm) = lambda.
// Throws on the singularity xi = -1/alpha.
complexd s_map(complexd xi, double alpha);

// max{|z z1 + z2| : |z1|^2 + |z2|^2 = 1} = sqrt(1 + |z|^2).
double unit_sphere_linear_max(complexd z);
// max{|z1|^2 + |2 z z1 + z2|^2 : |z1|^2 + |z2|^2 = 1} = (|z| + sqrt(1+|z|^2))^2.
double unit_sphere_quadratic_max(complexd z);

// 2x2 complex block [[a, b], [c, d]] acting on one mode pair (u, v).
struct Mat2c {
  complexd a, b, c, d;
  Mat2c operator*(const Mat2c& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d,
            c * o.a + d * o.c, c * o.b + d * o.d};
  }
  void apply(complexd& u, complexd& v) const {
    const complexd nu = a * u + b * v, nv = c * u + d * v;
    u = nu;
    v = nv;
  }
};

// The per-mode generator block [[0, 1], [-lambda, -alpha lambda]].
Mat2c mode_block(double lambda, double alpha);

// exp(t * mode_block), closed form from the roots (Jordan form when they
// collide within degeneracy_rel_tol).
Mat2c block_exponential(double lambda, double alpha, double t);

// Largest singular value of diag(sqrt(lambda), 1) M diag(1/sqrt(lambda), 1),
// i.e. the operator norm of the block in the weighted mode norm.
double weighted_block_norm(const Mat2c& m, double lambda);

// Spectral projections of one nondegenerate mode. Both rank-one projections
// (onto the xi_minus and xi_plus eigenlines) have the same weighted norm:
// 1/sqrt(1 - critical_lambda/lambda) above the critical eigenvalue and
// 1/sqrt(1 - lambda/critical_lambda) below it.
struct ProjectionInfo {
  double norm;
  XiPair roots;
  double eigvec_norm_minus;  // sqrt(lambda + |xi_minus|^2)
  double eigvec_norm_plus;

  // Coordinates in the eigenbasis: (u, v) = minus * (1, xi_minus) + plus * (1, xi_plus).
  complexd coeff_minus(complexd u, complexd v) const;
  complexd coeff_plus(complexd u, complexd v) const;
  Mat2c matrix_minus() const;
  Mat2c matrix_plus() const;
};
ProjectionInfo projection_norm(double lambda, double alpha);

// Maximizes the projection image norm over a nested dyadic (theta, phi) grid
// on the weighted unit sphere (the overall phase is fixed by invariance, so
// two angles suffice). Converges to projection_norm(...).norm from below, and
// doubling `samples` never decreases the result.
double brute_force_projection_norm(double lambda, double alpha, long samples);

// Weighted operator norm of the per-mode generator block:
// (2/alpha) g(critical_lambda/lambda) with g(r) = (1 + sqrt(1+r))/r.
double block_operator_norm(double lambda, double alpha);
double brute_force_block_norm(double lambda, double alpha, long samples);

// Index split of a mode system at decay rate mu > 2/alpha.
//   stable:       real branch with xi_minus <= -mu (decays at rate mu)
//   degenerate:   lambda at the critical eigenvalue (within tolerance)
//   slow_real:    real branch with xi_minus > -mu
//   slow_complex: complex branch (lambda below critical)
struct MuDecomposition {
  double mu;
  std::vector<std::size_t> stable, degenerate, slow_real, slow_complex;
};
MuDecomposition mu_decomposition(const ModeSystem& ms, double mu);

// Modal state with the weighted inner product diag(lambda_k, 1) per mode.
struct BlockVector {
  std::vector<complexd> u, v;
};
complexd x_inner(const ModeSystem& ms, const BlockVector& a, const BlockVector& b);
double x_norm(const ModeSystem& ms, const BlockVector& z);
BlockVector apply_block_operator(const ModeSystem& ms, const BlockVector& z);

// Exact norms (largest singular value per block) of the two projections of
// the rate-mu splitting, plus their common bound 1/(1 - (2/alpha)/mu).
struct SplitProjectionNorms {
  double norm_stable;  // 0 when the stable set is empty
  double norm_slow;
  double bound;
};
SplitProjectionNorms split_projection_norms(const ModeSystem& ms, double mu);

// Exact weighted norm of the generator restricted to the slow subspace
// (full blocks for slow/degenerate modes, the xi_plus line over stable
// modes), plus the bound mu (1 + sqrt 2).
struct SlowOperatorNorm {
  double norm;
  double bound;
};
SlowOperatorNorm slow_operator_norm(const ModeSystem& ms, double mu);

// Verifies rate-mu decay on the stable subspace: per-mode Re(xi_minus) <= -mu
// and |e^{t xi_minus}| <= e^{-mu t} on the time grid, plus the quadratic form
// Re<Az, z> <= -mu ||z||^2 on random unit combinations of stable eigenvectors.
// The overload taking an explicit decomposition lets tests inject a
// misclassified mode, which must make the check fail.
bool semigroup_decay_check(const ModeSystem& ms, double mu,
                           const std::vector<double>& t_grid, unsigned seed = 42);
bool semigroup_decay_check(const ModeSystem& ms, const MuDecomposition& dec,
                           const std::vector<double>& t_grid, unsigned seed = 42);

}  // namespace periodkit::spectral
