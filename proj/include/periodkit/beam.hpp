#pragma once

#include <vector>

// Minimal-period bound for a structurally damped beam with a Lipschitz
// displacement nonlinearity and bounded velocity feedback: the beam operator
// is diagonalized (exact modal eigenvalues for hinged ends, a transcendental
// characteristic equation for clamped ends), the combined nonlinearity is
// folded into one Lipschitz constant for the first-order system, and the
// damped-system bound is applied with that constant.
namespace periodkit::beam {

enum class Boundary { hinged, clamped };

struct BeamProblem {
  double length_l = 1.0;
  double alpha = 1.0;        // structural damping coefficient
  double beta_damp = 0.0;    // uniform bound on the velocity-feedback gain
  double lipschitz_h = 0.0;  // Lipschitz constant of the displacement force
  Boundary boundary = Boundary::hinged;
  int n_modes = 16;
};

struct BeamSetup {
  std::vector<double> lambdas;  // beam operator eigenvalues, ascending
  double l_tilde;               // Lipschitz constant of the lifted nonlinearity
  double bound;                 // minimal-period lower bound
};

// l_tilde = sqrt(2) * max( L (1 + lambda_1^{-1/4} + lambda_1^{-1/2}), L + beta_damp )
// with L = lipschitz_h; requires l_tilde > 0 (some forcing present).
BeamSetup beam_setup(const BeamProblem& p);

// Clamped-end wavenumbers kappa_k: roots of cos(kappa l) = sech(kappa l),
// exactly one in each window (k pi, (k+1) pi) of kappa l, found by bisection.
std::vector<double> clamped_kappas(double length_l, int n_modes);

// Finite-difference check of the modal eigenvalues: 5-point biharmonic
// stencil on grid_n subintervals with reflection ghosts (antisymmetric for
// hinged ends, symmetric for clamped), smallest n_modes eigenvalues of the
// banded matrix. Truncation error is O(grid_n^{-2}).
std::vector<double> fd_eigenvalues(double length_l, Boundary b, int grid_n,
                                   int n_modes);

struct LipschitzCheckReport {
  double max_ratio;
  double l_tilde;
  bool pass;
};

// Draws random coefficient perturbations of a hinged-beam state and verifies
// ||f(z) - f(z')|| <= l_tilde ||z - z'|| for a worst-case admissible
// nonlinearity (it uses the displacement, its slope, its half-power, and the
// velocity at the full Lipschitz budget). The slope term leaves the modal
// sine basis, so the L2 norm is assembled through the exact sine/cosine Gram
// couplings. Hinged ends only.
LipschitzCheckReport beam_lipschitz_check(const BeamProblem& p, int draws,
                                          unsigned seed = 42);

}  // namespace periodkit::beam
