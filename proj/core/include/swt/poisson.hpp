#pragma once

#include "swt/grid.hpp"

namespace swt {

// Forward-difference gradient (d_f theta)_mu(x) = [theta(x+mu) - theta(x)] / h_mu
// and its negative adjoint, the backward-difference divergence.
OneForm forward_grad(const Grid& g, const ScalarField& theta);
ScalarField forward_div(const Grid& g, const OneForm& a);

struct PoissonStats {
  int iters = 0;
  double rel_residual = 0.0;
  bool converged = false;
};

// Solves (-div grad) psi = rhs on mean-zero fields by conjugate gradients.
// psi is used as the initial guess (warm start) and holds the solution.
PoissonStats poisson_solve(const Grid& g, const ScalarField& rhs, ScalarField& psi,
                           double rel_tol = 1e-13, int max_iters = 50000);

// Removes the d_f-exact part: a = result + forward_grad(chi) with
// forward_div(result) == 0 up to the solver tolerance; chi is returned through
// psi_warm (which also serves as the CG warm start). Constant (harmonic)
// components are preserved.
OneForm coexact_part(const Grid& g, const OneForm& a, ScalarField* psi_warm = nullptr);

}  // namespace swt
