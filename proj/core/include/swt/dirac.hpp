#pragma once

#include "swt/gauge.hpp"
#include "swt/grid.hpp"
#include "swt/spinor.hpp"

namespace swt {

// Gauge-covariant central difference along mu:
// (grad_mu phi)(x) = [u_mu(x) phi(x+mu) - conj(u_mu(x-mu)) phi(x-mu)] / (2 h_mu).
// Exactly anti-hermitian in the cell-weighted L2 pairing.
SpinorField covariant_diff(const Grid& g, const LinkField& u, const SpinorField& phi, int mu);

// D = sum_mu s_mu grad_mu : S+ -> S-, and its exact adjoint D* = -sum s_mu^dag grad_mu.
SpinorField dirac(const Grid& g, const LinkField& u, const SpinorField& phi);
SpinorField dirac_adj(const Grid& g, const LinkField& u, const SpinorField& psi);

// Connection laplacian grad* grad = -sum_mu grad_mu grad_mu; exactly PSD.
SpinorField laplacian(const Grid& g, const LinkField& u, const SpinorField& phi);

double l2_inner_re(const Grid& g, const SpinorField& x, const SpinorField& y);
cplx l2_inner(const Grid& g, const SpinorField& x, const SpinorField& y);
double l2_norm(const Grid& g, const SpinorField& x);
double sup_norm(const SpinorField& x);

// || D*D phi - [grad*grad phi + (k/4) phi - (1/sqrt 2) rho(F+) phi] ||_2.
// Second order in max h on smooth data; identically zero in flat sectors.
double weitzenbock_residual(const Geometry& geom, const Connection& conn,
                            const SpinorField& phi);

}  // namespace swt
