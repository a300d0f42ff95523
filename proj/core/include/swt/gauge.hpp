#pragma once

#include "swt/grid.hpp"
#include "swt/spinor.hpp"

#include <array>

namespace swt {

// Coordinate planes in lexicographic order: 01, 02, 03, 12, 13, 23.
inline constexpr std::array<std::array<int, 2>, 6> kPlanes{{
    {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

int plane_index(int mu, int nu);

// Flux matrix entries n_{mu nu} over kPlanes; all entries must be even
// (characteristic classes on the torus have even pairings with 2-cycles,
// and odd fluxes would make the half-charge spinor transport multivalued).
using FluxMatrix = std::array<int, 6>;

// U(1) connection on the determinant line: a harmonic sector labelled by the
// flux matrix plus a globally defined fluctuation 1-form a (component-major).
struct Connection {
  FluxMatrix flux{};
  OneForm a;
};

Connection make_connection(const Grid& g, const FluxMatrix& flux);

// 2 (n01 n23 - n02 n13 + n03 n12): the self-intersection of the class.
int alpha_square(const FluxMatrix& flux);

// Constant curvature of the harmonic sector: B_p = 2 pi n_p / (L_mu L_nu).
std::array<double, 6> harmonic_curvature(const Grid& g, const FluxMatrix& flux);

// Curvature 2-form, component-major [p*sites + i] over kPlanes.
struct TwoForm {
  std::vector<double> c;
};

// F = B + d_c(P a) where P removes the d_f-exact part of the fluctuation and
// d_c is the central-difference curl. P makes gauge invariance exact and the
// odd central symbol makes the wedge pairing below exactly topological.
TwoForm curvature(const Geometry& geom, const Connection& conn);
// Same, assuming forward_div(a) == 0 already (used by the flow inner loop).
TwoForm curvature_coexact(const Grid& g, const FluxMatrix& flux, const OneForm& a_perp);
// f += w * d_c(a).
void add_central_curl(const Grid& g, const OneForm& a, double w, TwoForm& f);

// Pointwise self-dual / anti-self-dual parts in the orthonormal triple basis.
struct SdSplit {
  std::vector<double> plus;   // 3*sites
  std::vector<double> minus;  // 3*sites
};
SdSplit split_sd(const Grid& g, const TwoForm& f);
TwoForm join_sd(const Grid& g, const SdSplit& s);

double two_form_l2_sq(const Grid& g, const TwoForm& f);

// (1 / 4 pi^2) Int F ^ F; equals alpha_square(flux) for any fluctuation.
double chern_square(const Geometry& geom, const Connection& conn);

// Int_{(mu,nu)-plane} F, averaged over transverse sites; 2 pi n_p exactly.
double plane_flux(const Geometry& geom, const Connection& conn, int p);

// Gauge transform g = exp(i theta_total), theta_total = theta + winding part
// 2 pi w_mu x_mu / L_mu. Spinors have charge 1/2 in this normalization:
// phi -> exp(i theta_total) phi, a -> a + 2 d theta_total.
struct GaugeTransform {
  ScalarField theta;
  std::array<int, 4> winding{};
};

void apply_gauge(const Geometry& geom, const GaugeTransform& t, Connection& conn,
                 SpinorField& phi);

// Spinor transport links u_mu(x) = exp(-i [chi_mu(x) + h_mu a_mu(x)/2]) where
// chi is the half-charge harmonic transport (single-valued because fluxes are
// even). Component-major [mu*sites + i].
using LinkField = std::vector<cplx>;
LinkField spinor_links(const Geometry& geom, const Connection& conn);

// Field strength carried by the links themselves: per plane, the four
// plaquette holonomy phases touching each site are averaged and rescaled by
// -2 / (h_mu h_nu) to undo the half-charge. Requires the resolved flux per
// plaquette to stay below half a winding, |F| h_mu h_nu / 2 < pi.
TwoForm clover_curvature(const Grid& g, const LinkField& u);

// Coulomb projection of the fluctuation: forward_div(result.a) == 0, with the
// curvature and all gauge-invariant observables unchanged.
Connection coulomb_project(const Geometry& geom, const Connection& conn);

double divergence_norm(const Geometry& geom, const Connection& conn);

}  // namespace swt
