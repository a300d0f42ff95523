#pragma once

#include "swt/dirac.hpp"
#include "swt/gauge.hpp"
#include "swt/grid.hpp"
#include "swt/spinor.hpp"

namespace swt {

struct EnergyBreakdown {
  double curvature = 0.0;  // (1/4) Int |F|^2
  double kinetic = 0.0;    // Int |grad phi|^2
  double quartic = 0.0;    // (1/8) Int |phi|^4
  double coupling = 0.0;   // (1/4) Int k |phi|^2
  double total = 0.0;
};

// Second-order (Weitzenboeck-side) energy.
EnergyBreakdown sw_energy(const Geometry& geom, const Connection& conn,
                          const SpinorField& phi);

// First-order energy (1/2) Int (|F+ - sigma(phi)|^2 + |D phi|^2).
double sw_first_order(const Geometry& geom, const Connection& conn,
                      const SpinorField& phi);

// sw_first_order - sw_energy.total.
double topological_gap(const Geometry& geom, const Connection& conn,
                       const SpinorField& phi);

// || lap phi + (1/4)|phi|^2 phi + (1/4) k phi ||_2
double el_residual_spinor(const Geometry& geom, const Connection& conn,
                          const SpinorField& phi);
// || d*F + J ||_2 with J the covariant current of phi.
double el_residual_connection(const Geometry& geom, const Connection& conn,
                              const SpinorField& phi);

// L2 gradient of sw_energy. Directional derivatives:
//   dE(delta_phi) = 2 Re <g_phi, delta_phi>_L2,
//   dE(delta_a)   =   <g_a, delta_a>_L2.
struct Gradient {
  SpinorField g_phi;
  OneForm g_a;
};
Gradient sw_gradient(const Geometry& geom, const Connection& conn,
                     const SpinorField& phi);

// Monopole-equation residuals used by the classifier.
struct FirstOrderResiduals {
  double dirac = 0.0;     // ||D phi||_2
  double curvature = 0.0; // ||F+ - sigma(phi)||_2
};
FirstOrderResiduals first_order_residuals(const Geometry& geom, const Connection& conn,
                                          const SpinorField& phi);

// Scalar diagnostics around the a-priori estimates: Hoelder comparison,
// the quadratic f(x) = x^2 - 8 v kminus^2 x - 8 v E at x = ||phi||_2^2,
// its discriminant 32 v (2 v kminus^4 + E), and the roots when real.
struct BoundReport {
  double sup_phi = 0.0;
  double sup_k = 0.0;
  double k_minus = 0.0;
  double volume = 0.0;
  double l2_sq = 0.0;        // x = ||phi||_2^2
  double l4_sq = 0.0;        // ||phi||_4^2
  double holder_slack = 0.0; // sqrt(v) ||phi||_4^2 - ||phi||_2^2  (>= 0)
  double energy = 0.0;       // sw_energy total
  double f_of_x = 0.0;
  double discriminant = 0.0;
  double x_minus = 0.0;
  double x_plus = 0.0;
  double alpha_sq = 0.0;
  double energy_floor = 0.0; // -(1/8) v kminus^4 <= energy always
};
BoundReport bound_suite(const Geometry& geom, const Connection& conn,
                        const SpinorField& phi);

}  // namespace swt
