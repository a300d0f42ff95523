#pragma once

#include "swt/functional.hpp"

#include <string>
#include <vector>

namespace swt {

enum class FlowStatus { kConverged, kNotConverged };

enum class Classification { kMonopole, kPhiVanishes, kReducibleMin, kNotConverged };

const char* to_string(FlowStatus s);
const char* to_string(Classification c);

struct FlowOptions {
  int max_iters = 5000;
  double grad_tol = 1e-6;
  double eta0 = 0.05;       // initial step, adapted by backtracking
  double armijo_c = 1e-4;
  double shrink = 0.5;
  double grow = 1.2;
  double eta_max = 4.0;
  bool gauge_fix = true;    // descend inside the Coulomb slice (equivalent minima)
  double eps_monopole = -1.0;  // < 0 selects the default 1e-4 * sqrt(volume)
  double eps_phi = 1e-4;
  int trace_every = 1;
};

struct TraceRow {
  int iter = 0;
  double energy = 0.0;
  double grad_norm = 0.0;
  double step = 0.0;
};

struct FlowResult {
  FlowStatus status = FlowStatus::kNotConverged;
  Classification cls = Classification::kNotConverged;
  int iters = 0;
  double grad_norm = 0.0;
  EnergyBreakdown energy;
  double first_order = 0.0;
  double phi_l2 = 0.0;
  double phi_sup = 0.0;
  FirstOrderResiduals residuals;
  double el_spinor = 0.0;
  double el_connection = 0.0;
  std::vector<TraceRow> trace;
};

// Gradient descent with Armijo backtracking on sw_energy; conn and phi are
// updated in place. Never classifies an unconverged run as anything else.
FlowResult minimize(const Geometry& geom, Connection& conn, SpinorField& phi,
                    const FlowOptions& opts = {});

Classification classify(const Geometry& geom, const Connection& conn,
                        const SpinorField& phi, bool converged,
                        double eps_monopole = -1.0, double eps_phi = 1e-4);

}  // namespace swt
