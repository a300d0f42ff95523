#include "swt/flow.hpp"

#include "swt/poisson.hpp"

#include <cmath>
#include <stdexcept>

namespace swt {

const char* to_string(FlowStatus s) {
  return s == FlowStatus::kConverged ? "CONVERGED" : "NOT_CONVERGED";
}

const char* to_string(Classification c) {
  switch (c) {
    case Classification::kMonopole: return "MONOPOLE";
    case Classification::kPhiVanishes: return "PHI_VANISHES";
    case Classification::kReducibleMin: return "REDUCIBLE_MIN";
    default: return "NOT_CONVERGED";
  }
}

namespace {

// Energy with the constant harmonic-curvature part split off. The descent
// compares fluct across trial steps: near a minimum the decrease per step is
// far below one ulp of the full total, which would freeze a comparison on it.
struct EvalEnergy {
  EnergyBreakdown eb;
  double fluct = 0.0;  // eb.total - (1/4)|B|^2 vol
};

struct Evaluator {
  const Geometry& geom;
  FluxMatrix flux;
  LinkField harm;  // links of the harmonic sector alone
  std::array<double, 6> b{};
  double e_harm = 0.0;

  Evaluator(const Geometry& g, const FluxMatrix& fx) : geom(g), flux(fx) {
    Connection bare;
    bare.flux = fx;
    bare.a.assign(4 * g.grid.sites, 0.0);
    harm = spinor_links(g, bare);
    b = harmonic_curvature(g.grid, fx);
    double b2 = 0.0;
    for (double v : b) b2 += v * v;
    e_harm = 0.25 * b2 * g.grid.volume;
  }

  LinkField links(const OneForm& a) const {
    const Grid& g = geom.grid;
    LinkField u(4 * g.sites);
    for (int mu = 0; mu < 4; ++mu) {
      const double half_h = 0.5 * g.h[mu];
      const double* am = a.data() + mu * g.sites;
      const cplx* hm = harm.data() + mu * g.sites;
      cplx* um = u.data() + mu * g.sites;
      for (std::int64_t i = 0; i < g.sites; ++i)
        um[i] = hm[i] * std::polar(1.0, -half_h * am[i]);
    }
    return u;
  }

  EvalEnergy energy(const OneForm& a_perp, const SpinorField& phi,
                    const LinkField& u) const {
    const Grid& g = geom.grid;
    EvalEnergy out;
    TwoForm ca;
    ca.c.assign(6 * g.sites, 0.0);
    add_central_curl(g, a_perp, 1.0, ca);
    // |B + da|^2 - |B|^2 accumulated as da (2B + da): no cancellation.
    Kahan curv;
    for (int p = 0; p < 6; ++p) {
      const double b2 = 2.0 * b[p];
      const double* cp = ca.c.data() + p * g.sites;
      for (std::int64_t i = 0; i < g.sites; ++i) curv.add(cp[i] * (b2 + cp[i]));
    }
    const double curv_fluct = 0.25 * curv.sum * g.cell;
    Kahan kin;
    for (int mu = 0; mu < 4; ++mu) {
      const SpinorField d = covariant_diff(g, u, phi, mu);
      for (std::int64_t i = 0; i < g.sites; ++i) kin.add(norm_sq(d[i]));
    }
    Kahan q, c;
    for (std::int64_t i = 0; i < g.sites; ++i) {
      const double n2 = norm_sq(phi[i]);
      q.add(n2 * n2);
      c.add(geom.k[i] * n2);
    }
    out.eb.curvature = e_harm + curv_fluct;
    out.eb.kinetic = kin.sum * g.cell;
    out.eb.quartic = 0.125 * q.sum * g.cell;
    out.eb.coupling = 0.25 * c.sum * g.cell;
    out.fluct = curv_fluct + out.eb.kinetic + out.eb.quartic + out.eb.coupling;
    out.eb.total = e_harm + out.fluct;
    return out;
  }
};

}  // namespace

Classification classify(const Geometry& geom, const Connection& conn,
                        const SpinorField& phi, bool converged,
                        double eps_monopole, double eps_phi) {
  if (!converged) return Classification::kNotConverged;
  const double eps_m =
      eps_monopole < 0.0 ? 1e-4 * std::sqrt(geom.grid.volume) : eps_monopole;
  const FirstOrderResiduals res = first_order_residuals(geom, conn, phi);
  const double phi_l2 = l2_norm(geom.grid, phi);
  if (res.dirac + res.curvature <= eps_m && phi_l2 >= eps_phi)
    return Classification::kMonopole;
  if (sup_norm(phi) <= eps_phi) return Classification::kPhiVanishes;
  return Classification::kReducibleMin;
}

FlowResult minimize(const Geometry& geom, Connection& conn, SpinorField& phi,
                    const FlowOptions& opts) {
  const Grid& g = geom.grid;
  require_size(g, conn.a.size(), 4, "fluctuation 1-form");
  require_size(g, phi.size(), 1, "spinor field");
  if (opts.max_iters < 1) throw std::invalid_argument("flow: max_iters must be >= 1");
  if (!(opts.grad_tol > 0.0)) throw std::invalid_argument("flow: grad_tol must be > 0");
  if (!(opts.eta0 > 0.0)) throw std::invalid_argument("flow: eta0 must be > 0");
  if (!(opts.shrink > 0.0 && opts.shrink < 1.0))
    throw std::invalid_argument("flow: shrink must be in (0, 1)");
  if (!(opts.grow >= 1.0)) throw std::invalid_argument("flow: grow must be >= 1");
  if (opts.trace_every < 1) throw std::invalid_argument("flow: trace_every must be >= 1");
  for (const Spinor& s : phi) {
    require_finite(s.a.real() + s.a.imag(), "initial spinor");
    require_finite(s.b.real() + s.b.imag(), "initial spinor");
  }
  for (double v : conn.a) require_finite(v, "initial fluctuation");

  // The descent runs inside the Coulomb slice: the energy only sees the
  // coexact+harmonic part of a up to a gauge rotation of phi, and at joint
  // critical points the full gradient vanishes as well.
  ScalarField chi_init;
  OneForm a = coexact_part(g, conn.a, &chi_init);
  const OneForm a_exact_init = [&] {
    OneForm d(conn.a.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = conn.a[i] - a[i];
    return d;
  }();

  Evaluator ev(geom, conn.flux);
  LinkField u = ev.links(a);
  EvalEnergy e = ev.energy(a, phi, u);

  FlowResult out;
  double eta = opts.eta0;
  ScalarField warm;

  SpinorField g_phi(g.sites);
  OneForm dir_a;
  int it = 0;
  for (; it < opts.max_iters; ++it) {
    // Spinor gradient.
    g_phi = laplacian(g, u, phi);
    for (std::int64_t i = 0; i < g.sites; ++i)
      g_phi[i] += phi[i] * (0.25 * (norm_sq(phi[i]) + geom.k[i]));

    // Connection gradient, projected onto the slice (one Poisson solve).
    // d* of the constant harmonic part vanishes identically, so F enters
    // only through the curl of the fluctuation.
    {
      TwoForm ca;
      ca.c.assign(6 * g.sites, 0.0);
      add_central_curl(g, a, 1.0, ca);
      OneForm raw(4 * g.sites);
      {
        // (1/2) d*F + J
        OneForm dstar(4 * g.sites, 0.0);
        for (int p = 0; p < 6; ++p) {
          const int mu = kPlanes[p][0], nu = kPlanes[p][1];
          const double* fp = ca.c.data() + p * g.sites;
          double* omu = dstar.data() + mu * g.sites;
          double* onu = dstar.data() + nu * g.sites;
          const double cmu = 1.0 / (2.0 * g.h[mu]);
          const double cnu = 1.0 / (2.0 * g.h[nu]);
          const auto& upn = g.up[nu];
          const auto& dnn = g.dn[nu];
          const auto& upm = g.up[mu];
          const auto& dnm = g.dn[mu];
          for (std::int64_t i = 0; i < g.sites; ++i) {
            omu[i] += cnu * (fp[upn[i]] - fp[dnn[i]]);
            onu[i] -= cmu * (fp[upm[i]] - fp[dnm[i]]);
          }
        }
        for (int mu = 0; mu < 4; ++mu) {
          const SpinorField d = covariant_diff(g, u, phi, mu);
          const cplx* um = u.data() + mu * g.sites;
          double* rm = raw.data() + mu * g.sites;
          const double* dm = dstar.data() + mu * g.sites;
          const auto& up = g.up[mu];
          for (std::int64_t i = 0; i < g.sites; ++i) {
            const Spinor fwd{um[i] * phi[up[i]].a, um[i] * phi[up[i]].b};
            const Spinor bwd{std::conj(um[i]) * phi[i].a, std::conj(um[i]) * phi[i].b};
            const double j =
                0.5 * (inner(fwd, d[i]).imag() + inner(bwd, d[up[i]]).imag());
            rm[i] = 0.5 * dm[i] + j;
          }
        }
      }
      dir_a = coexact_part(g, raw, &warm);
    }

    double gn_sq = 0.0;
    for (std::int64_t i = 0; i < g.sites; ++i) gn_sq += 4.0 * norm_sq(g_phi[i]);
    for (double v : dir_a) gn_sq += v * v;
    gn_sq *= g.cell;
    out.grad_norm = std::sqrt(gn_sq);

    const bool converged_now = out.grad_norm <= opts.grad_tol;
    if ((it % opts.trace_every) == 0 || converged_now)
      out.trace.push_back({it, e.eb.total, out.grad_norm, eta});
    if (converged_now) {
      out.status = FlowStatus::kConverged;
      break;
    }

    // Armijo backtracking on the joint step. Strict decrease only: a step
    // whose energy comes back unchanged must not count as progress. If the
    // adapted window has decayed below the resolvable range, rearm it once
    // from eta0 before declaring a stall.
    bool accepted = false;
    SpinorField phi_try(g.sites);
    OneForm a_try(4 * g.sites);
    for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
      if (attempt == 1) eta = opts.eta0;
      for (int bt = 0; bt < 60; ++bt) {
        for (std::int64_t i = 0; i < g.sites; ++i)
          phi_try[i] = phi[i] - g_phi[i] * (2.0 * eta);
        for (std::size_t i = 0; i < a.size(); ++i) a_try[i] = a[i] - eta * dir_a[i];
        const LinkField u_try = ev.links(a_try);
        const EvalEnergy e_try = ev.energy(a_try, phi_try, u_try);
        if (std::isfinite(e_try.fluct) &&
            e_try.fluct < e.fluct - opts.armijo_c * eta * gn_sq) {
          phi.swap(phi_try);
          a.swap(a_try);
          u = u_try;
          e = e_try;
          eta = std::min(eta * opts.grow, opts.eta_max);
          accepted = true;
          break;
        }
        eta *= opts.shrink;
        if (eta < 1e-16) break;
      }
    }
    if (!accepted) {
      ++it;
      break;  // stalled line search; report as not converged unless tol met
    }
  }
  out.iters = it;

  if (opts.gauge_fix) {
    conn.a = a;
  } else {
    conn.a.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) conn.a[i] = a[i] + a_exact_init[i];
    // Re-attaching the exact part d_f(chi) is the gauge transform with
    // parameter chi/2; rotate phi with it so the pair stays on one orbit.
    for (std::int64_t i = 0; i < g.sites; ++i) {
      const cplx ph = std::polar(1.0, 0.5 * chi_init[i]);
      phi[i].a *= ph;
      phi[i].b *= ph;
    }
  }

  out.energy = sw_energy(geom, conn, phi);
  out.first_order = sw_first_order(geom, conn, phi);
  out.phi_l2 = l2_norm(g, phi);
  out.phi_sup = sup_norm(phi);
  out.residuals = first_order_residuals(geom, conn, phi);
  out.el_spinor = el_residual_spinor(geom, conn, phi);
  out.el_connection = el_residual_connection(geom, conn, phi);
  if (out.status != FlowStatus::kConverged && out.grad_norm <= opts.grad_tol)
    out.status = FlowStatus::kConverged;
  out.cls = classify(geom, conn, phi, out.status == FlowStatus::kConverged,
                     opts.eps_monopole, opts.eps_phi);
  return out;
}

}  // namespace swt
