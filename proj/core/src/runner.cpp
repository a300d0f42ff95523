#include "swt/runner.hpp"

#include "swt/admissibility.hpp"
#include "swt/dirac.hpp"
#include "swt/flow.hpp"
#include "swt/functional.hpp"
#include "swt/gauge.hpp"
#include "swt/report.hpp"
#include "swt/rng.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace swt {

namespace {

Json geometry_json(const Geometry& geom) {
  Json dims = Json::array();
  Json spacing = Json::array();
  for (int mu = 0; mu < 4; ++mu) {
    dims.push(Json::integer(geom.grid.n[mu]));
    spacing.push(Json::num(geom.grid.h[mu]));
  }
  Json j = Json::object();
  j.set("dims", std::move(dims));
  j.set("spacing", std::move(spacing));
  j.set("volume", Json::num(geom.grid.volume));
  j.set("k_min", Json::num(geom.k_min));
  j.set("k_minus", Json::num(geom.k_minus));
  return j;
}

Json sector_json(const Connection& conn) {
  Json flux = Json::array();
  for (int p = 0; p < 6; ++p) flux.push(Json::integer(conn.flux[p]));
  Json j = Json::object();
  j.set("flux", std::move(flux));
  j.set("alpha_sq", Json::integer(alpha_square(conn.flux)));
  return j;
}

struct Check {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

Check make_check(std::string name, double measured, double threshold) {
  Check c;
  c.name = std::move(name);
  c.measured = measured;
  c.threshold = threshold;
  c.pass = std::isfinite(measured) && measured <= threshold;
  return c;
}

}  // namespace

int run_identities(const ExperimentConfig& ec, const std::string& out_dir) {
  set_threads(ec.parallel ? 0 : 1);
  ensure_dir(out_dir);
  const Geometry geom = build_geometry(ec);
  const Grid& g = geom.grid;
  Rng rng(ec.seed);
  const Connection conn = build_connection(ec, geom, rng);
  const double scale = ec.clifford_scale;

  std::vector<Check> checks;

  // Pointwise fiber algebra over random draws.
  {
    double pair_err = 0.0, norm4_err = 0.0, norm2_err = 0.0, action_err = 0.0;
    for (int n = 0; n < 200; ++n) {
      const Spinor phi{rng.cnormal(), rng.cnormal()};
      const SdTriple w{rng.normal(), rng.normal(), rng.normal()};
      const SdTriple st = sigma_triple(phi);
      const cplx rho = inner(clifford_apply(w, phi, scale), phi);
      pair_err = std::max(pair_err, std::abs(dot(w, st) - 0.5 * rho));
      const double p4 = norm_sq(phi) * norm_sq(phi);
      norm4_err = std::max(norm4_err, std::abs(4.0 * norm_sq(st) - p4));
      norm2_err = std::max(norm2_err, std::abs(2.0 * endo_norm_sq(sigma(phi)) - p4));
      const Spinor act = clifford_apply(st, phi, scale) - phi * (0.5 * norm_sq(phi));
      action_err = std::max(action_err, std::sqrt(norm_sq(act)));
    }
    checks.push_back(make_check("clifford_pairing", pair_err, 1e-12));
    checks.push_back(make_check("sigma_triple_norm", norm4_err, 1e-12));
    checks.push_back(make_check("sigma_endo_norm", norm2_err, 1e-12));
    checks.push_back(make_check("sigma_eigen_action", action_err, 1e-12));
  }

  // Operator-level identities on the configured sector with smooth fields.
  const LinkField u = spinor_links(geom, conn);
  const SpinorField phi = smooth_spinor_field(g, rng, 0.5, 2);
  const SpinorField psi = smooth_spinor_field(g, rng, 0.5, 2);

  {
    const cplx lhs = l2_inner(g, dirac(g, u, phi), psi);
    const cplx rhs = l2_inner(g, phi, dirac_adj(g, u, psi));
    const double denom = 1.0 + std::abs(lhs);
    checks.push_back(make_check("dirac_adjoint", std::abs(lhs - rhs) / denom, 1e-12));
  }
  {
    const double lhs = l2_inner_re(g, laplacian(g, u, phi), phi);
    double rhs = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
      const SpinorField d = covariant_diff(g, u, phi, mu);
      for (std::int64_t i = 0; i < g.sites; ++i) rhs += norm_sq(d[i]);
    }
    rhs *= g.cell;
    const double denom = 1.0 + std::abs(rhs);
    checks.push_back(make_check("laplacian_dirichlet", std::abs(lhs - rhs) / denom, 1e-12));
  }
  {
    double flux_err = 0.0;
    for (int p = 0; p < 6; ++p)
      flux_err = std::max(flux_err, std::abs(plane_flux(geom, conn, p) -
                                             2.0 * std::numbers::pi * conn.flux[p]));
    checks.push_back(make_check("flux_integrality", flux_err, 1e-9));
  }
  {
    const double chern = chern_square(geom, conn);
    checks.push_back(make_check(
        "chern_topological", std::abs(chern - alpha_square(conn.flux)), 1e-9));
  }
  {
    // Gauge invariance of energies and curvature; covariance of D.
    Connection conn2 = conn;
    SpinorField phi2 = phi;
    const GaugeTransform t = random_gauge_transform(g, rng, 0.8, 2);
    apply_gauge(geom, t, conn2, phi2);
    const EnergyBreakdown e1 = sw_energy(geom, conn, phi);
    const EnergyBreakdown e2 = sw_energy(geom, conn2, phi2);
    double m = std::abs(e1.total - e2.total) / (1.0 + std::abs(e1.total));
    m = std::max(m, std::abs(sw_first_order(geom, conn, phi) -
                             sw_first_order(geom, conn2, phi2)) /
                        (1.0 + std::abs(e1.total)));
    m = std::max(m, std::abs(chern_square(geom, conn) - chern_square(geom, conn2)));
    const TwoForm f1 = curvature(geom, conn);
    const TwoForm f2 = curvature(geom, conn2);
    double fmax = 0.0;
    for (std::size_t i = 0; i < f1.c.size(); ++i)
      fmax = std::max(fmax, std::abs(f1.c[i] - f2.c[i]));
    m = std::max(m, fmax / (1.0 + sup_norm(ScalarField(f1.c.begin(), f1.c.end()))));
    const SpinorField d1 = dirac(g, u, phi);
    const SpinorField d2 = dirac(g, spinor_links(geom, conn2), phi2);
    double dmax = 0.0;
    for (std::int64_t i = 0; i < g.sites; ++i) {
      const auto x = g.coords(i);
      double wind = 0.0;
      for (int mu = 0; mu < 4; ++mu)
        wind += 2.0 * std::numbers::pi * t.winding[mu] * x[mu] / g.n[mu];
      const cplx ph = std::polar(1.0, t.theta[i] + wind);
      const Spinor rot{d1[i].a * ph, d1[i].b * ph};
      dmax = std::max(dmax, std::sqrt(norm_sq(d2[i] - rot)));
    }
    m = std::max(m, dmax);
    checks.push_back(make_check("gauge_invariance", m, 1e-9));
  }
  {
    // Directional derivative against central finite differences.
    double worst = 0.0;
    for (int rep = 0; rep < 3; ++rep) {
      const SpinorField dphi = smooth_spinor_field(g, rng, 0.3, 1);
      const OneForm da = smooth_one_form(g, rng, 0.3, 1);
      const Gradient grad = sw_gradient(geom, conn, phi);
      double analytic = l2_inner(g, grad.g_phi, dphi).real() * 2.0;
      analytic += l2_inner(g, grad.g_a, da);
      const double eps = 1e-4;
      auto shifted = [&](double s) {
        Connection c2 = conn;
        SpinorField p2 = phi;
        for (std::size_t i = 0; i < c2.a.size(); ++i) c2.a[i] += s * da[i];
        for (std::int64_t i = 0; i < g.sites; ++i) p2[i] += dphi[i] * s;
        return sw_energy(geom, c2, p2).total;
      };
      const double fd = (shifted(eps) - shifted(-eps)) / (2.0 * eps);
      worst = std::max(worst, std::abs(fd - analytic) / std::max(1.0, std::abs(analytic)));
    }
    checks.push_back(make_check("gradient_fd", worst, 1e-6));
  }

  const double weitz = weitzenbock_residual(geom, conn, phi);

  bool all_pass = true;
  Json arr = Json::array();
  for (const auto& c : checks) {
    all_pass = all_pass && c.pass;
    Json row = Json::object();
    row.set("name", Json::str(c.name));
    row.set("measured", Json::num(c.measured));
    row.set("threshold", Json::num(c.threshold));
    row.set("pass", Json::boolean(c.pass));
    arr.push(std::move(row));
    log(c.pass ? LogLevel::kInfo : LogLevel::kError,
        "identity " + c.name + (c.pass ? " ok (" : " FAILED (") +
            format_double(c.measured) + ")");
  }

  Json root = Json::object();
  root.set("schema_version", Json::integer(1));
  root.set("tool", Json::str("swtk"));
  root.set("subcommand", Json::str("identities"));
  root.set("seed", Json::integer(static_cast<std::int64_t>(ec.seed)));
  root.set("parallel", Json::boolean(ec.parallel));
  root.set("clifford_scale", Json::num(scale));
  root.set("geometry", geometry_json(geom));
  root.set("sector", sector_json(conn));
  root.set("checks", std::move(arr));
  root.set("weitzenbock_residual", Json::num(weitz));
  root.set("all_pass", Json::boolean(all_pass));
  write_file(out_dir + "/identities.json", root.dump());
  return all_pass ? kExitOk : kExitIdentityFailure;
}

int run_flow(const ExperimentConfig& ec, const std::string& out_dir) {
  set_threads(ec.parallel ? 0 : 1);
  ensure_dir(out_dir);
  const Geometry geom = build_geometry(ec);
  Rng rng(ec.seed);
  Connection conn = build_connection(ec, geom, rng);
  SpinorField phi = build_spinor(ec, geom, rng);

  log(LogLevel::kInfo, "flow: starting descent (max_iters=" +
                           std::to_string(ec.flow.max_iters) + ")");
  const FlowResult res = minimize(geom, conn, phi, ec.flow);
  log(res.status == FlowStatus::kConverged ? LogLevel::kInfo : LogLevel::kWarn,
      std::string("flow: ") + to_string(res.status) + " after " +
          std::to_string(res.iters) + " iterations, classified " + to_string(res.cls));

  const BoundReport bounds = bound_suite(geom, conn, phi);
  const Window w = admissible_window(geom.grid.volume, geom.k_minus);
  const double alpha = static_cast<double>(alpha_square(conn.flux));
  const bool monopole_consistent =
      res.cls != Classification::kMonopole || w.contains(alpha);

  Json root = Json::object();
  root.set("schema_version", Json::integer(1));
  root.set("tool", Json::str("swtk"));
  root.set("subcommand", Json::str("flow"));
  root.set("seed", Json::integer(static_cast<std::int64_t>(ec.seed)));
  root.set("parallel", Json::boolean(ec.parallel));
  root.set("geometry", geometry_json(geom));
  root.set("sector", sector_json(conn));
  {
    Json opts = Json::object();
    opts.set("max_iters", Json::integer(ec.flow.max_iters));
    opts.set("grad_tol", Json::num(ec.flow.grad_tol));
    opts.set("eta0", Json::num(ec.flow.eta0));
    opts.set("gauge_fix", Json::boolean(ec.flow.gauge_fix));
    const double eps_m = ec.flow.eps_monopole < 0.0
                             ? 1e-4 * std::sqrt(geom.grid.volume)
                             : ec.flow.eps_monopole;
    opts.set("eps_monopole", Json::num(eps_m));
    opts.set("eps_phi", Json::num(ec.flow.eps_phi));
    opts.set("trace_every", Json::integer(ec.flow.trace_every));
    root.set("options", std::move(opts));
  }
  {
    Json r = Json::object();
    r.set("status", Json::str(to_string(res.status)));
    r.set("classification", Json::str(to_string(res.cls)));
    r.set("iterations", Json::integer(res.iters));
    r.set("grad_norm", Json::num(res.grad_norm));
    Json e = Json::object();
    e.set("curvature", Json::num(res.energy.curvature));
    e.set("kinetic", Json::num(res.energy.kinetic));
    e.set("quartic", Json::num(res.energy.quartic));
    e.set("coupling", Json::num(res.energy.coupling));
    e.set("total", Json::num(res.energy.total));
    r.set("energy", std::move(e));
    r.set("first_order", Json::num(res.first_order));
    r.set("topological_gap", Json::num(res.first_order - res.energy.total));
    Json resid = Json::object();
    resid.set("dirac", Json::num(res.residuals.dirac));
    resid.set("monopole", Json::num(res.residuals.curvature));
    resid.set("el_spinor", Json::num(res.el_spinor));
    resid.set("el_connection", Json::num(res.el_connection));
    r.set("residuals", std::move(resid));
    Json p = Json::object();
    p.set("l2", Json::num(res.phi_l2));
    p.set("sup", Json::num(res.phi_sup));
    r.set("phi", std::move(p));
    root.set("result", std::move(r));
  }
  {
    Json b = Json::object();
    b.set("sup_phi", Json::num(bounds.sup_phi));
    b.set("sup_k", Json::num(bounds.sup_k));
    b.set("k_minus", Json::num(bounds.k_minus));
    b.set("volume", Json::num(bounds.volume));
    b.set("l2_sq", Json::num(bounds.l2_sq));
    b.set("l4_sq", Json::num(bounds.l4_sq));
    b.set("holder_slack", Json::num(bounds.holder_slack));
    b.set("energy", Json::num(bounds.energy));
    b.set("f_of_x", Json::num(bounds.f_of_x));
    b.set("discriminant", Json::num(bounds.discriminant));
    b.set("x_minus", Json::num(bounds.x_minus));
    b.set("x_plus", Json::num(bounds.x_plus));
    b.set("energy_floor", Json::num(bounds.energy_floor));
    root.set("bounds", std::move(b));
  }
  {
    Json jw = Json::object();
    jw.set("lo", Json::num(w.lo));
    jw.set("hi", Json::num(w.hi));
    jw.set("alpha_sq", Json::num(alpha));
    jw.set("monopole_consistent", Json::boolean(monopole_consistent));
    root.set("window", std::move(jw));
  }
  write_file(out_dir + "/flow.json", root.dump());

  Csv trace({"iter", "energy", "grad_norm", "step"});
  for (const auto& row : res.trace)
    trace.row({static_cast<double>(row.iter), row.energy, row.grad_norm, row.step});
  write_file(out_dir + "/trace.csv", trace.dump());

  return res.status == FlowStatus::kConverged ? kExitOk : kExitNotConverged;
}

int run_screen(const ExperimentConfig& ec, const std::string& out_dir) {
  set_threads(ec.parallel ? 0 : 1);
  ensure_dir(out_dir);
  IntersectionForm form;
  try {
    form = standard_form(ec.screen.form);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("screen.form: ") + e.what());
  }
  double volume = ec.screen.volume;
  double k_minus = ec.screen.k_minus;
  if (volume < 0.0 || k_minus < 0.0) {
    const Geometry geom = build_geometry(ec);
    if (volume < 0.0) volume = geom.grid.volume;
    if (k_minus < 0.0) k_minus = geom.k_minus;
  }
  const Window w = admissible_window(volume, k_minus);

  Json root = Json::object();
  root.set("schema_version", Json::integer(1));
  root.set("tool", Json::str("swtk"));
  root.set("subcommand", Json::str("screen"));
  root.set("seed", Json::integer(static_cast<std::int64_t>(ec.seed)));
  {
    Json jf = Json::object();
    jf.set("spec", Json::str(ec.screen.form));
    jf.set("name", Json::str(form.name));
    jf.set("rank", Json::integer(form.rank));
    jf.set("determinant", Json::integer(determinant(form)));
    jf.set("signature", Json::integer(signature(form)));
    jf.set("even", Json::boolean(is_even_form(form)));
    root.set("form", std::move(jf));
  }
  {
    Json jw = Json::object();
    jw.set("lo", Json::num(w.lo));
    jw.set("hi", Json::num(w.hi));
    jw.set("volume", Json::num(volume));
    jw.set("k_minus", Json::num(k_minus));
    root.set("window", std::move(jw));
  }
  root.set("bound", Json::integer(ec.screen.bound));

  EnumerationStats stats;
  std::vector<AdmissibleClass> classes;
  try {
    classes = enumerate_admissible(form, ec.screen.bound, w, &stats);
  } catch (const EnumerationBudgetError& e) {
    log(LogLevel::kError, e.what());
    root.set("budget_exceeded", Json::boolean(true));
    root.set("error", Json::str(e.what()));
    write_file(out_dir + "/screen.json", root.dump());
    return kExitBudgetExceeded;
  }

  root.set("budget_exceeded", Json::boolean(false));
  root.set("scanned", Json::integer(stats.scanned));
  root.set("characteristic_count", Json::integer(stats.characteristic));
  root.set("admissible_count", Json::integer(static_cast<std::int64_t>(classes.size())));
  write_file(out_dir + "/screen.json", root.dump());

  std::vector<std::string> header;
  for (int i = 0; i < form.rank; ++i) header.push_back("c" + std::to_string(i));
  header.push_back("q");
  Csv csv(header);
  for (const auto& cls : classes) {
    std::vector<std::string> cells;
    for (const auto& v : cls.alpha) cells.push_back(std::to_string(v));
    cells.push_back(std::to_string(cls.q));
    csv.raw_row(cells);
  }
  write_file(out_dir + "/classes.csv", csv.dump());

  log(LogLevel::kInfo, "screen: " + std::to_string(classes.size()) + " admissible classes of " +
                           std::to_string(stats.characteristic) + " characteristic vectors");
  return kExitOk;
}

}  // namespace swt
