#include "swt/flow.hpp"

#include "swt/rng.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace swt;

TEST_CASE("a critical point converges immediately and is classified reducible") {
  // k == -1: the constant spinor with |phi|^2 = 1 kills the gradient exactly,
  // but sigma(phi) != 0 != F+ so it is not a monopole; phi does not vanish.
  const Geometry geom = make_geometry({4, 4, 4, 4}, {0.25, 0.25, 0.25, 0.25}, -1.0);
  Connection conn = make_connection(geom.grid, {0, 0, 0, 0, 0, 0});
  SpinorField phi(geom.grid.sites, Spinor{cplx(1.0, 0.0), cplx(0.0, 0.0)});
  FlowOptions opts;
  opts.grad_tol = 1e-8;
  const FlowResult r = minimize(geom, conn, phi, opts);
  CHECK(r.status == FlowStatus::kConverged);
  CHECK(r.iters == 0);
  CHECK(r.cls == Classification::kReducibleMin);
  CHECK(r.energy.total == doctest::Approx(-0.125).epsilon(1e-12));
}

TEST_CASE("flux sector with k == 0 flows to the reducible minimum") {
  const Geometry geom =
      make_geometry({6, 6, 6, 6}, {1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6}, 0.0);
  Connection conn = make_connection(geom.grid, {2, 0, 0, 0, 0, 0});
  Rng rng(61);
  conn.a = smooth_one_form(geom.grid, rng, 0.3, 1);
  SpinorField phi = smooth_spinor_field(geom.grid, rng, 0.3, 1);
  FlowOptions opts;
  opts.grad_tol = 1e-6;
  opts.max_iters = 20000;
  const FlowResult r = minimize(geom, conn, phi, opts);
  const double e_min = 4.0 * std::numbers::pi * std::numbers::pi;
  CHECK(r.status == FlowStatus::kConverged);
  CHECK(r.cls == Classification::kPhiVanishes);
  CHECK(std::abs(r.energy.total - e_min) <= 1e-4 * e_min);
  CHECK(r.phi_sup <= 1e-3);
  // Energy is monotone along the accepted trace.
  for (std::size_t i = 1; i < r.trace.size(); ++i)
    CHECK(r.trace[i].energy <= r.trace[i - 1].energy + 1e-12);
}

TEST_CASE("classification precedence and thresholds") {
  const Geometry geom = make_geometry({4, 4, 4, 4}, {0.25, 0.25, 0.25, 0.25}, -1.0);
  const Connection conn = make_connection(geom.grid, {0, 0, 0, 0, 0, 0});
  SpinorField phi(geom.grid.sites, Spinor{cplx(1.0, 0.0), cplx(0.0, 0.0)});

  // Not converged dominates everything.
  CHECK(classify(geom, conn, phi, false) == Classification::kNotConverged);

  // Huge monopole tolerance: the residuals pass, so MONOPOLE wins even though
  // the residuals are far from zero in absolute terms.
  CHECK(classify(geom, conn, phi, true, 1e9, 1e-12) == Classification::kMonopole);

  // A near-zero spinor is never reported as a monopole, even when its
  // residuals pass: the phi threshold guards the trivial solution.
  SpinorField tiny(geom.grid.sites, Spinor{cplx(1e-9, 0.0), cplx(0.0, 0.0)});
  CHECK(classify(geom, conn, tiny, true, 1e9, 1e-4) == Classification::kPhiVanishes);

  // With a strict monopole tolerance the tiny spinor is classified as
  // vanishing; the constant unit spinor is a reducible-side minimum.
  CHECK(classify(geom, conn, tiny, true, 1e-12, 1e-4) == Classification::kPhiVanishes);
  CHECK(classify(geom, conn, phi, true, 1e-12, 1e-4) == Classification::kReducibleMin);
}

TEST_CASE("iteration cap yields an honest NOT_CONVERGED") {
  const Geometry geom =
      make_geometry({4, 4, 4, 4}, {0.25, 0.25, 0.25, 0.25}, -1.0);
  Connection conn = make_connection(geom.grid, {2, 0, 0, 0, 0, 0});
  Rng rng(62);
  SpinorField phi = random_spinor_field(geom.grid, rng, 1.0);
  FlowOptions opts;
  opts.max_iters = 3;
  opts.grad_tol = 1e-14;
  const FlowResult r = minimize(geom, conn, phi, opts);
  CHECK(r.status == FlowStatus::kNotConverged);
  CHECK(r.cls == Classification::kNotConverged);
  CHECK(r.iters <= 3 + 1);
}

TEST_CASE("minimize is deterministic for identical inputs") {
  const Geometry geom =
      make_geometry({4, 4, 4, 4}, {0.25, 0.25, 0.25, 0.25}, -1.0);
  FlowOptions opts;
  opts.max_iters = 50;
  opts.grad_tol = 1e-14;

  auto run = [&](FlowResult& out, Connection& conn, SpinorField& phi) {
    Rng rng(63);
    conn = make_connection(geom.grid, {2, 0, 0, 0, 0, 0});
    conn.a = smooth_one_form(geom.grid, rng, 0.4, 1);
    phi = smooth_spinor_field(geom.grid, rng, 0.6, 1);
    out = minimize(geom, conn, phi, opts);
  };
  FlowResult r1, r2;
  Connection c1, c2;
  SpinorField p1, p2;
  run(r1, c1, p1);
  run(r2, c2, p2);
  CHECK(r1.iters == r2.iters);
  CHECK(r1.energy.total == r2.energy.total);
  CHECK(r1.grad_norm == r2.grad_norm);
  REQUIRE(p1.size() == p2.size());
  for (std::size_t i = 0; i < p1.size(); ++i) {
    CHECK(p1[i].a == p2[i].a);
    CHECK(p1[i].b == p2[i].b);
  }
  for (std::size_t i = 0; i < c1.a.size(); ++i) CHECK(c1.a[i] == c2.a[i]);
}

TEST_CASE("gauge_fix=false returns an equivalent, unprojected configuration") {
  const Geometry geom =
      make_geometry({4, 4, 4, 4}, {0.25, 0.25, 0.25, 0.25}, -1.0);
  FlowOptions fixed, free_opts;
  fixed.max_iters = free_opts.max_iters = 200;
  fixed.grad_tol = free_opts.grad_tol = 1e-7;
  free_opts.gauge_fix = false;

  auto prep = [&](Connection& conn, SpinorField& phi) {
    Rng rng(64);
    conn = make_connection(geom.grid, {0, 0, 0, 0, 0, 0});
    conn.a = random_one_form(geom.grid, rng, 0.3);
    phi = smooth_spinor_field(geom.grid, rng, 0.5, 1);
  };
  Connection ca, cb;
  SpinorField pa, pb;
  prep(ca, pa);
  prep(cb, pb);
  const FlowResult ra = minimize(geom, ca, pa, fixed);
  const FlowResult rb = minimize(geom, cb, pb, free_opts);
  CHECK(ra.iters == rb.iters);
  CHECK(ra.energy.total == doctest::Approx(rb.energy.total).epsilon(1e-10));
  // The unprojected run keeps the exact part of the initial fluctuation.
  CHECK(divergence_norm(geom, ca) <= 1e-9);
  CHECK(divergence_norm(geom, cb) > 1e-6);
}

TEST_CASE("option validation") {
  const Geometry geom = make_geometry({4, 4, 4, 4}, {0.25, 0.25, 0.25, 0.25}, 0.0);
  Connection conn = make_connection(geom.grid, {0, 0, 0, 0, 0, 0});
  SpinorField phi(geom.grid.sites, Spinor{});
  FlowOptions bad;
  bad.max_iters = -1;
  CHECK_THROWS_AS(minimize(geom, conn, phi, bad), std::invalid_argument);
  bad = FlowOptions{};
  bad.eta0 = 0.0;
  CHECK_THROWS_AS(minimize(geom, conn, phi, bad), std::invalid_argument);
  bad = FlowOptions{};
  bad.shrink = 1.5;
  CHECK_THROWS_AS(minimize(geom, conn, phi, bad), std::invalid_argument);
  bad = FlowOptions{};
  bad.grad_tol = -1.0;
  CHECK_THROWS_AS(minimize(geom, conn, phi, bad), std::invalid_argument);
}
