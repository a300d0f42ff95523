#include "swt/gauge.hpp"

#include "swt/functional.hpp"
#include "swt/poisson.hpp"
#include "swt/rng.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace swt;

namespace {

const Geometry& geom6() {
  static const Geometry g =
      make_geometry({6, 6, 6, 6}, {1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6}, 0.0);
  return g;
}

}  // namespace

TEST_CASE("plane_index maps axis pairs onto kPlanes") {
  for (int p = 0; p < 6; ++p) {
    CHECK(plane_index(kPlanes[p][0], kPlanes[p][1]) == p);
    CHECK(plane_index(kPlanes[p][1], kPlanes[p][0]) == p);
  }
  CHECK_THROWS_AS(plane_index(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(plane_index(-1, 2), std::invalid_argument);
  CHECK_THROWS_AS(plane_index(0, 4), std::invalid_argument);
}

TEST_CASE("alpha_square wedge pairing") {
  CHECK(alpha_square({0, 0, 0, 0, 0, 0}) == 0);
  CHECK(alpha_square({2, 0, 0, 0, 0, 2}) == 8);
  CHECK(alpha_square({2, 0, 0, 0, 0, -2}) == -8);
  CHECK(alpha_square({0, 2, 0, 0, 2, 0}) == -8);
  CHECK(alpha_square({0, 0, 2, 2, 0, 0}) == 8);
  CHECK(alpha_square({2, 2, 2, 2, 2, 2}) == 8);  // 2(4 - 4 + 4)
}

TEST_CASE("odd fluxes are rejected") {
  const Grid& g = geom6().grid;
  CHECK_THROWS_AS(make_connection(g, {1, 0, 0, 0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(make_connection(g, {0, 0, -3, 0, 0, 0}), std::invalid_argument);
  CHECK_NOTHROW(make_connection(g, {2, -4, 0, 6, 0, 2}));
}

TEST_CASE("harmonic curvature is 2 pi n over the plane area") {
  const Grid& g = geom6().grid;
  const auto b = harmonic_curvature(g, {2, 0, 0, 0, 0, -4});
  CHECK(b[0] == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-15));
  CHECK(b[5] == doctest::Approx(-8.0 * std::numbers::pi).epsilon(1e-15));
  for (int p = 1; p < 5; ++p) CHECK(b[p] == 0.0);
}

TEST_CASE("plane fluxes are quantized, fluctuations shift nothing") {
  const Geometry& geom = geom6();
  Rng rng(31);
  Connection conn = make_connection(geom.grid, {2, 0, -4, 0, 6, 2});
  conn.a = smooth_one_form(geom.grid, rng, 0.8, 2);
  const FluxMatrix n = conn.flux;
  for (int p = 0; p < 6; ++p) {
    const double want = 2.0 * std::numbers::pi * n[p];
    CHECK(plane_flux(geom, conn, p) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("chern_square equals the flux formula, exactly topological") {
  const Geometry& geom = geom6();
  Rng rng(32);
  for (int rep = 0; rep < 5; ++rep) {
    const FluxMatrix n = random_even_flux(rng, 2);
    Connection conn = make_connection(geom.grid, n);
    const double want = static_cast<double>(alpha_square(n));
    CHECK(std::abs(chern_square(geom, conn) - want) <= 1e-12 * (1.0 + std::abs(want)));
    conn.a = smooth_one_form(geom.grid, rng, 1.2, 2);
    CHECK(std::abs(chern_square(geom, conn) - want) <= 1e-10 * (1.0 + std::abs(want)));
  }
}

TEST_CASE("sd split: pinned decomposition, isometry, round trip") {
  const Grid& g = geom6().grid;
  TwoForm f;
  f.c.assign(6 * g.sites, 0.0);
  // F = e01 + e23: purely self-dual, s+ = (sqrt2, 0, 0).
  for (std::int64_t i = 0; i < g.sites; ++i) {
    f.c[i] = 1.0;
    f.c[5 * g.sites + i] = 1.0;
  }
  const SdSplit s = split_sd(g, f);
  for (std::int64_t i = 0; i < g.sites; ++i) {
    CHECK(s.plus[i] == doctest::Approx(std::numbers::sqrt2).epsilon(1e-15));
    CHECK(std::abs(s.plus[g.sites + i]) <= 1e-15);
    CHECK(std::abs(s.plus[2 * g.sites + i]) <= 1e-15);
    for (int c = 0; c < 3; ++c) CHECK(std::abs(s.minus[c * g.sites + i]) <= 1e-15);
  }

  Rng rng(33);
  TwoForm r;
  r.c.resize(6 * g.sites);
  for (double& v : r.c) v = rng.normal();
  const SdSplit sr = split_sd(g, r);
  const TwoForm back = join_sd(g, sr);
  for (std::size_t i = 0; i < r.c.size(); ++i)
    CHECK(std::abs(back.c[i] - r.c[i]) <= 1e-13);

  double sd_sq = 0.0;
  for (double v : sr.plus) sd_sq += v * v;
  for (double v : sr.minus) sd_sq += v * v;
  sd_sq *= g.cell;
  CHECK(sd_sq == doctest::Approx(two_form_l2_sq(g, r)).epsilon(1e-12));
}

TEST_CASE("spinor links: unit modulus, trivial sector gives unit links") {
  const Geometry& geom = geom6();
  const Connection triv = make_connection(geom.grid, {0, 0, 0, 0, 0, 0});
  const LinkField u = spinor_links(geom, triv);
  for (const cplx& z : u) CHECK(std::abs(z - cplx(1.0, 0.0)) <= 1e-15);

  Rng rng(34);
  Connection conn = make_connection(geom.grid, {2, -2, 0, 4, 0, 2});
  conn.a = smooth_one_form(geom.grid, rng, 0.7, 2);
  for (const cplx& z : spinor_links(geom, conn))
    CHECK(std::abs(std::abs(z) - 1.0) <= 1e-14);
}

TEST_CASE("every plaquette holonomy carries half the harmonic flux density") {
  // Single-valuedness across the seams: the transition function chosen for
  // even fluxes must make the half-charge holonomy uniform over the torus.
  const Geometry& geom = geom6();
  const Grid& g = geom.grid;
  const Connection conn = make_connection(g, {2, -4, 0, 6, 0, 2});
  const LinkField u = spinor_links(geom, conn);
  const auto b = harmonic_curvature(g, conn.flux);
  for (int p = 0; p < 6; ++p) {
    const int mu = kPlanes[p][0], nu = kPlanes[p][1];
    const cplx want = std::polar(1.0, -0.5 * b[p] * g.h[mu] * g.h[nu]);
    for (std::int64_t i = 0; i < g.sites; ++i) {
      const cplx hol = u[mu * g.sites + i] * u[nu * g.sites + g.up[mu][i]] *
                       std::conj(u[mu * g.sites + g.up[nu][i]]) *
                       std::conj(u[nu * g.sites + i]);
      CHECK(std::abs(hol - want) <= 1e-12);
    }
  }
}

TEST_CASE("pure gauge transforms leave zero curvature") {
  const Geometry& geom = geom6();
  Rng rng(35);
  Connection conn = make_connection(geom.grid, {0, 0, 0, 0, 0, 0});
  SpinorField phi(geom.grid.sites, Spinor{1.0, 0.0});
  const GaugeTransform t = random_gauge_transform(geom.grid, rng, 0.8, 2);
  apply_gauge(geom, t, conn, phi);
  const TwoForm f = curvature(geom, conn);
  for (double v : f.c) CHECK(std::abs(v) <= 1e-10);
  CHECK(std::abs(chern_square(geom, conn)) <= 1e-10);
}

TEST_CASE("gauge transforms preserve the gauge-invariant scalars") {
  const Geometry& geom = geom6();
  Rng rng(36);
  Connection conn = make_connection(geom.grid, {2, 0, 0, 0, 0, 2});
  conn.a = smooth_one_form(geom.grid, rng, 0.5, 2);
  SpinorField phi = smooth_spinor_field(geom.grid, rng, 0.6, 2);

  const double e0 = sw_energy(geom, conn, phi).total;
  const double f0 = sw_first_order(geom, conn, phi);
  const double r0 = el_residual_spinor(geom, conn, phi);
  const double c0 = el_residual_connection(geom, conn, phi);

  const GaugeTransform t = random_gauge_transform(geom.grid, rng, 0.7, 1);
  apply_gauge(geom, t, conn, phi);

  CHECK(sw_energy(geom, conn, phi).total == doctest::Approx(e0).epsilon(1e-10));
  CHECK(sw_first_order(geom, conn, phi) == doctest::Approx(f0).epsilon(1e-10));
  CHECK(el_residual_spinor(geom, conn, phi) == doctest::Approx(r0).epsilon(1e-9));
  CHECK(el_residual_connection(geom, conn, phi) == doctest::Approx(c0).epsilon(1e-9));
}

TEST_CASE("coulomb projection zeroes the divergence, keeps observables") {
  const Geometry& geom = geom6();
  Rng rng(37);
  Connection conn = make_connection(geom.grid, {2, 0, 0, 0, 0, 0});
  conn.a = smooth_one_form(geom.grid, rng, 1.0, 2);
  CHECK(divergence_norm(geom, conn) > 1e-3);
  const Connection proj = coulomb_project(geom, conn);
  CHECK(divergence_norm(geom, proj) <= 1e-9);
  CHECK(chern_square(geom, proj) ==
        doctest::Approx(chern_square(geom, conn)).epsilon(1e-12));
}
