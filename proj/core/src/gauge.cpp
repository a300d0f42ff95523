#include "swt/gauge.hpp"

#include "swt/poisson.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace swt {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_pi(double x) {
  x = std::remainder(x, kTwoPi);
  return x;  // in (-pi, pi]
}
}  // namespace

int plane_index(int mu, int nu) {
  if (mu > nu) std::swap(mu, nu);
  if (mu == nu || mu < 0 || nu > 3) throw std::invalid_argument("plane_index: bad axes");
  static constexpr int tab[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
  return tab[mu][nu];
}

Connection make_connection(const Grid& g, const FluxMatrix& flux) {
  for (int p = 0; p < 6; ++p)
    if (flux[p] % 2 != 0)
      throw std::invalid_argument("flux[" + std::to_string(p) + "] must be even, got " +
                                  std::to_string(flux[p]));
  Connection c;
  c.flux = flux;
  c.a.assign(4 * g.sites, 0.0);
  return c;
}

int alpha_square(const FluxMatrix& n) {
  return 2 * (n[0] * n[5] - n[1] * n[4] + n[2] * n[3]);
}

std::array<double, 6> harmonic_curvature(const Grid& g, const FluxMatrix& flux) {
  std::array<double, 6> b{};
  for (int p = 0; p < 6; ++p)
    b[p] = kTwoPi * flux[p] / (g.len[kPlanes[p][0]] * g.len[kPlanes[p][1]]);
  return b;
}

void add_central_curl(const Grid& g, const OneForm& a, double w, TwoForm& f) {
  for (int p = 0; p < 6; ++p) {
    const int mu = kPlanes[p][0], nu = kPlanes[p][1];
    const double cmu = w / (2.0 * g.h[mu]), cnu = w / (2.0 * g.h[nu]);
    const double* amu = a.data() + mu * g.sites;
    const double* anu = a.data() + nu * g.sites;
    double* out = f.c.data() + p * g.sites;
    const auto& upm = g.up[mu];
    const auto& dnm = g.dn[mu];
    const auto& upn = g.up[nu];
    const auto& dnn = g.dn[nu];
    for (std::int64_t i = 0; i < g.sites; ++i)
      out[i] += cmu * (anu[upm[i]] - anu[dnm[i]]) - cnu * (amu[upn[i]] - amu[dnn[i]]);
  }
}

TwoForm curvature_coexact(const Grid& g, const FluxMatrix& flux, const OneForm& a_perp) {
  require_size(g, a_perp.size(), 4, "fluctuation 1-form");
  const auto b = harmonic_curvature(g, flux);
  TwoForm f;
  f.c.assign(6 * g.sites, 0.0);
  for (int p = 0; p < 6; ++p) {
    double* out = f.c.data() + p * g.sites;
    for (std::int64_t i = 0; i < g.sites; ++i) out[i] = b[p];
  }
  add_central_curl(g, a_perp, 1.0, f);
  return f;
}

TwoForm curvature(const Geometry& geom, const Connection& conn) {
  const OneForm a_perp = coexact_part(geom.grid, conn.a);
  return curvature_coexact(geom.grid, conn.flux, a_perp);
}

SdSplit split_sd(const Grid& g, const TwoForm& f) {
  require_size(g, f.c.size(), 6, "two-form");
  SdSplit s;
  s.plus.resize(3 * g.sites);
  s.minus.resize(3 * g.sites);
  constexpr double inv_rt2 = std::numbers::sqrt2 / 2.0;
  // Basis pairing: (01 +- 23), (02 -+ 13), (03 +- 12), each / sqrt 2.
  static constexpr int pa[3] = {0, 1, 2};
  static constexpr int pb[3] = {5, 4, 3};
  static constexpr double sg[3] = {1.0, -1.0, 1.0};
  for (int c = 0; c < 3; ++c) {
    const double* fa = f.c.data() + pa[c] * g.sites;
    const double* fb = f.c.data() + pb[c] * g.sites;
    double* sp = s.plus.data() + c * g.sites;
    double* sm = s.minus.data() + c * g.sites;
    for (std::int64_t i = 0; i < g.sites; ++i) {
      sp[i] = inv_rt2 * (fa[i] + sg[c] * fb[i]);
      sm[i] = inv_rt2 * (fa[i] - sg[c] * fb[i]);
    }
  }
  return s;
}

TwoForm join_sd(const Grid& g, const SdSplit& s) {
  require_size(g, s.plus.size(), 3, "sd triple field");
  require_size(g, s.minus.size(), 3, "asd triple field");
  TwoForm f;
  f.c.assign(6 * g.sites, 0.0);
  constexpr double inv_rt2 = std::numbers::sqrt2 / 2.0;
  static constexpr int pa[3] = {0, 1, 2};
  static constexpr int pb[3] = {5, 4, 3};
  static constexpr double sg[3] = {1.0, -1.0, 1.0};
  for (int c = 0; c < 3; ++c) {
    const double* sp = s.plus.data() + c * g.sites;
    const double* sm = s.minus.data() + c * g.sites;
    double* fa = f.c.data() + pa[c] * g.sites;
    double* fb = f.c.data() + pb[c] * g.sites;
    for (std::int64_t i = 0; i < g.sites; ++i) {
      fa[i] = inv_rt2 * (sp[i] + sm[i]);
      fb[i] = sg[c] * inv_rt2 * (sp[i] - sm[i]);
    }
  }
  return f;
}

double two_form_l2_sq(const Grid& g, const TwoForm& f) {
  require_size(g, f.c.size(), 6, "two-form");
  Kahan acc;
  for (double v : f.c) acc.add(v * v);
  return acc.sum * g.cell;
}

double chern_square(const Geometry& geom, const Connection& conn) {
  const Grid& g = geom.grid;
  // F = B + G with constant B and G the curl of the projected fluctuation.
  // The B^B wedge integrates in closed form to the integer pairing, so only
  // the cross and G^G terms need quadrature; both vanish with G, which keeps
  // harmonic sectors exactly on the integer.
  const OneForm a_perp = coexact_part(g, conn.a);
  const auto b = harmonic_curvature(g, conn.flux);
  TwoForm fg;
  fg.c.assign(6 * g.sites, 0.0);
  add_central_curl(g, a_perp, 1.0, fg);
  const double* g01 = fg.c.data();
  const double* g02 = fg.c.data() + 1 * g.sites;
  const double* g03 = fg.c.data() + 2 * g.sites;
  const double* g12 = fg.c.data() + 3 * g.sites;
  const double* g13 = fg.c.data() + 4 * g.sites;
  const double* g23 = fg.c.data() + 5 * g.sites;
  Kahan acc;
  for (std::int64_t i = 0; i < g.sites; ++i) {
    acc.add(b[0] * g23[i] + g01[i] * b[5] + g01[i] * g23[i] -
            (b[1] * g13[i] + g02[i] * b[4] + g02[i] * g13[i]) +
            b[2] * g12[i] + g03[i] * b[3] + g03[i] * g12[i]);
  }
  // Int F ^ F = 2 * acc * cell + (B ^ B part); divide by 4 pi^2.
  return static_cast<double>(alpha_square(conn.flux)) +
         acc.sum * g.cell / (2.0 * std::numbers::pi * std::numbers::pi);
}

double plane_flux(const Geometry& geom, const Connection& conn, int p) {
  if (p < 0 || p >= 6) throw std::invalid_argument("plane_flux: bad plane index");
  const Grid& g = geom.grid;
  const TwoForm f = curvature(geom, conn);
  const double* fp = f.c.data() + p * g.sites;
  const int mu = kPlanes[p][0], nu = kPlanes[p][1];
  double acc = 0.0;
  for (std::int64_t i = 0; i < g.sites; ++i) acc += fp[i];
  const double transverse = static_cast<double>(g.sites) / (g.n[mu] * g.n[nu]);
  return acc * g.h[mu] * g.h[nu] / transverse;
}

void apply_gauge(const Geometry& geom, const GaugeTransform& t, Connection& conn,
                 SpinorField& phi) {
  const Grid& g = geom.grid;
  require_size(g, t.theta.size(), 1, "gauge parameter");
  require_size(g, conn.a.size(), 4, "fluctuation 1-form");
  require_size(g, phi.size(), 1, "spinor field");
  for (int mu = 0; mu < 4; ++mu) {
    const double wind_step = kTwoPi * t.winding[mu] / g.len[mu];
    double* amu = conn.a.data() + mu * g.sites;
    const auto& up = g.up[mu];
    for (std::int64_t i = 0; i < g.sites; ++i) {
      const double dtheta = wrap_pi(t.theta[up[i]] - t.theta[i]) / g.h[mu];
      amu[i] += 2.0 * (dtheta + wind_step);
    }
  }
  for (std::int64_t i = 0; i < g.sites; ++i) {
    const auto x = g.coords(i);
    double w = 0.0;
    for (int mu = 0; mu < 4; ++mu) w += kTwoPi * t.winding[mu] * x[mu] / g.n[mu];
    const cplx ph = std::polar(1.0, t.theta[i] + w);
    phi[i].a *= ph;
    phi[i].b *= ph;
  }
}

LinkField spinor_links(const Geometry& geom, const Connection& conn) {
  const Grid& g = geom.grid;
  require_size(g, conn.a.size(), 4, "fluctuation 1-form");
  const auto b = harmonic_curvature(g, conn.flux);
  LinkField u(4 * g.sites);
  for (std::int64_t i = 0; i < g.sites; ++i) {
    const auto x = g.coords(i);
    for (int mu = 0; mu < 4; ++mu) {
      double chi = 0.0;
      for (int p = 0; p < 6; ++p) {
        const int pm = kPlanes[p][0], pn = kPlanes[p][1];
        const double half_b = 0.5 * b[p];
        if (pn == mu) {
          // Landau gauge within the plane: A_nu = B x_mu.
          chi += half_b * (x[pm] * g.h[pm]) * g.h[mu];
        } else if (pm == mu && x[mu] + 1 == g.n[mu]) {
          // Transition on the seam keeps the transport single-valued.
          chi -= half_b * g.len[mu] * (x[pn] * g.h[pn]);
        }
      }
      chi += 0.5 * g.h[mu] * conn.a[mu * g.sites + i];
      u[mu * g.sites + i] = std::polar(1.0, -chi);
    }
  }
  return u;
}

TwoForm clover_curvature(const Grid& g, const LinkField& u) {
  require_size(g, u.size(), 4, "link field");
  TwoForm f;
  f.c.assign(6 * g.sites, 0.0);
  std::vector<double> theta(g.sites);
  for (int p = 0; p < 6; ++p) {
    const int mu = kPlanes[p][0], nu = kPlanes[p][1];
    const cplx* um = u.data() + mu * g.sites;
    const cplx* un = u.data() + nu * g.sites;
    const auto& upm = g.up[mu];
    const auto& upn = g.up[nu];
    for (std::int64_t i = 0; i < g.sites; ++i) {
      const cplx hol = um[i] * un[upm[i]] * std::conj(um[upn[i]]) * std::conj(un[i]);
      theta[i] = std::arg(hol);
    }
    const double scale = -0.5 / (g.h[mu] * g.h[nu]);
    const auto& dnm = g.dn[mu];
    const auto& dnn = g.dn[nu];
    double* out = f.c.data() + p * g.sites;
    for (std::int64_t i = 0; i < g.sites; ++i) {
      const std::int64_t im = dnm[i], in = dnn[i];
      out[i] = scale * (theta[i] + theta[im] + theta[in] + theta[dnn[im]]);
    }
  }
  return f;
}

Connection coulomb_project(const Geometry& geom, const Connection& conn) {
  Connection out;
  out.flux = conn.flux;
  out.a = coexact_part(geom.grid, conn.a);
  return out;
}

double divergence_norm(const Geometry& geom, const Connection& conn) {
  const ScalarField d = forward_div(geom.grid, conn.a);
  double acc = 0.0;
  for (double v : d) acc += v * v;
  return std::sqrt(acc * geom.grid.cell);
}

}  // namespace swt
