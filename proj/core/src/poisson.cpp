#include "swt/poisson.hpp"

#include <cmath>

namespace swt {

OneForm forward_grad(const Grid& g, const ScalarField& theta) {
  require_size(g, theta.size(), 1, "scalar field");
  OneForm out(4 * g.sites);
  for (int mu = 0; mu < 4; ++mu) {
    const double inv_h = 1.0 / g.h[mu];
    double* o = out.data() + mu * g.sites;
    const auto& up = g.up[mu];
    for (std::int64_t i = 0; i < g.sites; ++i)
      o[i] = (theta[up[i]] - theta[i]) * inv_h;
  }
  return out;
}

ScalarField forward_div(const Grid& g, const OneForm& a) {
  require_size(g, a.size(), 4, "one-form");
  ScalarField out(g.sites, 0.0);
  for (int mu = 0; mu < 4; ++mu) {
    const double inv_h = 1.0 / g.h[mu];
    const double* c = a.data() + mu * g.sites;
    const auto& dn = g.dn[mu];
    for (std::int64_t i = 0; i < g.sites; ++i)
      out[i] += (c[i] - c[dn[i]]) * inv_h;
  }
  return out;
}

namespace {

void apply_laplace(const Grid& g, const ScalarField& x, ScalarField& out) {
  for (std::int64_t i = 0; i < g.sites; ++i) out[i] = 0.0;
  for (int mu = 0; mu < 4; ++mu) {
    const double w = 1.0 / (g.h[mu] * g.h[mu]);
    const auto& up = g.up[mu];
    const auto& dn = g.dn[mu];
    for (std::int64_t i = 0; i < g.sites; ++i)
      out[i] += w * (2.0 * x[i] - x[up[i]] - x[dn[i]]);
  }
}

void remove_mean(ScalarField& f) {
  Kahan acc;
  for (double v : f) acc.add(v);
  const double m = acc.sum / static_cast<double>(f.size());
  for (double& v : f) v -= m;
}

double dot(const ScalarField& a, const ScalarField& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace

PoissonStats poisson_solve(const Grid& g, const ScalarField& rhs, ScalarField& psi,
                           double rel_tol, int max_iters) {
  require_size(g, rhs.size(), 1, "poisson rhs");
  if (psi.size() != rhs.size()) psi.assign(rhs.size(), 0.0);

  ScalarField b = rhs;
  remove_mean(b);
  remove_mean(psi);

  ScalarField r(g.sites), p(g.sites), ap(g.sites);
  apply_laplace(g, psi, ap);
  for (std::int64_t i = 0; i < g.sites; ++i) r[i] = b[i] - ap[i];
  p = r;

  const double b_norm = std::sqrt(dot(b, b));
  PoissonStats st;
  // A rhs whose projection is at the roundoff floor of its raw size is pure
  // mean; the projected problem is solved by zero.
  const double raw_norm = std::sqrt(dot(rhs, rhs));
  if (b_norm <= 1e-14 * raw_norm) {
    psi.assign(g.sites, 0.0);
    st.converged = true;
    return st;
  }
  double rr = dot(r, r);
  double prev_rr = rr;
  int stall = 0;
  for (int it = 0; it < max_iters; ++it) {
    if (std::sqrt(rr) <= rel_tol * b_norm) {
      st.converged = true;
      break;
    }
    apply_laplace(g, p, ap);
    const double pap = dot(p, ap);
    if (pap <= 0.0) break;
    const double alpha = rr / pap;
    for (std::int64_t i = 0; i < g.sites; ++i) {
      psi[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    const double rr_new = dot(r, r);
    const double beta = rr_new / rr;
    for (std::int64_t i = 0; i < g.sites; ++i) p[i] = r[i] + beta * p[i];
    rr = rr_new;
    st.iters = it + 1;
    if (rr >= prev_rr * 0.999999) {
      if (++stall > 50) break;
    } else {
      stall = 0;
    }
    prev_rr = rr;
  }
  if (!st.converged && std::sqrt(rr) <= 100.0 * rel_tol * b_norm) st.converged = true;
  st.rel_residual = std::sqrt(rr) / b_norm;
  remove_mean(psi);
  return st;
}

OneForm coexact_part(const Grid& g, const OneForm& a, ScalarField* psi_warm) {
  ScalarField local;
  ScalarField& chi = psi_warm ? *psi_warm : local;
  ScalarField b = forward_div(g, a);
  for (double& v : b) v = -v;  // (-div grad) chi = -div a  =>  div(a - grad chi) = 0
  poisson_solve(g, b, chi);
  const OneForm grad = forward_grad(g, chi);
  OneForm out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - grad[i];
  return out;
}

}  // namespace swt
