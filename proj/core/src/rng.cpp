#include "swt/rng.hpp"

#include <cmath>
#include <numbers>

namespace swt {

SpinorField random_spinor_field(const Grid& g, Rng& rng, double amp) {
  SpinorField f(g.sites);
  for (auto& s : f) {
    s.a = rng.cnormal() * amp;
    s.b = rng.cnormal() * amp;
  }
  return f;
}

OneForm random_one_form(const Grid& g, Rng& rng, double amp) {
  OneForm a(4 * g.sites);
  for (auto& v : a) v = amp * rng.normal();
  return a;
}

namespace {

struct Mode {
  std::array<int, 4> m;
  cplx coeff;
};

// Coefficients are drawn in fixed lexicographic mode order with a 1/(1+|m|^2)
// rolloff; the draw count does not depend on the grid.
std::vector<Mode> draw_modes(Rng& rng, double amp, int cutoff) {
  std::vector<Mode> modes;
  for (int m0 = -cutoff; m0 <= cutoff; ++m0)
    for (int m1 = -cutoff; m1 <= cutoff; ++m1)
      for (int m2 = -cutoff; m2 <= cutoff; ++m2)
        for (int m3 = -cutoff; m3 <= cutoff; ++m3) {
          const double m_sq = m0 * m0 + m1 * m1 + m2 * m2 + m3 * m3;
          const cplx c = rng.cnormal() * (amp / (1.0 + m_sq));
          modes.push_back({{m0, m1, m2, m3}, c});
        }
  return modes;
}

// Evaluates sum_m c_m exp(2 pi i m.x/N) over all sites via per-axis phase
// tables (separable), accumulating into out with the given writer.
template <typename Writer>
void synth(const Grid& g, const std::vector<Mode>& modes, Writer&& write) {
  std::vector<cplx> phase0, phase1, phase2, phase3;
  for (const Mode& md : modes) {
    const auto fill = [&](std::vector<cplx>& tab, int axis) {
      tab.resize(g.n[axis]);
      const double w = 2.0 * std::numbers::pi * md.m[axis] / g.n[axis];
      for (int x = 0; x < g.n[axis]; ++x) tab[x] = std::polar(1.0, w * x);
    };
    fill(phase0, 0);
    fill(phase1, 1);
    fill(phase2, 2);
    fill(phase3, 3);
    std::int64_t i = 0;
    for (int x3 = 0; x3 < g.n[3]; ++x3)
      for (int x2 = 0; x2 < g.n[2]; ++x2) {
        const cplx p32 = phase3[x3] * phase2[x2];
        for (int x1 = 0; x1 < g.n[1]; ++x1) {
          const cplx p321 = p32 * phase1[x1] * md.coeff;
          for (int x0 = 0; x0 < g.n[0]; ++x0, ++i) write(i, p321 * phase0[x0]);
        }
      }
  }
}

}  // namespace

SpinorField smooth_spinor_field(const Grid& g, Rng& rng, double amp, int cutoff) {
  SpinorField f(g.sites);
  const auto modes_a = draw_modes(rng, amp, cutoff);
  const auto modes_b = draw_modes(rng, amp, cutoff);
  synth(g, modes_a, [&](std::int64_t i, cplx v) { f[i].a += v; });
  synth(g, modes_b, [&](std::int64_t i, cplx v) { f[i].b += v; });
  return f;
}

OneForm smooth_one_form(const Grid& g, Rng& rng, double amp, int cutoff) {
  OneForm a(4 * g.sites, 0.0);
  for (int mu = 0; mu < 4; ++mu) {
    const auto modes = draw_modes(rng, amp, cutoff);
    double* am = a.data() + mu * g.sites;
    synth(g, modes, [&](std::int64_t i, cplx v) { am[i] += v.real(); });
  }
  return a;
}

ScalarField smooth_scalar_field(const Grid& g, Rng& rng, double amp, int cutoff) {
  ScalarField f(g.sites, 0.0);
  const auto modes = draw_modes(rng, amp, cutoff);
  synth(g, modes, [&](std::int64_t i, cplx v) { f[i] += v.real(); });
  return f;
}

FluxMatrix random_even_flux(Rng& rng, int range) {
  FluxMatrix f{};
  for (int p = 0; p < 6; ++p) f[p] = 2 * rng.uniform_int(-range, range);
  return f;
}

GaugeTransform random_gauge_transform(const Grid& g, Rng& rng, double amp,
                                      int winding_range) {
  GaugeTransform t;
  t.theta = smooth_scalar_field(g, rng, amp, 2);
  for (int mu = 0; mu < 4; ++mu)
    t.winding[mu] = rng.uniform_int(-winding_range, winding_range);
  // Keep every theta increment strictly inside (-pi, pi) so the branch wrap
  // in apply_gauge is the identity (no vortex plaquettes); the winding part
  // is added analytically and needs no headroom.
  double max_inc = 0.0;
  for (int mu = 0; mu < 4; ++mu) {
    const auto& up = g.up[mu];
    for (std::int64_t i = 0; i < g.sites; ++i)
      max_inc = std::max(max_inc, std::abs(t.theta[up[i]] - t.theta[i]));
  }
  const double budget = 0.9 * std::numbers::pi;
  if (max_inc > budget) {
    const double scale = budget / max_inc;
    for (auto& v : t.theta) v *= scale;
  }
  return t;
}

}  // namespace swt
