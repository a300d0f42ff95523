#include "swt/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

namespace swt {

Grid Grid::make(const std::array<int, 4>& dims, const std::array<double, 4>& spacing) {
  Grid g;
  g.sites = 1;
  g.cell = 1.0;
  g.volume = 1.0;
  for (int mu = 0; mu < 4; ++mu) {
    if (dims[mu] < 4)
      throw std::invalid_argument("grid: dims[" + std::to_string(mu) + "] must be >= 4");
    if (!(spacing[mu] > 0.0) || !std::isfinite(spacing[mu]))
      throw std::invalid_argument("grid: spacing[" + std::to_string(mu) + "] must be > 0");
    g.n[mu] = dims[mu];
    g.h[mu] = spacing[mu];
    g.len[mu] = dims[mu] * spacing[mu];
    g.sites *= dims[mu];
    g.cell *= spacing[mu];
    g.volume *= g.len[mu];
  }
  if (g.sites > (std::int64_t{1} << 31))
    throw std::invalid_argument("grid: too many sites");

  const std::array<std::int64_t, 4> stride = {
      1, g.n[0], static_cast<std::int64_t>(g.n[0]) * g.n[1],
      static_cast<std::int64_t>(g.n[0]) * g.n[1] * g.n[2]};
  for (int mu = 0; mu < 4; ++mu) {
    g.up[mu].resize(g.sites);
    g.dn[mu].resize(g.sites);
  }
  for (std::int64_t i = 0; i < g.sites; ++i) {
    const auto x = g.coords(i);
    for (int mu = 0; mu < 4; ++mu) {
      const std::int64_t fwd = (x[mu] + 1 == g.n[mu]) ? i - stride[mu] * (g.n[mu] - 1) : i + stride[mu];
      const std::int64_t bwd = (x[mu] == 0) ? i + stride[mu] * (g.n[mu] - 1) : i - stride[mu];
      g.up[mu][i] = static_cast<std::int32_t>(fwd);
      g.dn[mu][i] = static_cast<std::int32_t>(bwd);
    }
  }
  return g;
}

Geometry make_geometry(const std::array<int, 4>& dims,
                       const std::array<double, 4>& spacing, const ScalarField& k) {
  Geometry geom;
  geom.grid = Grid::make(dims, spacing);
  require_size(geom.grid, k.size(), 1, "curvature field k");
  geom.k = k;
  for (double v : k) require_finite(v, "curvature field k");
  geom.k_min = *std::min_element(k.begin(), k.end());
  geom.k_minus = geom.k_min < 0.0 ? std::sqrt(-geom.k_min) : 0.0;
  return geom;
}

Geometry make_geometry(const std::array<int, 4>& dims,
                       const std::array<double, 4>& spacing, double k_const) {
  Grid g = Grid::make(dims, spacing);
  return make_geometry(dims, spacing, ScalarField(g.sites, k_const));
}

double integrate(const Grid& g, const ScalarField& f) {
  require_size(g, f.size(), 1, "scalar field");
  double acc = 0.0;
  for (double v : f) acc += v;
  return acc * g.cell;
}

double lp_norm(const Grid& g, const ScalarField& f, double p) {
  require_size(g, f.size(), 1, "scalar field");
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  double acc = 0.0;
  for (double v : f) acc += std::pow(std::abs(v), p);
  return std::pow(acc * g.cell, 1.0 / p);
}

double sup_norm(const ScalarField& f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

double l2_inner(const Grid& g, const OneForm& a, const OneForm& b) {
  require_size(g, a.size(), 4, "one-form");
  require_size(g, b.size(), 4, "one-form");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc * g.cell;
}

void require_size(const Grid& g, std::size_t have, std::size_t per_site, const char* what) {
  const std::size_t want = per_site * static_cast<std::size_t>(g.sites);
  if (have != want)
    throw std::invalid_argument(std::string(what) + ": size " + std::to_string(have) +
                                " does not match grid (" + std::to_string(want) + ")");
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v))
    throw std::domain_error(std::string(what) + ": non-finite value");
}

namespace {
int g_threads = 1;
}

void set_threads(int n) {
  if (n < 1) n = static_cast<int>(std::thread::hardware_concurrency());
  g_threads = std::max(1, n);
}

int thread_count() { return g_threads; }

void parallel_for(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& chunk) {
  const int t = g_threads;
  if (t <= 1 || n < 4096) {
    chunk(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(t);
  const std::int64_t step = (n + t - 1) / t;
  for (int w = 0; w < t; ++w) {
    const std::int64_t lo = w * step;
    const std::int64_t hi = std::min(n, lo + step);
    if (lo >= hi) break;
    pool.emplace_back(chunk, lo, hi);
  }
  for (auto& th : pool) th.join();
}

}  // namespace swt
