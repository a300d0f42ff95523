#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace swt {

using cplx = std::complex<double>;

using ScalarField = std::vector<double>;  // one value per site
using OneForm = std::vector<double>;      // 4*sites, component-major [mu*sites + i]

// Periodic lattice on a flat 4-torus. Site index: x0 fastest,
// idx = x0 + n0*(x1 + n1*(x2 + n2*x3)). Neighbor tables are precomputed.
struct Grid {
  std::array<int, 4> n{};
  std::array<double, 4> h{};
  std::array<double, 4> len{};  // periods L_mu = n_mu * h_mu
  std::int64_t sites = 0;
  double cell = 0.0;    // h0*h1*h2*h3
  double volume = 0.0;  // L0*L1*L2*L3

  std::array<std::vector<std::int32_t>, 4> up{};
  std::array<std::vector<std::int32_t>, 4> dn{};

  static Grid make(const std::array<int, 4>& dims,
                   const std::array<double, 4>& spacing);

  std::int64_t index(const std::array<int, 4>& x) const {
    return x[0] + static_cast<std::int64_t>(n[0]) *
                      (x[1] + static_cast<std::int64_t>(n[1]) *
                                  (x[2] + static_cast<std::int64_t>(n[2]) * x[3]));
  }
  std::array<int, 4> coords(std::int64_t idx) const {
    std::array<int, 4> x{};
    for (int mu = 0; mu < 4; ++mu) {
      x[mu] = static_cast<int>(idx % n[mu]);
      idx /= n[mu];
    }
    return x;
  }
};

// Geometry = grid + scalar curvature field k.
struct Geometry {
  Grid grid;
  ScalarField k;
  double k_min = 0.0;
  double k_minus = 0.0;  // sqrt(max(0, -min k))
};

Geometry make_geometry(const std::array<int, 4>& dims,
                       const std::array<double, 4>& spacing,
                       const ScalarField& k);
Geometry make_geometry(const std::array<int, 4>& dims,
                       const std::array<double, 4>& spacing, double k_const);

// Compensated accumulator. Energy comparisons inside the descent have to
// resolve differences a few ulps above the sum's own magnitude, which plain
// left-to-right accumulation cannot guarantee.
struct Kahan {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

double integrate(const Grid& g, const ScalarField& f);
double lp_norm(const Grid& g, const ScalarField& f, double p);
double sup_norm(const ScalarField& f);

double l2_inner(const Grid& g, const OneForm& a, const OneForm& b);
inline double l2_norm_sq(const Grid& g, const OneForm& a) { return l2_inner(g, a, a); }

void require_size(const Grid& g, std::size_t have, std::size_t per_site,
                  const char* what);
void require_finite(double v, const char* what);

// Deterministic chunked parallelism for pointwise maps. Reductions in this
// library are always sequential; thread count only affects wall time.
void set_threads(int n);
int thread_count();
void parallel_for(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& chunk);

}  // namespace swt
