#pragma once

#include "swt/gauge.hpp"
#include "swt/grid.hpp"
#include "swt/spinor.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace swt {

// Deterministic RNG: the mt19937_64 stream is pinned by the standard and the
// distributions below are hand-rolled so byte-identical reruns are guaranteed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  double uniform() {  // [0, 1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  int uniform_int(int lo, int hi) {  // inclusive
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(eng_() % span);
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

  cplx cnormal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Independent white-noise samples per site/component.
SpinorField random_spinor_field(const Grid& g, Rng& rng, double amp);
OneForm random_one_form(const Grid& g, Rng& rng, double amp);

// Band-limited synthesis: fixed lexicographic Fourier modes |m|_inf <= cutoff
// with coefficients drawn independently of the grid, so refining the grid
// samples the same continuum configuration.
SpinorField smooth_spinor_field(const Grid& g, Rng& rng, double amp, int cutoff = 2);
OneForm smooth_one_form(const Grid& g, Rng& rng, double amp, int cutoff = 2);
ScalarField smooth_scalar_field(const Grid& g, Rng& rng, double amp, int cutoff = 2);

// Random even flux matrix with entries in 2*[-range, range].
FluxMatrix random_even_flux(Rng& rng, int range);

// Smooth gauge transform with windings; the amplitude is rescaled so that no
// link increment reaches the branch cut (keeps the wrap-free regime).
GaugeTransform random_gauge_transform(const Grid& g, Rng& rng, double amp,
                                      int winding_range);

}  // namespace swt
