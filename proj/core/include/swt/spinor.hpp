#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace swt {

using cplx = std::complex<double>;

// Fiber of the positive spinor bundle: C^2 with the standard hermitian metric.
struct Spinor {
  cplx a{}, b{};

  Spinor() = default;
  Spinor(cplx a_, cplx b_) : a(a_), b(b_) {}

  Spinor operator+(const Spinor& o) const { return {a + o.a, b + o.b}; }
  Spinor operator-(const Spinor& o) const { return {a - o.a, b - o.b}; }
  Spinor operator*(cplx z) const { return {a * z, b * z}; }
  Spinor operator*(double s) const { return {a * s, b * s}; }
  Spinor& operator+=(const Spinor& o) { a += o.a; b += o.b; return *this; }
  Spinor& operator-=(const Spinor& o) { a -= o.a; b -= o.b; return *this; }
};

using SpinorField = std::vector<Spinor>;

// <p, q>: linear in the first slot, conjugate-linear in the second.
inline cplx inner(const Spinor& p, const Spinor& q) {
  return p.a * std::conj(q.a) + p.b * std::conj(q.b);
}
inline double norm_sq(const Spinor& p) { return std::norm(p.a) + std::norm(p.b); }

// Traceless hermitian endomorphism of the fiber (row-major 2x2).
struct Endo {
  cplx m00{}, m01{}, m10{}, m11{};
};

// Self-dual 2-form in the orthonormal basis
// w1 = (e01+e23)/sqrt2, w2 = (e02-e13)/sqrt2, w3 = (e03+e12)/sqrt2.
struct SdTriple {
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;

  SdTriple operator+(const SdTriple& o) const { return {s1 + o.s1, s2 + o.s2, s3 + o.s3}; }
  SdTriple operator-(const SdTriple& o) const { return {s1 - o.s1, s2 - o.s2, s3 - o.s3}; }
  SdTriple operator*(double c) const { return {s1 * c, s2 * c, s3 * c}; }
};

inline double dot(const SdTriple& x, const SdTriple& y) {
  return x.s1 * y.s1 + x.s2 * y.s2 + x.s3 * y.s3;
}
inline double norm_sq(const SdTriple& x) { return dot(x, x); }

// sigma(phi) = phi (x) phi* - (|phi|^2/2) id.
inline Endo sigma(const Spinor& p) {
  const double half = 0.5 * (std::norm(p.a) - std::norm(p.b));
  const cplx off = p.a * std::conj(p.b);
  return {cplx(half, 0.0), off, std::conj(off), cplx(-half, 0.0)};
}

// Coordinates of sigma(phi) in the tau basis: sigma = s1 tau1 + s2 tau2 + s3 tau3.
inline SdTriple sigma_triple(const Spinor& p) {
  const cplx off = p.a * std::conj(p.b);
  return {0.5 * (std::norm(p.a) - std::norm(p.b)), off.real(), -off.imag()};
}

inline double endo_norm_sq(const Endo& e) {
  return std::norm(e.m00) + std::norm(e.m01) + std::norm(e.m10) + std::norm(e.m11);
}

inline Spinor apply(const Endo& e, const Spinor& p) {
  return {e.m00 * p.a + e.m01 * p.b, e.m10 * p.a + e.m11 * p.b};
}

// tau1 = diag(1,-1), tau2 = [[0,1],[1,0]], tau3 = [[0,-i],[i,0]].
// Clifford action of a self-dual form, rho(w) = scale * (w . tau).
inline Endo clifford_sd(const SdTriple& w, double scale = 1.0) {
  return {cplx(scale * w.s1, 0.0), cplx(scale * w.s2, -scale * w.s3),
          cplx(scale * w.s2, scale * w.s3), cplx(-scale * w.s1, 0.0)};
}

inline Spinor clifford_apply(const SdTriple& w, const Spinor& p, double scale = 1.0) {
  const cplx off(w.s2, -w.s3);
  return {(w.s1 * p.a + off * p.b) * scale,
          (std::conj(off) * p.a - w.s1 * p.b) * scale};
}

// Chiral transport matrices s_mu = (1, i tau1, i tau2, i tau3), mapping the
// positive to the negative spinor bundle; s_mu^dag s_nu + s_nu^dag s_mu = 2 delta.
inline Spinor s_apply(int mu, const Spinor& p) {
  const cplx i(0.0, 1.0);
  switch (mu) {
    case 0: return p;
    case 1: return {i * p.a, -i * p.b};
    case 2: return {i * p.b, i * p.a};
    default: return {p.b, -p.a};
  }
}
inline Spinor s_adj_apply(int mu, const Spinor& p) {
  const cplx i(0.0, 1.0);
  switch (mu) {
    case 0: return p;
    case 1: return {-i * p.a, i * p.b};
    case 2: return {-i * p.b, -i * p.a};
    default: return {-p.b, p.a};
  }
}

}  // namespace swt
