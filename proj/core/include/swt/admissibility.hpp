#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace swt {

// Symmetric unimodular bilinear form on Z^rank, row-major integer matrix.
struct IntersectionForm {
  std::string name;
  int rank = 0;
  std::vector<std::int64_t> q;

  std::int64_t at(int i, int j) const { return q[static_cast<std::size_t>(i) * rank + j]; }
};

// Parses diag(c1,...,cn) | hyperbolic(n) | e8 | k3 | torus | neg(X) | sum(X,Y,...).
IntersectionForm standard_form(const std::string& spec);

// Intersection form of the 4-torus on H^2 = Z^6 in the plane order
// 01,02,03,12,13,23 (wedge pairing; even, signature 0).
IntersectionForm torus_form();

std::int64_t determinant(const IntersectionForm& f);  // exact, Bareiss
int signature(const IntersectionForm& f);
bool is_even_form(const IntersectionForm& f);
void validate_unimodular(const IntersectionForm& f);  // throws on failure

std::int64_t q_value(const IntersectionForm& f, const std::vector<std::int64_t>& alpha);

// alpha is characteristic iff q(alpha, x) == q(x, x) mod 2 for all x,
// equivalently (Q alpha)_i == Q_ii mod 2 for every i.
bool is_characteristic(const IntersectionForm& f, const std::vector<std::int64_t>& alpha);

struct NotCharacteristicError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EnumerationBudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Closed interval of admissible self-intersections alpha^2, derived from the
// volume and the curvature defect kminus: [-1/pi^2, 1/4] * v * kminus^4;
// degenerate [0, 0] when kminus == 0.
struct Window {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return x >= lo && x <= hi; }
};
Window admissible_window(double volume, double k_minus);

// Throws NotCharacteristicError when alpha is not characteristic for f.
bool is_admissible(const IntersectionForm& f, const std::vector<std::int64_t>& alpha,
                   const Window& w);

struct AdmissibleClass {
  std::vector<std::int64_t> alpha;
  std::int64_t q = 0;
};

struct EnumerationStats {
  std::int64_t scanned = 0;
  std::int64_t characteristic = 0;
};

// Scans the box |alpha_i| <= bound in lexicographic order. Throws
// EnumerationBudgetError when (2 bound + 1)^rank exceeds 10^8 points.
std::vector<AdmissibleClass> enumerate_admissible(const IntersectionForm& f, int bound,
                                                  const Window& w,
                                                  EnumerationStats* stats = nullptr);

}  // namespace swt
