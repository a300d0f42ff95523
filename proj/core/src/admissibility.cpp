#include "swt/admissibility.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

namespace swt {

namespace {

IntersectionForm from_rows(std::string name, int rank, std::vector<std::int64_t> q) {
  IntersectionForm f;
  f.name = std::move(name);
  f.rank = rank;
  f.q = std::move(q);
  return f;
}

IntersectionForm diag_form(const std::vector<std::int64_t>& d) {
  const int r = static_cast<int>(d.size());
  std::vector<std::int64_t> q(static_cast<std::size_t>(r) * r, 0);
  for (int i = 0; i < r; ++i) q[static_cast<std::size_t>(i) * r + i] = d[i];
  std::string name = "diag(";
  for (int i = 0; i < r; ++i) name += (i ? "," : "") + std::to_string(d[i]);
  name += ")";
  return from_rows(std::move(name), r, std::move(q));
}

IntersectionForm hyperbolic_form(int copies) {
  const int r = 2 * copies;
  std::vector<std::int64_t> q(static_cast<std::size_t>(r) * r, 0);
  for (int c = 0; c < copies; ++c) {
    q[static_cast<std::size_t>(2 * c) * r + 2 * c + 1] = 1;
    q[static_cast<std::size_t>(2 * c + 1) * r + 2 * c] = 1;
  }
  return from_rows("hyperbolic(" + std::to_string(copies) + ")", r, std::move(q));
}

IntersectionForm e8_form() {
  // Cartan matrix of E8; even, unimodular, positive definite.
  static constexpr int edges[][2] = {{0, 2}, {2, 3}, {3, 4}, {4, 5},
                                     {5, 6}, {6, 7}, {1, 3}};
  std::vector<std::int64_t> q(64, 0);
  for (int i = 0; i < 8; ++i) q[static_cast<std::size_t>(i) * 8 + i] = 2;
  for (const auto& e : edges) {
    q[static_cast<std::size_t>(e[0]) * 8 + e[1]] = -1;
    q[static_cast<std::size_t>(e[1]) * 8 + e[0]] = -1;
  }
  return from_rows("e8", 8, std::move(q));
}

IntersectionForm negate(IntersectionForm f) {
  for (auto& v : f.q) v = -v;
  f.name = "neg(" + f.name + ")";
  return f;
}

IntersectionForm direct_sum(const std::vector<IntersectionForm>& parts) {
  int r = 0;
  for (const auto& p : parts) r += p.rank;
  std::vector<std::int64_t> q(static_cast<std::size_t>(r) * r, 0);
  int off = 0;
  std::string name = "sum(";
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const auto& p = parts[k];
    for (int i = 0; i < p.rank; ++i)
      for (int j = 0; j < p.rank; ++j)
        q[static_cast<std::size_t>(off + i) * r + (off + j)] = p.at(i, j);
    off += p.rank;
    name += (k ? "," : "") + p.name;
  }
  name += ")";
  return from_rows(std::move(name), r, std::move(q));
}

struct Parser {
  const std::string& s;
  std::size_t pos = 0;

  explicit Parser(const std::string& str) : s(str) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool consume(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!consume(c))
      throw std::invalid_argument("form spec: expected '" + std::string(1, c) +
                                  "' at position " + std::to_string(pos) + " in '" + s + "'");
  }
  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    if (start == pos)
      throw std::invalid_argument("form spec: expected name at position " +
                                  std::to_string(pos) + " in '" + s + "'");
    std::string out = s.substr(start, pos - start);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
  }
  std::int64_t integer() {
    skip_ws();
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos || (pos - start == 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
      throw std::invalid_argument("form spec: expected integer at position " +
                                  std::to_string(start) + " in '" + s + "'");
    return std::stoll(s.substr(start, pos - start));
  }

  IntersectionForm form() {
    const std::string head = ident();
    if (head == "e8") return e8_form();
    if (head == "torus") return torus_form();
    if (head == "k3")
      return direct_sum({hyperbolic_form(3), negate(e8_form()), negate(e8_form())});
    if (head == "diag") {
      expect('(');
      std::vector<std::int64_t> d;
      d.push_back(integer());
      while (consume(',')) d.push_back(integer());
      expect(')');
      for (std::int64_t v : d)
        if (v != 1 && v != -1)
          throw std::invalid_argument("form spec: diag entries must be +-1 for unimodularity");
      return diag_form(d);
    }
    if (head == "hyperbolic") {
      expect('(');
      const std::int64_t n = integer();
      expect(')');
      if (n < 1 || n > 16)
        throw std::invalid_argument("form spec: hyperbolic copies must be in [1,16]");
      return hyperbolic_form(static_cast<int>(n));
    }
    if (head == "neg") {
      expect('(');
      IntersectionForm inner = form();
      expect(')');
      return negate(std::move(inner));
    }
    if (head == "sum") {
      expect('(');
      std::vector<IntersectionForm> parts;
      parts.push_back(form());
      while (consume(',')) parts.push_back(form());
      expect(')');
      return direct_sum(parts);
    }
    throw std::invalid_argument("form spec: unknown form '" + head + "'");
  }
};

}  // namespace

IntersectionForm torus_form() {
  // Wedge pairing of the six coordinate planes; dual pairs (01,23), (02,13),
  // (03,12) with signs +, -, + from the orientation e0123.
  std::vector<std::int64_t> q(36, 0);
  auto set = [&](int i, int j, std::int64_t v) {
    q[static_cast<std::size_t>(i) * 6 + j] = v;
    q[static_cast<std::size_t>(j) * 6 + i] = v;
  };
  set(0, 5, 1);
  set(1, 4, -1);
  set(2, 3, 1);
  IntersectionForm f = from_rows("torus", 6, std::move(q));
  return f;
}

IntersectionForm standard_form(const std::string& spec) {
  Parser p(spec);
  IntersectionForm f = p.form();
  p.skip_ws();
  if (p.pos != spec.size())
    throw std::invalid_argument("form spec: trailing characters in '" + spec + "'");
  validate_unimodular(f);
  return f;
}

std::int64_t determinant(const IntersectionForm& f) {
  // Fraction-free Bareiss elimination with partial pivoting (sign tracked).
  const int n = f.rank;
  std::vector<std::int64_t> m = f.q;
  auto at = [&](int i, int j) -> std::int64_t& {
    return m[static_cast<std::size_t>(i) * n + j];
  };
  std::int64_t prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int piv = -1;
      for (int r = k + 1; r < n; ++r)
        if (at(r, k) != 0) {
          piv = r;
          break;
        }
      if (piv < 0) return 0;
      for (int c = 0; c < n; ++c) std::swap(at(k, c), at(piv, c));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

int signature(const IntersectionForm& f) {
  // Eigenvalue signs via Jacobi iteration on a double copy; entries are small
  // integers so this is robust for the ranks involved here.
  const int n = f.rank;
  std::vector<double> a(f.q.begin(), f.q.end());
  auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    if (off < 1e-18) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(at(p, q)) < 1e-14) continue;
        const double theta = 0.5 * std::atan2(2.0 * at(p, q), at(q, q) - at(p, p));
        const double c = std::cos(theta), s = std::sin(theta);
        for (int i = 0; i < n; ++i) {
          const double aip = at(i, p), aiq = at(i, q);
          at(i, p) = c * aip - s * aiq;
          at(i, q) = s * aip + c * aiq;
        }
        for (int i = 0; i < n; ++i) {
          const double api = at(p, i), aqi = at(q, i);
          at(p, i) = c * api - s * aqi;
          at(q, i) = s * api + c * aqi;
        }
      }
  }
  int sig = 0;
  for (int i = 0; i < n; ++i) sig += (at(i, i) > 0.0) ? 1 : -1;
  return sig;
}

bool is_even_form(const IntersectionForm& f) {
  for (int i = 0; i < f.rank; ++i)
    if (f.at(i, i) % 2 != 0) return false;
  return true;
}

void validate_unimodular(const IntersectionForm& f) {
  if (f.rank < 1) throw std::invalid_argument("form: empty");
  if (f.q.size() != static_cast<std::size_t>(f.rank) * f.rank)
    throw std::invalid_argument("form: matrix size does not match rank");
  for (int i = 0; i < f.rank; ++i)
    for (int j = 0; j < i; ++j)
      if (f.at(i, j) != f.at(j, i)) throw std::invalid_argument("form: not symmetric");
  const std::int64_t det = determinant(f);
  if (det != 1 && det != -1)
    throw std::invalid_argument("form '" + f.name + "': determinant " +
                                std::to_string(det) + " is not +-1");
}

std::int64_t q_value(const IntersectionForm& f, const std::vector<std::int64_t>& alpha) {
  if (alpha.size() != static_cast<std::size_t>(f.rank))
    throw std::invalid_argument("q_value: alpha size does not match form rank");
  std::int64_t acc = 0;
  for (int i = 0; i < f.rank; ++i) {
    std::int64_t row = 0;
    for (int j = 0; j < f.rank; ++j) row += f.at(i, j) * alpha[j];
    acc += alpha[i] * row;
  }
  return acc;
}

bool is_characteristic(const IntersectionForm& f, const std::vector<std::int64_t>& alpha) {
  if (alpha.size() != static_cast<std::size_t>(f.rank))
    throw std::invalid_argument("is_characteristic: alpha size does not match form rank");
  for (int i = 0; i < f.rank; ++i) {
    std::int64_t row = 0;
    for (int j = 0; j < f.rank; ++j) row += f.at(i, j) * alpha[j];
    if (((row - f.at(i, i)) % 2 + 2) % 2 != 0) return false;
  }
  return true;
}

Window admissible_window(double volume, double k_minus) {
  if (!(volume > 0.0)) throw std::invalid_argument("window: volume must be > 0");
  if (k_minus < 0.0) throw std::invalid_argument("window: k_minus must be >= 0");
  const double scale = volume * k_minus * k_minus * k_minus * k_minus;
  Window w;
  w.lo = -scale / (std::numbers::pi * std::numbers::pi);
  w.hi = 0.25 * scale;
  return w;
}

bool is_admissible(const IntersectionForm& f, const std::vector<std::int64_t>& alpha,
                   const Window& w) {
  if (!is_characteristic(f, alpha))
    throw NotCharacteristicError("alpha is not a characteristic element of '" + f.name + "'");
  return w.contains(static_cast<double>(q_value(f, alpha)));
}

std::vector<AdmissibleClass> enumerate_admissible(const IntersectionForm& f, int bound,
                                                  const Window& w,
                                                  EnumerationStats* stats) {
  if (bound < 0) throw std::invalid_argument("enumerate_admissible: bound must be >= 0");
  const double log_points = f.rank * std::log(2.0 * bound + 1.0);
  if (log_points > std::log(1e8))
    throw EnumerationBudgetError("enumeration budget exceeded: (2*" +
                                 std::to_string(bound) + "+1)^" + std::to_string(f.rank) +
                                 " > 1e8 lattice points");
  std::vector<AdmissibleClass> out;
  EnumerationStats local;
  std::vector<std::int64_t> alpha(f.rank, -bound);
  for (;;) {
    ++local.scanned;
    if (is_characteristic(f, alpha)) {
      ++local.characteristic;
      const std::int64_t q = q_value(f, alpha);
      if (w.contains(static_cast<double>(q))) out.push_back({alpha, q});
    }
    int i = f.rank - 1;
    while (i >= 0 && alpha[i] == bound) {
      alpha[i] = -bound;
      --i;
    }
    if (i < 0) break;
    ++alpha[i];
  }
  if (stats) *stats = local;
  return out;
}

}  // namespace swt
