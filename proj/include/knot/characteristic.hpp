#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "knot/codes.hpp"
#include "knot/diagrams.hpp"
#include "knot/poly.hpp"
#include "knot/shadows.hpp"

namespace knot {

// Numerator P(s) over (s+1)^nu.
struct CharPoly {
  Poly numerator{1};
  int nu = 0;
  bool operator==(const CharPoly&) const = default;
};

// One row per crossing over the strand differences x_i = a_{i+1} - a_i, with
// the x_i treated as independent unknowns. Crossing (in i, over j, sign) gives
// (s+1) x_j + c (x_{j+1} + ... + x_i), c = 1 for sign + and s for sign -,
// indices running forward from j and wrapping.
inline PolyMatrix coloring_system(const Name& nm, const std::vector<int>& signs) {
  const int n = nm.n;
  PolyMatrix m(n, std::vector<Poly>(n));
  StrandPartition sp = strands_of(nm);
  for (int c = 0; c < n; ++c) {
    int i = sp.at[c].in, j = sp.at[c].over;
    Poly k = signs[c] > 0 ? Poly(1) : Poly::s();
    if (i == j) {
      m[c][i] += k;
      continue;
    }
    m[c][j] += Poly::s() + Poly(1);
    for (int t = (j + 1) % n;; t = (t + 1) % n) {
      m[c][t] += k;
      if (t == i) break;
    }
  }
  return m;
}

// The crossing relations on strand colours a_0..a_{n-1}:
// sign +: (s+1) a_over - s a_in - a_out = 0; sign -: (s+1) a_over - a_in - s a_out = 0.
inline PolyMatrix strand_relations(const Name& nm, const std::vector<int>& signs) {
  const int n = nm.n;
  PolyMatrix m(n, std::vector<Poly>(n));
  StrandPartition sp = strands_of(nm);
  const Poly s = Poly::s(), s1 = Poly::s() + Poly(1);
  for (int c = 0; c < n; ++c) {
    const auto& x = sp.at[c];
    m[c][x.over] += s1;
    m[c][x.in] -= signs[c] > 0 ? s : Poly(1);
    m[c][x.out] -= signs[c] > 0 ? Poly(1) : s;
  }
  return m;
}

// Strips powers of s and signs, then picks the smaller of P and its reversal
// (highest coefficient first).
inline Poly normalize_numerator(const Poly& p) {
  if (p.is_zero()) return p;
  std::vector<long long> c = p.coeffs();
  std::size_t lo = 0;
  while (c[lo] == 0) ++lo;
  c.erase(c.begin(), c.begin() + static_cast<long>(lo));
  std::vector<long long> hi(c.rbegin(), c.rend());
  std::vector<long long> rev = c;
  if (hi.front() < 0)
    for (auto& v : hi) v = -v;
  if (rev.front() < 0)
    for (auto& v : rev) v = -v;
  const auto& best = std::min(hi, rev);
  return Poly::from_coeffs(std::vector<long long>(best.rbegin(), best.rend()));
}

inline CharPoly reduce_characteristic(Poly det, int nu) {
  CharPoly cp;
  const Poly s1 = Poly::s() + Poly(1);
  while (nu > 0 && !det.is_zero() && det.eval(-1) == 0) {
    det = exact_div(det, s1);
    --nu;
  }
  cp.numerator = normalize_numerator(det);
  cp.nu = nu;
  return cp;
}

inline Poly characteristic_determinant(const Name& nm) {
  if (nm.n == 0) return Poly(1);
  return poly_determinant(coloring_system(nm, signs_of(nm)));
}

inline CharPoly characteristic_of(const Name& nm) {
  if (nm.n == 0) return {};
  return reduce_characteristic(characteristic_determinant(nm), nm.n);
}

// The principal (n-1)-minor of the strand relations; it is the Alexander
// polynomial at t = -s up to units and survives every Reidemeister move.
inline Poly alexander_form(const Name& nm) {
  if (nm.n <= 1) return Poly(1);
  PolyMatrix m = strand_relations(nm, signs_of(nm));
  m.pop_back();
  for (auto& row : m) row.pop_back();
  return normalize_numerator(poly_determinant(std::move(m)));
}

enum class Chirality { Chiral, Inconclusive };

inline Chirality chirality_check(const CharPoly& cp) {
  const auto& c = cp.numerator.coeffs();
  return std::equal(c.begin(), c.end(), c.rbegin()) ? Chirality::Inconclusive : Chirality::Chiral;
}

inline int crossing_bound(const CharPoly& cp) { return cp.nu; }

inline std::string format_characteristic(const CharPoly& cp) {
  if (cp.nu == 0) return cp.numerator.to_string();
  return "(" + cp.numerator.to_string() + ")(s+1)^-" + std::to_string(cp.nu);
}

// Reads sums of terms like 8s^5, -s, 3.
inline Poly parse_poly(std::string_view text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t.empty()) throw ParseError("empty polynomial");
  std::vector<long long> c;
  std::size_t i = 0;
  while (i < t.size()) {
    long long sign = 1;
    if (t[i] == '+' || t[i] == '-') {
      if (t[i] == '-') sign = -1;
      ++i;
    }
    long long coef = 1;
    bool digits = false;
    if (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) {
      coef = 0;
      while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) coef = coef * 10 + (t[i++] - '0');
      digits = true;
    }
    int deg = 0;
    if (i < t.size() && t[i] == 's') {
      ++i;
      deg = 1;
      if (i < t.size() && t[i] == '^') {
        ++i;
        if (i >= t.size() || !std::isdigit(static_cast<unsigned char>(t[i]))) throw ParseError("bad exponent");
        deg = 0;
        while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) deg = deg * 10 + (t[i++] - '0');
      }
    } else if (!digits) {
      throw ParseError("bad polynomial term in '" + t + "'");
    }
    if (static_cast<int>(c.size()) <= deg) c.resize(deg + 1, 0);
    c[deg] += sign * coef;
  }
  return Poly::from_coeffs(std::move(c));
}

// Accepts "P" or "(P)(s+1)^-k"; the numerator is kept as written.
inline CharPoly parse_characteristic(std::string_view text) {
  CharPoly cp;
  const std::string_view tail = ")(s+1)^-";
  auto at = text.find(tail);
  if (at == std::string_view::npos) {
    cp.numerator = parse_poly(text);
    return cp;
  }
  if (text.empty() || text.front() != '(') throw ParseError("bad characteristic");
  cp.numerator = parse_poly(text.substr(1, at - 1));
  std::string_view e = text.substr(at + tail.size());
  if (e.empty()) throw ParseError("missing exponent");
  cp.nu = 0;
  for (char ch : e) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) throw ParseError("bad exponent");
    cp.nu = cp.nu * 10 + (ch - '0');
  }
  return cp;
}

// Same value modulo units s^m, sign and reversal.
inline bool same_modulo_units(const Poly& a, const Poly& b) {
  return normalize_numerator(a) == normalize_numerator(b);
}

}  // namespace knot
