#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace knot {

struct OverflowError : std::overflow_error {
  using std::overflow_error::overflow_error;
};

// Integer polynomial in s, coefficients from the constant term upward.
class Poly {
 public:
  Poly() = default;
  Poly(long long c) {  // NOLINT: implicit constants are convenient in matrices
    if (c) c_.push_back(c);
  }
  static Poly from_coeffs(std::vector<long long> low_first) {
    Poly p;
    p.c_ = std::move(low_first);
    p.trim();
    return p;
  }
  static Poly s() { return from_coeffs({0, 1}); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  long long coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0; }
  const std::vector<long long>& coeffs() const { return c_; }
  long long lead() const { return c_.empty() ? 0 : c_.back(); }

  bool operator==(const Poly&) const = default;

  Poly operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = checked(-static_cast<__int128>(x));
    return r;
  }
  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.c_.size(); ++i)
      r.c_[i] = checked(static_cast<__int128>(a.coeff(static_cast<int>(i))) + b.coeff(static_cast<int>(i)));
    r.trim();
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<__int128> acc(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        __int128 t = static_cast<__int128>(a.c_[i]) * b.c_[j];
        acc[i + j] += t;
        if (acc[i + j] > kLimit || acc[i + j] < -kLimit) throw OverflowError("polynomial coefficient overflow");
      }
    Poly r;
    r.c_.reserve(acc.size());
    for (auto v : acc) r.c_.push_back(checked(v));
    r.trim();
    return r;
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  // Exact division; throws if the quotient is not integral or a remainder is left.
  friend Poly exact_div(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (a.is_zero()) return {};
    std::vector<long long> r = a.c_;
    int db = b.degree();
    int dq = a.degree() - db;
    if (dq < 0) throw std::domain_error("inexact polynomial division");
    std::vector<long long> q(dq + 1, 0);
    for (int i = dq; i >= 0; --i) {
      long long top = r[i + db];
      if (top % b.lead() != 0) throw std::domain_error("inexact polynomial division");
      long long f = top / b.lead();
      q[i] = f;
      for (int j = 0; j <= db; ++j)
        r[i + j] = checked(static_cast<__int128>(r[i + j]) - static_cast<__int128>(f) * b.c_[j]);
    }
    for (long long v : r)
      if (v) throw std::domain_error("inexact polynomial division");
    return from_coeffs(std::move(q));
  }

  long long eval(long long x) const {
    __int128 acc = 0;
    for (int i = degree(); i >= 0; --i) acc = static_cast<__int128>(checked(acc)) * x + c_[i];
    return checked(acc);
  }
  long long eval_mod(long long x, long long m) const {
    long long acc = 0;
    for (int i = degree(); i >= 0; --i) acc = ((acc * x + c_[i]) % m + m) % m;
    return acc;
  }

  // Highest degree first.
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      long long v = c_[i];
      if (!v) continue;
      long long a = v < 0 ? -v : v;
      if (v < 0) out += '-';
      else if (!out.empty()) out += '+';
      if (a != 1 || i == 0) out += std::to_string(a);
      if (i >= 1) out += 's';
      if (i >= 2) out += '^' + std::to_string(i);
    }
    return out;
  }

 private:
  static constexpr __int128 kLimit = static_cast<__int128>(INT64_MAX);
  static long long checked(__int128 v) {
    if (v > kLimit || v < -kLimit) throw OverflowError("polynomial coefficient overflow");
    return static_cast<long long>(v);
  }
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<long long> c_;
};

using PolyMatrix = std::vector<std::vector<Poly>>;

// Fraction-free elimination (Bareiss) with row swaps.
inline Poly poly_determinant(PolyMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return Poly(1);
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("matrix is not square");
  Poly prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return Poly();
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
      m[i][k] = Poly();
    }
    prev = m[k][k];
  }
  Poly d = m[n - 1][n - 1];
  return sign < 0 ? -d : d;
}

}  // namespace knot
