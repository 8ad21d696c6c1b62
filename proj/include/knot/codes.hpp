#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace knot {

inline constexpr int kMaxCrossings = 16;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A knot projection. Pair k (0-based) joins odd label 2k+1 with even label even[k];
// bit k of odd_over is set when the odd label is the over passage.
struct Name {
  int n = 0;
  std::array<std::uint8_t, kMaxCrossings> even{};
  std::uint32_t odd_over = 0;

  bool odd_is_over(int k) const { return (odd_over >> k) & 1u; }
  bool operator==(const Name& o) const {
    if (n != o.n || odd_over != o.odd_over) return false;
    return std::equal(even.begin(), even.begin() + n, o.even.begin());
  }
};

// Preference order: "less" is more preferred.
inline std::strong_ordering compare_names(const Name& a, const Name& b) {
  if (a.n != b.n) return a.n <=> b.n;
  for (int k = 0; k < a.n; ++k)
    if (a.even[k] != b.even[k]) return a.even[k] <=> b.even[k];
  for (int k = 0; k < a.n; ++k) {
    bool x = a.odd_is_over(k), y = b.odd_is_over(k);
    if (x != y) return x ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

struct NamePreferred {
  bool operator()(const Name& a, const Name& b) const { return compare_names(a, b) < 0; }
};

struct NameHash {
  std::size_t operator()(const Name& nm) const {
    std::uint64_t h = 1469598103934665603ull ^ static_cast<std::uint64_t>(nm.n);
    for (int k = 0; k < nm.n; ++k) h = (h ^ nm.even[k]) * 1099511628211ull;
    h = (h ^ nm.odd_over) * 1099511628211ull;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

// Position form of a name: position t (label t+1) visits crossing cross[t];
// bit t of over is set when that passage is over.
struct Word {
  int n = 0;
  std::array<std::uint8_t, 2 * kMaxCrossings> cross{};
  std::uint32_t over = 0;

  int len() const { return 2 * n; }
  bool is_over(int t) const { return (over >> t) & 1u; }
};

inline Word to_word(const Name& nm) {
  Word w;
  w.n = nm.n;
  for (int k = 0; k < nm.n; ++k) {
    int e = nm.even[k] - 1;
    w.cross[2 * k] = static_cast<std::uint8_t>(k);
    w.cross[e] = static_cast<std::uint8_t>(k);
    if (nm.odd_is_over(k)) w.over |= 1u << (2 * k);
    else w.over |= 1u << e;
  }
  return w;
}

// partner[t] = the other position visiting the same crossing.
inline std::array<std::uint8_t, 2 * kMaxCrossings> partners(const Word& w) {
  std::array<std::uint8_t, 2 * kMaxCrossings> p{};
  std::array<int, kMaxCrossings> first;
  first.fill(-1);
  for (int t = 0; t < w.len(); ++t) {
    int c = w.cross[t];
    if (first[c] < 0) {
      first[c] = t;
    } else {
      p[t] = static_cast<std::uint8_t>(first[c]);
      p[first[c]] = static_cast<std::uint8_t>(t);
    }
  }
  return p;
}

inline std::array<std::uint8_t, 2 * kMaxCrossings> partners(const Name& nm) {
  std::array<std::uint8_t, 2 * kMaxCrossings> p{};
  for (int k = 0; k < nm.n; ++k) {
    p[2 * k] = static_cast<std::uint8_t>(nm.even[k] - 1);
    p[nm.even[k] - 1] = static_cast<std::uint8_t>(2 * k);
  }
  return p;
}

// Reads a word whose paired positions have opposite parity. Crossing ids are
// renumbered by the odd label; roles flip globally if label 1 ends up under.
inline Name name_from_word(const Word& w) {
  if (w.n > kMaxCrossings) throw std::length_error("too many crossings");
  Name nm;
  nm.n = w.n;
  if (w.n == 0) return nm;
  auto p = partners(w);
  bool flip = !w.is_over(0);
  for (int k = 0; k < w.n; ++k) {
    int t = 2 * k;
    if (p[t] % 2 == 0) throw std::logic_error("word pairs positions of equal parity");
    nm.even[k] = static_cast<std::uint8_t>(p[t] + 1);
    if (w.is_over(t) != flip) nm.odd_over |= 1u << k;
  }
  return nm;
}

inline Name mirror_roles(Name nm) {
  nm.odd_over = ~nm.odd_over & ((nm.n >= 32) ? ~0u : ((1u << nm.n) - 1u));
  return nm;
}

inline bool valid_name(const Name& nm) {
  if (nm.n < 0 || nm.n > kMaxCrossings) return false;
  std::uint32_t seen = 0;
  for (int k = 0; k < nm.n; ++k) {
    int e = nm.even[k];
    if (e < 2 || e > 2 * nm.n || e % 2 != 0) return false;
    if (seen & (1u << e / 2)) return false;
    seen |= 1u << e / 2;
  }
  if (nm.odd_over >> nm.n) return false;
  return nm.n == 0 || nm.odd_is_over(0);
}

inline Name parse_name(std::string_view text) {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto expect = [&](char c) {
    skip();
    if (i >= text.size() || text[i] != c) throw ParseError(std::string("expected '") + c + "'");
    ++i;
  };
  auto number = [&] {
    skip();
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
      throw ParseError("expected label");
    long v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + (text[i] - '0');
      if (v > 1000) throw ParseError("label out of range");
      ++i;
    }
    return static_cast<int>(v);
  };
  std::vector<std::pair<int, int>> pairs;
  expect('{');
  skip();
  if (i < text.size() && text[i] == '}') {
    ++i;
  } else {
    for (;;) {
      expect('(');
      int o = number();
      expect(',');
      int u = number();
      expect(')');
      pairs.emplace_back(o, u);
      skip();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      expect('}');
      break;
    }
  }
  skip();
  if (i != text.size()) throw ParseError("trailing characters");
  int n = static_cast<int>(pairs.size());
  if (n > kMaxCrossings) throw ParseError("too many crossings");
  Name nm;
  nm.n = n;
  std::vector<int> used(2 * n + 1, 0);
  for (auto [o, u] : pairs) {
    for (int v : {o, u}) {
      if (v < 1 || v > 2 * n) throw ParseError("label out of range: " + std::to_string(v));
      if (used[v]++) throw ParseError("duplicate label: " + std::to_string(v));
    }
    if ((o + u) % 2 == 0) throw ParseError("pair joins labels of equal parity");
    int odd = (o % 2) ? o : u;
    int ev = (o % 2) ? u : o;
    int k = (odd - 1) / 2;
    nm.even[k] = static_cast<std::uint8_t>(ev);
    if (odd == o) nm.odd_over |= 1u << k;
  }
  if (n > 0 && !nm.odd_is_over(0)) throw ParseError("label 1 must be an over passage");
  return nm;
}

inline std::string format_name(const Name& nm) {
  std::string s = "{";
  for (int k = 0; k < nm.n; ++k) {
    if (k) s += ',';
    int odd = 2 * k + 1, ev = nm.even[k];
    s += '(';
    s += std::to_string(nm.odd_is_over(k) ? odd : ev);
    s += ',';
    s += std::to_string(nm.odd_is_over(k) ? ev : odd);
    s += ')';
  }
  return s + "}";
}

// Relabelling that sends old position `start` to label 1, walking forward or backward.
struct Relabel {
  int start = 0;
  bool reverse = false;
};

inline Name relabel(const Name& nm, Relabel r) {
  Word w = to_word(nm);
  int L = w.len();
  Word v;
  v.n = nm.n;
  for (int t = 0; t < L; ++t) {
    int nt = r.reverse ? ((r.start - t) % L + L) % L : ((t - r.start) % L + L) % L;
    v.cross[nt] = w.cross[t];
    if (w.is_over(t)) v.over |= 1u << nt;
  }
  return name_from_word(v);
}

inline std::vector<Name> name_variants(const Name& nm) {
  std::vector<Name> out;
  for (int st = 0; st < 2 * nm.n; ++st)
    for (bool rev : {false, true}) {
      Name v = relabel(nm, {st, rev});
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
  if (nm.n == 0) out.push_back(nm);
  return out;
}

namespace detail {

// Compares the variant (start, reverse) of a word against `best`, stopping at the
// first difference. Returns <0 if the variant is preferred.
inline int compare_variant(const Word& w, const std::array<std::uint8_t, 2 * kMaxCrossings>& p,
                           int start, bool reverse, const Name& best, bool roles) {
  int L = w.len();
  auto old_pos = [&](int nt) {
    int t = reverse ? start - nt : start + nt;
    t %= L;
    return t < 0 ? t + L : t;
  };
  auto new_pos = [&](int t) {
    int nt = reverse ? start - t : t - start;
    nt %= L;
    return nt < 0 ? nt + L : nt;
  };
  for (int k = 0; k < w.n; ++k) {
    int e = new_pos(p[old_pos(2 * k)]) + 1;
    if (e != best.even[k]) return e < best.even[k] ? -1 : 1;
  }
  if (!roles) return 0;
  bool flip = !w.is_over(start);
  for (int k = 0; k < w.n; ++k) {
    bool ov = w.is_over(old_pos(2 * k)) != flip;
    bool bo = best.odd_is_over(k);
    if (ov != bo) return ov ? -1 : 1;
  }
  return 0;
}

}  // namespace detail

inline Name canonicalize(const Name& nm) {
  if (nm.n == 0) return nm;
  Word w = to_word(nm);
  auto p = partners(w);
  Name best = nm;
  for (int st = 0; st < w.len(); ++st)
    for (bool rev : {false, true}) {
      if (st == 0 && !rev) continue;
      if (detail::compare_variant(w, p, st, rev, best, true) < 0) best = relabel(nm, {st, rev});
    }
  return best;
}

// Canonical name of an arbitrary word (paired positions of opposite parity).
inline Name canonical_from_word(const Word& w) { return canonicalize(name_from_word(w)); }

inline bool is_canonical(const Name& nm) {
  if (nm.n == 0) return true;
  Word w = to_word(nm);
  auto p = partners(w);
  for (int st = 0; st < w.len(); ++st)
    for (bool rev : {false, true}) {
      if (st == 0 && !rev) continue;
      if (detail::compare_variant(w, p, st, rev, nm, true) < 0) return false;
    }
  return true;
}

// True when some label interval other than the whole circle is closed under
// pairing and holds strictly between 1 and n-1 pairs.
inline bool is_connected_sum(const Name& nm) {
  int L = 2 * nm.n;
  auto p = partners(nm);
  for (int a = 0; a < L; ++a) {
    int lo = a, hi = a;
    for (int b = a; b < L; ++b) {
      lo = std::min(lo, static_cast<int>(p[b]));
      hi = std::max(hi, static_cast<int>(p[b]));
      if (a == 0 && b == L - 1) break;
      int inside = (b - a + 1) / 2;
      if (lo >= a && hi <= b && (b - a + 1) % 2 == 0 && inside > 1 && inside < nm.n - 1)
        return true;
    }
  }
  return false;
}

// Signed crossing index (1-based) per position: + for over, - for under.
inline std::vector<int> to_gauss_word(const Name& nm) {
  Word w = to_word(nm);
  std::vector<int> g(w.len());
  for (int t = 0; t < w.len(); ++t) {
    int c = w.cross[t] + 1;
    g[t] = w.is_over(t) ? c : -c;
  }
  return g;
}

}  // namespace knot
