#pragma once

#include <algorithm>
#include <bit>
#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "knot/codes.hpp"
#include "knot/shadows.hpp"

namespace knot {

enum class MoveKind { R1, R2, R3 };

struct MoveSite {
  MoveKind kind = MoveKind::R1;
  std::vector<int> crossings;  // pair indices
  std::vector<int> positions;  // label - 1 of every passage involved
};

namespace detail {

inline Word drop_positions(const Word& w, std::uint32_t dropped) {
  Word v;
  v.n = w.n - std::popcount(dropped) / 2;
  int j = 0;
  for (int t = 0; t < w.len(); ++t) {
    if ((dropped >> t) & 1u) continue;
    v.cross[j] = w.cross[t];
    if (w.is_over(t)) v.over |= 1u << j;
    ++j;
  }
  return v;
}

inline int wrap(int t, int L) { return ((t % L) + L) % L; }

}  // namespace detail

inline std::vector<MoveSite> r1_sites(const Word& w) {
  std::vector<MoveSite> out;
  const int L = w.len();
  if (w.n == 1) {
    out.push_back({MoveKind::R1, {w.cross[0]}, {0, 1}});
    return out;
  }
  for (int t = 0; t < L; ++t) {
    int u = (t + 1) % L;
    if (w.cross[t] == w.cross[u]) out.push_back({MoveKind::R1, {w.cross[t]}, {t, u}});
  }
  return out;
}

// Edge (t, t+1) between distinct crossings with equal roles whose other
// passages are consecutive too.
inline std::vector<MoveSite> r2_sites(const Word& w) {
  std::vector<MoveSite> out;
  const int L = w.len();
  if (w.n < 2) return out;
  auto p = partners(w);
  std::set<std::uint32_t> seen;
  for (int t = 0; t < L; ++t) {
    int u = (t + 1) % L;
    if (w.cross[t] == w.cross[u] || w.is_over(t) != w.is_over(u)) continue;
    int a = p[t], b = p[u];
    if (detail::wrap(a - b, L) != 1 && detail::wrap(b - a, L) != 1) continue;
    std::uint32_t mask = (1u << t) | (1u << u) | (1u << a) | (1u << b);
    if (std::popcount(mask) != 4 || !seen.insert(mask).second) continue;
    out.push_back({MoveKind::R2, {w.cross[t], w.cross[u]}, {t, u, a, b}});
  }
  return out;
}

// Triangles: edge (x, x+1) joins A and B; A's other passage A' and B's other
// passage B' have neighbours A'+dA and B'+dB on one crossing C. Some side of
// the triangle must run over both of its crossings.
inline std::vector<MoveSite> r3_sites(const Word& w) {
  std::vector<MoveSite> out;
  const int L = w.len();
  if (w.n < 3) return out;
  auto p = partners(w);
  std::set<std::array<int, 3>> seen;
  for (int x = 0; x < L; ++x) {
    int x1 = (x + 1) % L;
    int A = w.cross[x], B = w.cross[x1];
    if (A == B) continue;
    int a = p[x], b = p[x1];
    for (int dA : {1, -1})
      for (int dB : {1, -1}) {
        int ca = detail::wrap(a + dA, L), cb = detail::wrap(b + dB, L);
        if (ca == cb) continue;
        int C = w.cross[ca];
        if (C != w.cross[cb] || C == A || C == B) continue;
        std::uint32_t mask = (1u << x) | (1u << x1) | (1u << a) | (1u << b) | (1u << ca) | (1u << cb);
        if (std::popcount(mask) != 6) continue;
        bool oo = (w.is_over(x) && w.is_over(x1)) || (w.is_over(a) && w.is_over(ca)) ||
                  (w.is_over(b) && w.is_over(cb));
        if (!oo) continue;
        // a small word can hold several triangles on the same six positions
        std::array<int, 3> sides{std::min(x, x1) * L + std::max(x, x1), std::min(a, ca) * L + std::max(a, ca),
                                 std::min(b, cb) * L + std::max(b, cb)};
        std::sort(sides.begin(), sides.end());
        if (!seen.insert(sides).second) continue;
        out.push_back({MoveKind::R3, {A, B, C}, {x, x1, a, ca, b, cb}});
      }
  }
  return out;
}

// Deletes the crossings of an R1 or R2 site.
inline Word apply_reduction(const Word& w, const MoveSite& s) {
  std::uint32_t mask = 0;
  for (int t : s.positions) mask |= 1u << t;
  return detail::drop_positions(w, mask);
}

// Slides a strand across the triangle: each side of the triangle visits its
// two crossings in the opposite order afterwards.
inline Word apply_r3(const Word& w, const MoveSite& s) {
  Word v = w;
  for (int e = 0; e < 3; ++e) {
    int t = s.positions[2 * e], u = s.positions[2 * e + 1];
    std::swap(v.cross[t], v.cross[u]);
    bool ot = w.is_over(t), ou = w.is_over(u);
    v.over &= ~((1u << t) | (1u << u));
    if (ot) v.over |= 1u << u;
    if (ou) v.over |= 1u << t;
  }
  return v;
}

struct MoveStats {
  std::uint64_t undrawable_r2 = 0;
  std::uint64_t undrawable_r3 = 0;
};

namespace detail {

template <class Out>
void collect(const std::vector<MoveSite>& sites, const Word& w, bool r3, Out& out, MoveStats* stats) {
  for (const auto& s : sites) {
    Word v = r3 ? apply_r3(w, s) : apply_reduction(w, s);
    if (!is_realizable(v)) {
      if (stats) ++(r3 ? stats->undrawable_r3 : stats->undrawable_r2);
      continue;
    }
    Name c = canonical_from_word(v);
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
}

}  // namespace detail

inline std::vector<Name> r1_reductions(const Name& nm) {
  std::vector<Name> out;
  if (nm.n == 0) return out;
  Word w = to_word(nm);
  detail::collect(r1_sites(w), w, false, out, nullptr);
  return out;
}

inline std::vector<Name> r2_reductions(const Name& nm, MoveStats* stats = nullptr) {
  std::vector<Name> out;
  if (nm.n == 0) return out;
  Word w = to_word(nm);
  detail::collect(r2_sites(w), w, false, out, stats);
  return out;
}

inline std::vector<Name> r3_variants(const Name& nm, MoveStats* stats = nullptr) {
  std::vector<Name> out;
  if (nm.n == 0) return out;
  Word w = to_word(nm);
  detail::collect(r3_sites(w), w, true, out, stats);
  return out;
}

// First crossing-reducing successor: an R1 result if there is one, else R2.
inline std::optional<Name> first_reduction(const Name& nm, MoveStats* stats = nullptr) {
  if (nm.n == 0) return std::nullopt;
  Word w = to_word(nm);
  auto s1 = r1_sites(w);
  if (!s1.empty()) return canonical_from_word(apply_reduction(w, s1.front()));
  for (const auto& s : r2_sites(w)) {
    Word v = apply_reduction(w, s);
    if (is_realizable(v)) return canonical_from_word(v);
    if (stats) ++stats->undrawable_r2;
  }
  return std::nullopt;
}

// Exhaustive reduction with a memo keyed by canonical name. From each name the
// search keeps one R1 (else R2) successor and every R3 variant; a visited name
// is irreducible when it has neither R1 nor R2 and no R3 variant is preferred.
class Reducer {
 public:
  using Result = std::shared_ptr<const std::vector<Name>>;

  // Names must be canonical.
  Result reduce(const Name& nm) {
    if (auto it = memo_.find(nm); it != memo_.end()) return it->second;
    std::vector<Name> comp{nm};
    std::unordered_map<Name, char, NameHash> in_comp{{nm, 1}};
    std::vector<Name> succ;
    std::vector<Name> result;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      Name m = comp[i];
      bool irreducible = true;
      if (auto r = first_reduction(m, &stats_)) {
        irreducible = false;
        if (std::find(succ.begin(), succ.end(), *r) == succ.end()) succ.push_back(*r);
      }
      for (const Name& v : r3_variants(m, &stats_)) {
        if (compare_names(v, m) < 0) irreducible = false;
        if (in_comp.emplace(v, 1).second) comp.push_back(v);
      }
      if (irreducible) result.push_back(m);
    }
    for (const Name& s : succ) {
      Result r = reduce(s);
      result.insert(result.end(), r->begin(), r->end());
    }
    std::sort(result.begin(), result.end(), NamePreferred{});
    result.erase(std::unique(result.begin(), result.end()), result.end());
    auto shared = std::make_shared<const std::vector<Name>>(std::move(result));
    for (const Name& m : comp) memo_.emplace(m, shared);
    return shared;
  }

  std::size_t memo_size() const { return memo_.size(); }
  const MoveStats& stats() const { return stats_; }
  void clear() { memo_.clear(); }

 private:
  std::unordered_map<Name, Result, NameHash> memo_;
  MoveStats stats_;
};

inline std::vector<Name> reduce(const Name& nm) {
  Reducer r;
  return *r.reduce(canonicalize(nm));
}

}  // namespace knot
