#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "knot/codes.hpp"

namespace knot {

// Projection with over/under erased: odd label 2k+1 pairs with even[k].
struct Shadow {
  int n = 0;
  std::array<std::uint8_t, kMaxCrossings> even{};

  bool operator==(const Shadow& o) const {
    return n == o.n && std::equal(even.begin(), even.begin() + n, o.even.begin());
  }
  // The generating permutation, 1-based: f(k) = even[k-1] / 2.
  std::vector<int> permutation() const {
    std::vector<int> f(n);
    for (int k = 0; k < n; ++k) f[k] = even[k] / 2;
    return f;
  }
};

inline Shadow shadow_of(const Name& nm) {
  Shadow sh;
  sh.n = nm.n;
  sh.even = nm.even;
  return sh;
}

// f is 1-based: p(2i-1) = 2 f(i).
inline Shadow shadow_of(const std::vector<int>& f) {
  Shadow sh;
  sh.n = static_cast<int>(f.size());
  for (int k = 0; k < sh.n; ++k) sh.even[k] = static_cast<std::uint8_t>(2 * f[k]);
  return sh;
}

inline Name with_roles(const Shadow& sh, std::uint32_t odd_over) {
  Name nm;
  nm.n = sh.n;
  nm.even = sh.even;
  nm.odd_over = odd_over;
  return nm;
}

inline std::array<std::uint8_t, 2 * kMaxCrossings> partners(const Shadow& sh) {
  return partners(with_roles(sh, 0));
}

// Lexicographic stream of permutations of 1..n.
class PermutationCursor {
 public:
  explicit PermutationCursor(int n) : f_(n) { std::iota(f_.begin(), f_.end(), 1); }
  bool exhausted() const { return done_; }
  const std::vector<int>& current() const { return f_; }
  void advance() {
    if (!std::next_permutation(f_.begin(), f_.end())) done_ = true;
  }

 private:
  std::vector<int> f_;
  bool done_ = false;
};

inline std::vector<std::vector<int>> permutations_in_order(int n) {
  std::vector<std::vector<int>> out;
  for (PermutationCursor c(n); !c.exhausted(); c.advance()) out.push_back(c.current());
  return out;
}

inline bool is_shadow_canonical(const Shadow& sh) {
  if (sh.n == 0) return true;
  Name nm = with_roles(sh, 1);
  Word w = to_word(nm);
  auto p = partners(w);
  for (int st = 0; st < w.len(); ++st)
    for (bool rev : {false, true})
      if (detail::compare_variant(w, p, st, rev, nm, false) < 0) return false;
  return true;
}

inline Shadow canonical_shadow(const Shadow& sh) {
  Shadow best = sh;
  Name nm = with_roles(sh, 1);
  for (int st = 0; st < 2 * sh.n; ++st)
    for (bool rev : {false, true}) {
      Shadow v = shadow_of(relabel(nm, {st, rev}));
      if (std::lexicographical_compare(v.even.begin(), v.even.begin() + v.n, best.even.begin(),
                                       best.even.begin() + best.n))
        best = v;
    }
  return best;
}

// A closed walk on the shadow. Given a vertex set, the walk leaves odd label
// 2i+1 of each vertex i in direction dir[i] and must re-enter vertex i through
// its even label. Masks are over edges (edge t joins positions t and t+1) and
// over crossings passed straight through at their odd or even label.
struct Loop {
  std::vector<std::int8_t> assignment;
  std::uint32_t segments = 0;
  std::uint32_t through_odd = 0;
  std::uint32_t through_even = 0;
};

inline std::vector<Loop> simple_loops(const Shadow& sh) {
  const int n = sh.n, L = 2 * n;
  std::vector<Loop> loops;
  if (n == 0) return loops;
  auto p = partners(sh);
  std::vector<std::int8_t> assign(n, 0);
  std::uint32_t visited = 0, seg = 0, todd = 0, teven = 0;
  int origin = 0;

  // Walk from position `pos` in direction `dir`.
  auto walk = [&](auto&& self, int pos, int dir) -> void {
    int edge = dir > 0 ? pos : (pos - 1 + L) % L;
    int next = (pos + dir + L) % L;
    if (seg & (1u << edge)) return;
    seg |= 1u << edge;
    int c = (next % 2 == 0) ? next / 2 : p[next] / 2;
    bool at_odd = next % 2 == 0;
    if (c == origin) {
      if (!at_odd) {
        Loop lp;
        lp.assignment = assign;
        lp.segments = seg;
        lp.through_odd = todd;
        lp.through_even = teven;
        loops.push_back(std::move(lp));
      }
    } else if (!(visited & (1u << c))) {
      visited |= 1u << c;
      if (at_odd) todd |= 1u << c;
      else teven |= 1u << c;
      self(self, next, dir);
      if (at_odd) todd &= ~(1u << c);
      else teven &= ~(1u << c);
      if (!at_odd && c > origin) {
        for (int d : {1, -1}) {
          assign[c] = static_cast<std::int8_t>(d);
          self(self, 2 * c, d);
        }
        assign[c] = 0;
      }
      visited &= ~(1u << c);
    }
    seg &= ~(1u << edge);
  };

  for (origin = 0; origin < n; ++origin) {
    visited = 1u << origin;
    for (int d : {1, -1}) {
      assign[origin] = static_cast<std::int8_t>(d);
      walk(walk, 2 * origin, d);
    }
    assign[origin] = 0;
  }
  return loops;
}

// Loop-parity test: two loops without a common segment must cross an even number of times.
inline bool loops_consistent(const std::vector<Loop>& loops) {
  for (std::size_t a = 0; a < loops.size(); ++a)
    for (std::size_t b = a + 1; b < loops.size(); ++b) {
      const Loop &x = loops[a], &y = loops[b];
      if (x.segments & y.segments) continue;
      int cross = std::popcount(x.through_odd & y.through_even) +
                  std::popcount(x.through_even & y.through_odd);
      if (cross & 1) return false;
    }
  return true;
}

inline bool is_drawable(const Shadow& sh) { return loops_consistent(simple_loops(sh)); }

// Interlacement criterion for planarity of a Gauss word: every chord meets an
// even number of chords, non-interlaced chords share an even number of
// neighbours, and interlaced pairs with an even number of shared neighbours
// form a cut of the interlacement graph. The cut, when it exists, is returned.
inline std::optional<std::uint32_t> interlacement_cut(const std::array<std::uint8_t, 2 * kMaxCrossings>& p,
                                                      const std::array<std::uint8_t, 2 * kMaxCrossings>& cross,
                                                      int n) {
  const int L = 2 * n;
  std::array<std::uint32_t, kMaxCrossings> inter{};
  std::array<int, kMaxCrossings> first{};
  for (int t = 0; t < L; ++t)
    if (t < p[t]) first[cross[t]] = t;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      int a0 = first[a], a1 = p[a0], b0 = first[b], b1 = p[b0];
      bool inside0 = b0 > a0 && b0 < a1, inside1 = b1 > a0 && b1 < a1;
      if (inside0 != inside1) {
        inter[a] |= 1u << b;
        inter[b] |= 1u << a;
      }
    }
  for (int a = 0; a < n; ++a)
    if (std::popcount(inter[a]) & 1) return std::nullopt;
  std::uint32_t side = 0, seen = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      bool common_even = (std::popcount(inter[a] & inter[b]) & 1) == 0;
      if (!((inter[a] >> b) & 1) && !common_even) return std::nullopt;
    }
  for (int root = 0; root < n; ++root) {
    if (seen & (1u << root)) continue;
    seen |= 1u << root;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      for (std::uint32_t m = inter[a]; m; m &= m - 1) {
        int b = std::countr_zero(m);
        bool cut = (std::popcount(inter[a] & inter[b]) & 1) == 0;
        bool want = (((side >> a) & 1) != 0) != cut;
        if (seen & (1u << b)) {
          if ((((side >> b) & 1) != 0) != want) return std::nullopt;
        } else {
          seen |= 1u << b;
          if (want) side |= 1u << b;
          stack.push_back(b);
        }
      }
    }
  }
  return side;
}

inline bool is_realizable(const Word& w) {
  return interlacement_cut(partners(w), w.cross, w.n).has_value();
}
inline bool is_realizable(const Name& nm) {
  if (nm.n == 0) return true;
  return is_realizable(to_word(nm));
}
inline bool is_realizable(const Shadow& sh) { return is_realizable(with_roles(sh, 1)); }

}  // namespace knot
