#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "golden.hpp"
#include "knot/diagrams.hpp"
#include "knot/shadows.hpp"

using namespace knot;

namespace {

Shadow from(std::vector<int> f) { return shadow_of(f); }

// All relabelings of a shadow, as sorted pairings.
std::vector<Shadow> shadow_orbit(const Shadow& sh) {
  std::vector<Shadow> out;
  Name nm = with_roles(sh, 1);
  for (int st = 0; st < 2 * sh.n; ++st)
    for (bool rev : {false, true}) {
      Shadow v = shadow_of(relabel(nm, {st, rev}));
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
  return out;
}

}  // namespace

TEST_CASE("permutations come in lexicographic order") {
  auto p3 = permutations_in_order(3);
  REQUIRE(p3.size() == 6);
  CHECK(p3.front() == std::vector<int>{1, 2, 3});
  CHECK(p3[1] == std::vector<int>{1, 3, 2});
  CHECK(p3.back() == std::vector<int>{3, 2, 1});
  CHECK(permutations_in_order(6).size() == 720);
  CHECK(permutations_in_order(0).size() == 1);
}

TEST_CASE("shadow_of") {
  Shadow t = from({2, 3, 1});
  CHECK(t.n == 3);
  CHECK(t.even[0] == 4);
  CHECK(t.even[1] == 6);
  CHECK(t.even[2] == 2);
  CHECK(t.permutation() == std::vector<int>{2, 3, 1});
  CHECK(shadow_of(parse_name("{(1,4),(3,6),(5,2)}")) == t);
  auto p = partners(t);
  for (int i = 0; i < 6; ++i) CHECK(p[p[i]] == i);
  CHECK(p[0] == 3);
}

TEST_CASE("canonical shadows") {
  CHECK(is_shadow_canonical(from({2, 3, 1})));
  CHECK(is_shadow_canonical(from({1})));
  // {1,6},{3,2},{5,4} is three curls read from label 2
  CHECK_FALSE(is_shadow_canonical(from({3, 1, 2})));
  CHECK(canonical_shadow(from({3, 1, 2})) == from({1, 2, 3}));

  std::mt19937 rng(1);
  for (int it = 0; it < 300; ++it) {
    int n = 1 + static_cast<int>(rng() % 8);
    Shadow sh = shadow_of(golden::random_name(rng, n));
    Shadow c = canonical_shadow(sh);
    CHECK(is_shadow_canonical(c));
    CHECK(canonical_shadow(c) == c);
    for (const Shadow& v : shadow_orbit(sh)) CHECK(canonical_shadow(v) == c);
  }
}

TEST_CASE("orbit bookkeeping: canonical orbit sizes sum to n!") {
  for (int n = 1; n <= 6; ++n) {
    long long total = 0, fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    std::set<std::vector<int>> seen;
    for (const auto& f : permutations_in_order(n)) {
      Shadow sh = shadow_of(f);
      if (!is_shadow_canonical(sh)) continue;
      std::set<std::vector<int>> orbit;
      for (const Shadow& v : shadow_orbit(sh)) orbit.insert(v.permutation());
      for (const auto& g : orbit) CHECK(seen.insert(g).second);
      total += static_cast<long long>(orbit.size());
    }
    CAPTURE(n);
    CHECK(total == fact);
  }
}

TEST_CASE("simple loops") {
  auto tl = simple_loops(from({2, 3, 1}));
  CHECK(tl.size() >= 3);
  for (const auto& l : tl) {
    bool any = false;
    for (auto v : l.assignment) any = any || v != 0;
    CHECK(any);
    CHECK(l.segments != 0);
  }
  auto curl = simple_loops(from({1}));
  // the curl's two petals, one per edge; they never meet off the vertex
  REQUIRE(curl.size() == 2);
  CHECK((curl[0].segments | curl[1].segments) == 0b11u);
  CHECK((curl[0].segments & curl[1].segments) == 0u);
  CHECK(loops_consistent(curl));
  CHECK(simple_loops(Shadow{}).empty());

  // segment sets identify loops, so no two are equal
  for (int n = 3; n <= 6; ++n)
    for (const auto& f : permutations_in_order(n)) {
      auto ls = simple_loops(shadow_of(f));
      std::set<std::uint32_t> segs;
      for (const auto& l : ls) segs.insert(l.segments);
      CHECK(segs.size() == ls.size());
    }
}

TEST_CASE("drawability examples") {
  Shadow bad = shadow_of(parse_name("{(1,4),(3,6),(5,8),(7,10),(9,2)}"));
  CHECK_FALSE(is_drawable(bad));
  CHECK_FALSE(is_realizable(bad));
  CHECK_FALSE(brute_force_rotation(bad).has_value());
  CHECK(is_drawable(from({1})));
  CHECK(is_realizable(from({1})));
  CHECK(is_drawable(from({2, 3, 1})));
  CHECK(is_realizable(from({2, 3, 1})));
  CHECK(is_realizable(Shadow{}));
}

TEST_CASE("drawability agrees with the rotation-system oracle for n <= 6") {
  for (int n = 1; n <= 6; ++n) {
    int agree = 0, total = 0;
    for (const auto& f : permutations_in_order(n)) {
      Shadow sh = shadow_of(f);
      bool oracle = brute_force_rotation(sh).has_value();
      CAPTURE(n);
      CAPTURE(f);
      CHECK(is_drawable(sh) == oracle);
      CHECK(is_realizable(sh) == oracle);
      agree += is_drawable(sh) == oracle;
      ++total;
    }
    CHECK(agree == total);
  }
}

TEST_CASE("interlacement agrees with the oracle on random larger shadows") {
  std::mt19937 rng(9);
  for (int it = 0; it < 400; ++it) {
    Shadow sh = shadow_of(golden::random_name(rng, 7 + static_cast<int>(rng() % 3)));
    CHECK(is_realizable(sh) == brute_force_rotation(sh).has_value());
  }
}

TEST_CASE("table shadows are drawable") {
  for (const auto& e : golden::entries()) {
    CAPTURE(e.order);
    CHECK(is_realizable(e.name));
    if (e.crossings <= 8) CHECK(is_drawable(shadow_of(e.name)));
  }
}
