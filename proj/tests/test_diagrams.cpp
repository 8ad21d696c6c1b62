#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <numeric>
#include <random>
#include <set>

#include "golden.hpp"
#include "knot/diagrams.hpp"

using namespace knot;

TEST_CASE("embed examples") {
  Embedding t = embed(shadow_of(std::vector<int>{2, 3, 1}));
  CHECK(t.faces.size() == 5);
  Embedding c = embed(shadow_of(std::vector<int>{1}));
  CHECK(c.faces.size() == 3);
  CHECK(embed(Shadow{}).faces.empty());
  CHECK_THROWS_AS(embed(shadow_of(parse_name("{(1,4),(3,6),(5,8),(7,10),(9,2)}"))), EmbeddingError);
}

TEST_CASE("embed is deterministic") {
  Shadow sh = shadow_of(golden::at(20).name);
  Embedding a = embed(sh), b = embed(sh);
  CHECK(a.type == b.type);
  CHECK(a.faces.size() == b.faces.size());
}

TEST_CASE("Euler formula for every realizable shadow") {
  for (int n = 1; n <= 8; ++n) {
    int checked = 0;
    for (PermutationCursor cur(n); !cur.exhausted(); cur.advance()) {
      Shadow sh = shadow_of(cur.current());
      if (n == 8 && !is_shadow_canonical(sh)) continue;
      if (!is_realizable(sh)) continue;
      Embedding e = embed(sh);
      CAPTURE(cur.current());
      REQUIRE(static_cast<int>(e.faces.size()) == n + 2);
      // every edge side used once
      std::set<std::pair<int, bool>> sides;
      for (const auto& f : e.faces)
        for (const Dart& d : f) CHECK(sides.insert({d.pos, d.forward}).second);
      CHECK(static_cast<int>(sides.size()) == 4 * n);
      ++checked;
    }
    CHECK(checked > 0);
  }
}

TEST_CASE("crossing signs") {
  Name tre = parse_name("{(1,4),(3,6),(5,2)}");
  auto s = signs_of(tre);
  REQUIRE(s.size() == 3);
  CHECK(s[0] == 1);
  CHECK(s[1] == s[0]);
  CHECK(s[2] == s[0]);

  auto f8 = signs_of(golden::at(2).name);
  CHECK(std::accumulate(f8.begin(), f8.end(), 0) == 0);

  // the mirror keeps the shadow; every relation swaps roles, so each sign flips
  // before the label-1 normalization, which then restores the first
  Embedding emb = embed(shadow_of(tre));
  CHECK(crossing_signs(tre, emb, true) == std::vector<int>{-1, -1, -1});
  auto curl = signs_of(parse_name("{(1,2)}"));
  CHECK(curl.size() == 1);
  CHECK((curl[0] == 1 || curl[0] == -1));

  std::mt19937 rng(2);
  for (int it = 0; it < 300; ++it) {
    Name nm = golden::random_realizable(rng, 1 + static_cast<int>(rng() % 9));
    Embedding e = embed(shadow_of(nm));
    auto a = crossing_signs(nm, e), b = crossing_signs(nm, e, true);
    CHECK(a[0] == 1);
    for (int k = 0; k < nm.n; ++k) CHECK(a[k] == -b[k]);
  }
}

TEST_CASE("diagrams_of matches brute-force orbits") {
  Shadow tsh = shadow_of(std::vector<int>{2, 3, 1});
  // b = (0,0,1) and (0,1,0): pair 2 under, or pair 1 under
  Name b001 = with_roles(tsh, 0b011), b010 = with_roles(tsh, 0b101);
  CHECK(canonicalize(b001) == canonicalize(b010));
  auto td = diagrams_of(tsh);
  CHECK(std::find(td.begin(), td.end(), with_roles(tsh, 0b111)) != td.end());

  for (int n = 1; n <= 7; ++n)
    for (PermutationCursor cur(n); !cur.exhausted(); cur.advance()) {
      Shadow sh = shadow_of(cur.current());
      if (!is_shadow_canonical(sh) || !is_realizable(sh)) continue;
      std::map<std::string, int> orbit;
      for (std::uint32_t m = 0; m < (1u << (n - 1)); ++m) {
        Name c = canonicalize(with_roles(sh, 1u | (m << 1)));
        ++orbit[format_name(c)];
      }
      auto d = diagrams_of(sh);
      std::set<std::string> got;
      for (const Name& x : d) {
        CHECK(shadow_of(x) == sh);
        got.insert(format_name(x));
      }
      CHECK(got.size() == d.size());
      CHECK(d.size() <= (1u << (n - 1)));
      std::set<std::string> want;
      int total = 0;
      for (auto& [k, v] : orbit) {
        want.insert(k);
        total += v;
      }
      CAPTURE(cur.current());
      CHECK(got == want);
      CHECK(total == (1 << (n - 1)));
    }
}

TEST_CASE("diagrams_of on the trefoil shadow") {
  // (b2,b3) in {00,01,10,11}: 00 alternates, the other three all read OOOUUU
  auto td = diagrams_of(shadow_of(std::vector<int>{2, 3, 1}));
  CHECK(td.size() == 2);
  CHECK(canonicalize(with_roles(shadow_of(td[0]), 0b001)) == canonicalize(with_roles(shadow_of(td[0]), 0b011)));
}

TEST_CASE("strands") {
  Name tre = parse_name("{(1,4),(3,6),(5,2)}");
  StrandPartition sp = strands_of(tre);
  CHECK(sp.under_labels == std::vector<int>{2, 4, 6});
  CHECK(sp.strand_of_label == std::vector<int>{0, 0, 1, 1, 2, 2});
  for (int c = 0; c < 3; ++c) CHECK(sp.at[c].out == (sp.at[c].in + 1) % 3);

  StrandPartition s17 = strands_of(golden::at(17).name);
  CHECK(s17.under_labels == std::vector<int>{2, 4, 6, 8, 9, 12, 13, 15});
  std::set<int> strands(s17.strand_of_label.begin(), s17.strand_of_label.end());
  CHECK(strands.size() == 8);

  StrandPartition curl = strands_of(parse_name("{(1,2)}"));
  CHECK(curl.under_labels == std::vector<int>{2});
  CHECK(curl.strand_of_label == std::vector<int>{0, 0});

  std::mt19937 rng(4);
  for (int it = 0; it < 300; ++it) {
    Name nm = golden::random_name(rng, 1 + static_cast<int>(rng() % 10));
    StrandPartition p = strands_of(nm);
    CHECK(static_cast<int>(p.under_labels.size()) == nm.n);
    // labels tile into arcs: the strand index only steps after an under label
    for (int t = 1; t < 2 * nm.n; ++t) {
      bool under_before = std::find(p.under_labels.begin(), p.under_labels.end(), t) != p.under_labels.end();
      if (!under_before) CHECK(p.strand_of_label[t] == p.strand_of_label[t - 1]);
    }
    Word w = to_word(nm);
    for (int t = 0; t < 2 * nm.n; ++t)
      if (w.is_over(t)) CHECK(p.at[w.cross[t]].over == p.strand_of_label[t]);
  }
}
