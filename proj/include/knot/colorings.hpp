#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "knot/codes.hpp"
#include "knot/diagrams.hpp"

namespace knot {

// M[i][j] (0-based) is the colour leaving when colour i passes under colour j.
struct ColorTable {
  int r = 0;
  std::vector<std::vector<int>> M;
  std::string label;
  bool operator==(const ColorTable& o) const { return M == o.M; }
};

// The table with every column replaced by its inverse permutation.
inline ColorTable dual_table(const ColorTable& t) {
  ColorTable d = t;
  for (int j = 0; j < t.r; ++j)
    for (int i = 0; i < t.r; ++i) d.M[t.M[i][j]][j] = i;
  return d;
}

inline std::optional<std::string> validate_table(const ColorTable& t) {
  const int r = t.r;
  if (static_cast<int>(t.M.size()) != r) return "table is not square";
  for (const auto& row : t.M) {
    if (static_cast<int>(row.size()) != r) return "table is not square";
    for (int v : row)
      if (v < 0 || v >= r) return "entry out of range";
  }
  auto at = [](int i, int j) { return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"; };
  for (int i = 0; i < r; ++i)
    if (t.M[i][i] != i) return "first move fails at " + at(i, i);
  for (int j = 0; j < r; ++j) {
    std::vector<char> hit(r, 0);
    for (int i = 0; i < r; ++i) {
      if (hit[t.M[i][j]]) return "second move fails in column " + std::to_string(j + 1);
      hit[t.M[i][j]] = 1;
    }
  }
  for (int l = 0; l < r; ++l)
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        if (t.M[t.M[l][i]][j] != t.M[t.M[l][j]][t.M[i][j]])
          return "third move fails at l=" + std::to_string(l + 1) + " i=" + std::to_string(i + 1) +
                 " j=" + std::to_string(j + 1);
  // Closed subsets are unions of orbits of the column permutations.
  std::vector<char> seen(r, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    for (int j = 0; j < r; ++j)
      if (!seen[t.M[i][j]]) {
        seen[t.M[i][j]] = 1;
        ++reached;
        stack.push_back(t.M[i][j]);
      }
  }
  if (reached != r) return "reducible: closed colour subset of size " + std::to_string(reached);
  return std::nullopt;
}

// Blocks of a title line followed by r rows of r digits.
inline std::vector<ColorTable> parse_tables(std::string_view text) {
  std::vector<ColorTable> out;
  std::istringstream in{std::string(text)};
  std::string line;
  ColorTable cur;
  auto flush = [&] {
    if (cur.label.empty()) return;
    cur.r = static_cast<int>(cur.M.size());
    if (auto err = validate_table(cur)) throw ParseError(cur.label + ": " + *err);
    out.push_back(cur);
    cur = ColorTable{};
  };
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    line = line.substr(b, line.find_last_not_of(" \t\r") - b + 1);
    if (std::isdigit(static_cast<unsigned char>(line[0]))) {
      if (cur.label.empty()) throw ParseError("table row before title");
      std::vector<int> row;
      for (char ch : line) {
        if (!std::isdigit(static_cast<unsigned char>(ch)) || ch == '0') throw ParseError("bad table row '" + line + "'");
        row.push_back(ch - '1');
      }
      cur.M.push_back(std::move(row));
    } else {
      flush();
      cur.label = line;
    }
  }
  flush();
  return out;
}

inline constexpr std::string_view kBuiltinTables = R"(
Test 1
132
321
213

Test 2
1423
3241
4132
2314

Test 3
14532
32451
25314
51243
43125

Test 4
13452
32514
45321
51243
24135

Test 5
114365
225634
453123
361442
632551
546216

Test 6
116345
224563
463231
531424
645152
352616

Test 7
1457632
3276451
2635714
5164273
4713526
7342165
6521347

Test 8
1342675
3257146
4536712
2764351
6173524
7415263
5621437

Test 9
1723456
3257641
4136275
5614732
6371524
7542163
2465317

Test 10
11534453
22678867
44362236
55247724
33825582
77416641
88751175
66183318

Test 11
15678234
32487516
47352861
51846327
68125743
74213685
86531472
23764158
)";

inline const std::vector<ColorTable>& builtin_tables() {
  static const std::vector<ColorTable> tables = parse_tables(kBuiltinTables);
  return tables;
}

// Smallest flattening over colour relabelings of the table and of its dual.
inline std::vector<int> table_orbit_key(const ColorTable& t) {
  const int r = t.r;
  std::vector<int> best;
  std::vector<int> p(r), inv(r), cur(r * r);
  const ColorTable d = dual_table(t);
  for (const ColorTable* x : {&t, &d}) {
    std::iota(p.begin(), p.end(), 0);
    do {
      for (int i = 0; i < r; ++i) inv[p[i]] = i;
      // relabelled table N[i][j] = p^{-1}(M[p(i)][p(j)])
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) cur[i * r + j] = inv[x->M[p[i]][p[j]]];
      if (best.empty() || cur < best) best = cur;
    } while (std::next_permutation(p.begin(), p.end()));
  }
  return best;
}

// Every valid irreducible table on r colours, one per orbit under colour
// relabeling and column inversion. Columns are permutations sigma_j fixing j
// and the third move reads sigma_{sigma_j(i)} = sigma_j sigma_i sigma_j^-1, so
// two known columns force a third one.
inline std::vector<ColorTable> generate_tables(int r) {
  if (r < 1) return {};
  using Perm = std::vector<int>;
  std::vector<std::optional<Perm>> sigma(r);
  std::map<std::vector<int>, ColorTable> orbits;

  auto compose = [r](const Perm& a, const Perm& b) {  // a after b
    Perm c(r);
    for (int i = 0; i < r; ++i) c[i] = a[b[i]];
    return c;
  };
  auto inverse = [r](const Perm& a) {
    Perm c(r);
    for (int i = 0; i < r; ++i) c[a[i]] = i;
    return c;
  };
  // Closes the assigned columns under forcing; false on contradiction.
  auto close = [&](std::vector<int>& trail) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int a = 0; a < r; ++a) {
        if (!sigma[a]) continue;
        for (int b = 0; b < r; ++b) {
          if (!sigma[b]) continue;
          const Perm& sa = *sigma[a];
          int c = sa[b];
          Perm forced = compose(compose(sa, *sigma[b]), inverse(sa));
          if (sigma[c]) {
            if (*sigma[c] != forced) return false;
          } else {
            sigma[c] = std::move(forced);
            trail.push_back(c);
            changed = true;
          }
        }
      }
    }
    return true;
  };

  auto search = [&](auto&& self) -> void {
    int j = 0;
    while (j < r && sigma[j]) ++j;
    if (j == r) {
      ColorTable t;
      t.r = r;
      t.M.assign(r, std::vector<int>(r));
      for (int i = 0; i < r; ++i)
        for (int k = 0; k < r; ++k) t.M[i][k] = (*sigma[k])[i];
      if (validate_table(t)) return;
      auto key = table_orbit_key(t);
      if (!orbits.count(key)) {
        ColorTable rep;
        rep.r = r;
        rep.M.assign(r, std::vector<int>(r));
        for (int i = 0; i < r; ++i)
          for (int k = 0; k < r; ++k) rep.M[i][k] = key[i * r + k];
        orbits.emplace(key, std::move(rep));
      }
      return;
    }
    std::vector<int> rest;
    for (int i = 0; i < r; ++i)
      if (i != j) rest.push_back(i);
    do {
      Perm p(r);
      p[j] = j;
      for (int i = 0, q = 0; i < r; ++i)
        if (i != j) p[i] = rest[q++];
      // M_ij = i iff M_ji = j
      bool ok = true;
      for (int i = 0; i < r && ok; ++i)
        if (sigma[i] && ((p[i] == i) != ((*sigma[i])[j] == j))) ok = false;
      if (!ok) continue;
      sigma[j] = p;
      std::vector<int> trail{j};
      if (close(trail)) self(self);
      for (int c : trail) sigma[c].reset();
    } while (std::next_permutation(rest.begin(), rest.end()));
  };
  search(search);

  std::vector<ColorTable> out;
  int idx = 0;
  for (auto& [key, t] : orbits) {
    t.label = "generated " + std::to_string(r) + "." + std::to_string(++idx);
    out.push_back(t);
  }
  return out;
}

inline bool same_table_orbit(const ColorTable& a, const ColorTable& b) {
  return a.r == b.r && table_orbit_key(a) == table_orbit_key(b);
}

// ---- linear tests ----

struct LinearTest {
  int k = 3;
  int s = 1;
  bool operator==(const LinearTest&) const = default;
};

inline std::string format_test(const LinearTest& t) {
  return "[" + std::to_string(t.k) + "," + std::to_string(t.s) + "]";
}

// The prime p when k = p^e with e >= 1, else 0.
inline int prime_base(int k) {
  if (k < 2) return 0;
  int p = 2;
  while (p * p <= k && k % p) ++p;
  if (k % p) p = k;
  int m = k;
  while (m % p == 0) m /= p;
  return m == 1 ? p : 0;
}

inline long long inverse_mod(long long a, long long m) {
  long long old_r = ((a % m) + m) % m, r = m, old_s = 1, s = 0;
  while (r) {
    long long q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  if (old_r != 1) throw std::domain_error("not invertible");
  return ((old_s % m) + m) % m;
}

inline std::vector<LinearTest> linear_tests(int k_max) {
  std::vector<LinearTest> out;
  for (int k = 3; k <= k_max; ++k) {
    int p = prime_base(k);
    if (p == 0 || p == 2) continue;
    for (int s = 1; s <= k - 2; ++s) {
      if (s % p == 0 || (s + 1) % p == 0) continue;
      if (s > inverse_mod(s, k)) continue;
      out.push_back({k, s});
    }
  }
  return out;
}

// ---- responses ----

// Symmetry: colourings up to the test's colour symmetries (table
// automorphisms, or a -> c1 + c2 a for linear tests). FirstStrand: strand 0
// fixed to the first colour. Raw: every non-unicolor colouring.
enum class Normalization { Symmetry, FirstStrand, Raw };

struct ResponseOptions {
  Normalization norm = Normalization::Symmetry;
};

namespace detail {

// Strand-level crossing data with the chosen signs.
struct CrossingData {
  int in, out, over, sign;
};

inline std::vector<CrossingData> crossing_data(const Name& nm, const std::vector<int>& signs) {
  StrandPartition sp = strands_of(nm);
  std::vector<CrossingData> cd;
  for (int c = 0; c < nm.n; ++c) cd.push_back({sp.at[c].in, sp.at[c].out, sp.at[c].over, signs[c]});
  return cd;
}

// Fills colours strand by strand; every crossing is checked once its three
// strands are known. Strand t+1 is forced when the crossing ending strand t
// has its over strand already coloured.
template <class Relation, class Visit>
void enumerate_colorings(int n, int colours, const std::vector<CrossingData>& cd, int first, Relation out_of,
                         Visit visit) {
  std::vector<int> a(n, -1);
  std::vector<std::vector<int>> touching(n);
  std::vector<int> ending(n, -1);
  for (int c = 0; c < n; ++c) {
    int m = std::max({cd[c].in, cd[c].out, cd[c].over});
    // checks fire when the highest strand index is assigned, strand order 0..n-1
    touching[m].push_back(c);
    ending[cd[c].in] = c;
  }
  auto valid_at = [&](int t) {
    for (int c : touching[t])
      if (out_of(a[cd[c].in], a[cd[c].over], cd[c].sign) != a[cd[c].out]) return false;
    return true;
  };
  auto go = [&](auto&& self, int t) -> void {
    if (t == n) {
      visit(a);
      return;
    }
    int lo = 0, hi = colours - 1;
    if (t == 0 && first >= 0) lo = hi = first;
    if (t > 0) {
      const auto& e = cd[ending[t - 1]];
      if (e.out == t && e.over < t) lo = hi = out_of(a[t - 1], a[e.over], e.sign);
    }
    for (int v = lo; v <= hi; ++v) {
      a[t] = v;
      if (valid_at(t)) self(self, t + 1);
    }
    a[t] = -1;
  };
  go(go, 0);
}

inline bool unicolor(const std::vector<int>& a) {
  return std::all_of(a.begin(), a.end(), [&](int v) { return v == a[0]; });
}

}  // namespace detail

namespace detail {

// Orbits of colourings under a group of colour permutations.
inline long long count_orbits(const std::vector<std::vector<int>>& sols, const std::vector<std::vector<int>>& group) {
  std::set<std::vector<int>> seen;
  long long orbits = 0;
  for (const auto& a : sols) {
    if (seen.count(a)) continue;
    ++orbits;
    for (const auto& g : group) {
      std::vector<int> b(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) b[i] = g[a[i]];
      seen.insert(std::move(b));
    }
  }
  return orbits;
}

template <class Relation>
long long response_with(const Name& nm, const std::vector<int>& signs, int colours, Relation out_of,
                        const std::vector<std::vector<int>>& stabilizer, Normalization norm) {
  if (nm.n == 0) return 0;
  auto cd = crossing_data(nm, signs);
  std::vector<std::vector<int>> sols;
  long long count = 0;
  enumerate_colorings(nm.n, colours, cd, norm == Normalization::Raw ? -1 : 0, out_of,
                      [&](const std::vector<int>& a) {
                        if (unicolor(a)) return;
                        ++count;
                        if (norm == Normalization::Symmetry) sols.push_back(a);
                      });
  if (norm != Normalization::Symmetry) return count;
  return count_orbits(sols, stabilizer);
}

}  // namespace detail

// Colour permutations p with p(M[i][j]) = M[p(i)][p(j)].
inline std::vector<std::vector<int>> table_automorphisms(const ColorTable& t) {
  std::vector<std::vector<int>> out;
  std::vector<int> p(t.r);
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (int i = 0; i < t.r && ok; ++i)
      for (int j = 0; j < t.r && ok; ++j) ok = p[t.M[i][j]] == t.M[p[i]][p[j]];
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// A table with its column inverses and the automorphisms fixing colour 1.
struct PreparedTable {
  ColorTable table, inverse;
  std::vector<std::vector<int>> stabilizer;
};

inline PreparedTable prepare_table(const ColorTable& t) {
  PreparedTable p{t, dual_table(t), {}};
  for (auto& g : table_automorphisms(t))
    if (g[0] == 0) p.stabilizer.push_back(std::move(g));
  return p;
}

// Sign +: out = M[in][over]. Sign -: in = M[out][over].
inline long long table_response(const Name& nm, const std::vector<int>& signs, const PreparedTable& p,
                                ResponseOptions opt = {}) {
  auto out_of = [&](int in, int over, int sign) {
    return sign > 0 ? p.table.M[in][over] : p.inverse.M[in][over];
  };
  return detail::response_with(nm, signs, p.table.r, out_of, p.stabilizer, opt.norm);
}

inline long long table_response(const Name& nm, const std::vector<int>& signs, const ColorTable& t,
                                ResponseOptions opt = {}) {
  return table_response(nm, signs, prepare_table(t), opt);
}

inline long long table_response(const Name& nm, const ColorTable& t, ResponseOptions opt = {}) {
  return table_response(nm, signs_of(nm), prepare_table(t), opt);
}

// Sign +: out = (s+1) over - s in. Sign -: s replaced by its inverse mod k.
inline long long linear_response(const Name& nm, const std::vector<int>& signs, const LinearTest& test,
                                 ResponseOptions opt = {}) {
  const int k = test.k;
  const long long s = test.s, sinv = inverse_mod(s, k);
  auto out_of = [&](int in, int over, int sign) {
    long long m = sign > 0 ? s : sinv;
    long long v = ((m + 1) * over - m * in) % k;
    return static_cast<int>(v < 0 ? v + k : v);
  };
  // With a_0 = 0 the remaining affine maps are the unit scalings.
  std::vector<std::vector<int>> stab;
  if (opt.norm == Normalization::Symmetry)
    for (int u = 1; u < k; ++u) {
      if (std::gcd(u, k) != 1) continue;
      std::vector<int> g(k);
      for (int x = 0; x < k; ++x) g[x] = static_cast<int>(1LL * u * x % k);
      stab.push_back(std::move(g));
    }
  return detail::response_with(nm, signs, k, out_of, stab, opt.norm);
}

inline long long linear_response(const Name& nm, const LinearTest& test, ResponseOptions opt = {}) {
  return linear_response(nm, signs_of(nm), test, opt);
}

}  // namespace knot
