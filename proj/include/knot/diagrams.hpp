#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "knot/codes.hpp"
#include "knot/shadows.hpp"

namespace knot {

struct EmbeddingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Half-edge leaving position t forward (toward t+1) or backward.
struct Dart {
  int pos = 0;
  bool forward = true;
  bool operator==(const Dart&) const = default;
};

// Rotation at crossing c with passages x < y (positions): type 0 is the
// counterclockwise order (x+, y+, x-, y-), type 1 is (x+, y-, x-, y+).
struct Embedding {
  int n = 0;
  std::vector<std::uint8_t> type;
  std::vector<std::vector<Dart>> faces;
};

namespace detail {

inline int dart_index(Dart d) { return 2 * d.pos + (d.forward ? 0 : 1); }

// next[dart] in counterclockwise order around its crossing.
inline std::vector<int> rotation_table(const std::array<std::uint8_t, 2 * kMaxCrossings>& p, int n,
                                       const std::vector<std::uint8_t>& type) {
  const int L = 2 * n;
  std::vector<int> rot(2 * L);
  for (int c = 0; c < n; ++c) {
    int x = 2 * c, y = p[x];
    std::array<Dart, 4> order = type[c] == 0
        ? std::array<Dart, 4>{Dart{x, true}, Dart{y, true}, Dart{x, false}, Dart{y, false}}
        : std::array<Dart, 4>{Dart{x, true}, Dart{y, false}, Dart{x, false}, Dart{y, true}};
    for (int i = 0; i < 4; ++i) rot[dart_index(order[i])] = dart_index(order[(i + 1) % 4]);
  }
  return rot;
}

// Follows dart d along its edge and returns the dart that arrives at the far crossing.
inline int arriving(int d, int L) {
  int pos = d / 2;
  bool fwd = (d % 2) == 0;
  int q = fwd ? (pos + 1) % L : (pos - 1 + L) % L;
  return 2 * q + (fwd ? 1 : 0);
}

inline int count_faces(const std::vector<int>& rot, int L, std::vector<std::vector<Dart>>* faces) {
  std::vector<char> seen(2 * L, 0);
  int F = 0;
  for (int d0 = 0; d0 < 2 * L; ++d0) {
    if (seen[d0]) continue;
    ++F;
    std::vector<Dart> face;
    for (int d = d0; !seen[d]; d = rot[arriving(d, L)]) {
      seen[d] = 1;
      if (faces) face.push_back(Dart{d / 2, d % 2 == 0});
    }
    if (faces) faces->push_back(std::move(face));
  }
  return F;
}

}  // namespace detail

// Face count of the rotation system given by `type`.
inline int face_count(const Shadow& sh, const std::vector<std::uint8_t>& type) {
  auto p = partners(sh);
  return detail::count_faces(detail::rotation_table(p, sh.n, type), 2 * sh.n, nullptr);
}

// Exhaustive search over rotation systems; crossing 0 is fixed to type 0
// since the other choice is the global reflection.
inline std::optional<std::vector<std::uint8_t>> brute_force_rotation(const Shadow& sh) {
  const int n = sh.n;
  if (n == 0) return std::vector<std::uint8_t>{};
  auto p = partners(sh);
  std::vector<std::uint8_t> type(n, 0);
  for (std::uint32_t m = 0; m < (1u << (n - 1)); ++m) {
    for (int c = 1; c < n; ++c) type[c] = (m >> (c - 1)) & 1u;
    if (detail::count_faces(detail::rotation_table(p, n, type), 2 * n, nullptr) == n + 2)
      return type;
  }
  return std::nullopt;
}

inline Embedding embed(const Shadow& sh) {
  Embedding e;
  e.n = sh.n;
  if (sh.n == 0) return e;
  auto type = brute_force_rotation(sh);
  if (!type) throw EmbeddingError("shadow admits no spherical rotation system");
  e.type = *type;
  auto p = partners(sh);
  detail::count_faces(detail::rotation_table(p, sh.n, e.type), 2 * sh.n, &e.faces);
  return e;
}

// +1 where the counterclockwise rotation reads (over+, under+, over-, under-).
// The orientation is chosen so that the crossing holding label 1 is positive.
inline std::vector<int> crossing_signs(const Name& nm, const Embedding& emb, bool flip_orientation = false) {
  if (emb.n != nm.n) throw EmbeddingError("embedding does not match name");
  std::vector<int> sg(nm.n);
  for (int k = 0; k < nm.n; ++k) {
    bool over_is_x = nm.odd_is_over(k);
    sg[k] = ((emb.type[k] == 0) == over_is_x) ? 1 : -1;
  }
  bool negate = (nm.n > 0 && sg[0] < 0) != flip_orientation;
  if (negate)
    for (int& v : sg) v = -v;
  return sg;
}

// Signs for the diagram's own embedding.
inline std::vector<int> signs_of(const Name& nm) {
  if (nm.n == 0) return {};
  return crossing_signs(nm, embed(shadow_of(nm)));
}

struct StrandCrossing {
  int in = 0, out = 0, over = 0;
};

// Strand i ends at the i-th under label in traversal order; strand 0 also
// holds the labels after the last under label.
struct StrandPartition {
  int n = 0;
  std::vector<int> strand_of_label;  // index by position (label - 1)
  std::vector<int> under_labels;     // 1-based, in traversal order
  std::vector<StrandCrossing> at;    // per crossing (pair index)
};

inline StrandPartition strands_of(const Name& nm) {
  StrandPartition sp;
  sp.n = nm.n;
  if (nm.n == 0) return sp;
  Word w = to_word(nm);
  auto p = partners(w);
  const int L = w.len();
  sp.strand_of_label.assign(L, 0);
  int k = 0;
  for (int t = 0; t < L; ++t) {
    sp.strand_of_label[t] = k % nm.n;
    if (!w.is_over(t)) {
      sp.under_labels.push_back(t + 1);
      ++k;
    }
  }
  for (int t = sp.under_labels.back(); t < L; ++t) sp.strand_of_label[t] = 0;
  sp.at.resize(nm.n);
  for (int t = 0; t < L; ++t) {
    if (w.is_over(t)) continue;
    int c = w.cross[t];
    int in = sp.strand_of_label[t];
    sp.at[c] = {in, (in + 1) % nm.n, sp.strand_of_label[p[t]]};
  }
  return sp;
}

// All role assignments of a canonical shadow with label 1 over, one per
// symmetry orbit, in binary order of the under-flags b(2..n).
inline std::vector<Name> diagrams_of(const Shadow& sh) {
  std::vector<Name> out;
  if (sh.n == 0) {
    out.push_back(Name{});
    return out;
  }
  const int n = sh.n;
  for (std::uint32_t b = 0; b < (1u << (n - 1)); ++b) {
    std::uint32_t odd_over = 1;
    for (int k = 1; k < n; ++k)
      if (!((b >> (n - 1 - k)) & 1u)) odd_over |= 1u << k;
    Name nm = with_roles(sh, odd_over);
    if (is_canonical(nm)) out.push_back(nm);
  }
  return out;
}

}  // namespace knot
