#pragma once

// Direct constructions of small designs: OMD(M_1[k], k), OMD(2k, k) with a
// transversal and a hole, OMD(4k, k) and OMD(6k, k).

#include <array>
#include <vector>

#include "omd/core.hpp"
#include "omd/one_factorization.hpp"

namespace omd {

/// OMD(M_1[k], k): the factors of K_{k,k} down the diagonal.
inline DesignArray build_m1k(int k) {
  auto f = ofact_bipartite(k);
  DesignArray arr(k, 2 * k, k, LexMatching{1, k});
  for (int i = 0; i < k; ++i) arr.place(i, i, f.factors[static_cast<std::size_t>(i)]);
  return arr;
}

struct DesignWithHole {
  DesignArray design;
  Transversal transversal;
  Hole hole;
};

/// OMD(2k, k): factors of K_{2k} down the diagonal. The back diagonal is a
/// transversal and rows 0..k-2 x columns k..2k-2 form a hole of size k-1.
inline DesignWithHole build_2k(int k) {
  if (k < 1) throw error(errc::invalid_argument, "k must be at least 1");
  const int side = 2 * k - 1;
  auto f = ofact_complete(2 * k);
  DesignArray arr(side, 2 * k, k, Complete{2 * k});
  for (int i = 0; i < side; ++i) arr.place(i, i, f.factors[static_cast<std::size_t>(i)]);

  Transversal t;
  for (int i = 0; i < side; ++i) t.cells.push_back({side - 1 - i, i});

  Hole h;
  for (int i = 0; i < k - 1; ++i) {
    h.rows.push_back(i);
    h.cols.push_back(k + i);
  }
  return {std::move(arr), std::move(t), std::move(h)};
}

namespace detail {

// Relabels factor `idx` of `f` through `labels` (factorization point -> design point).
inline Block mapped_factor(const OneFactorization& f, int idx, const std::vector<int>& labels) {
  return f.factors[static_cast<std::size_t>(idx)].relabeled(labels);
}

inline std::vector<int> concat(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline std::vector<int> iota_from(int start, int count) {
  std::vector<int> v(static_cast<std::size_t>(count));
  std::iota(v.begin(), v.end(), start);
  return v;
}

}  // namespace detail

/// OMD(4k, k), k > 1, on Z_k x {0,1} x {0,1} flattened as (x, i, j) -> x + k*i + 2k*j:
///   A_0 = 0..k-1, B_0 = k..2k-1, A_1 = 2k..3k-1, B_1 = 3k..4k-1.
/// Block diagonal of three circulants:
///   A (k x k):       (A_0B_0) on the diagonal, (A_1B_1) one step right
///   B (k x k):       (A_0B_1) on the diagonal, (A_1B_0) one step right
///   C (2k-1 square): factors of A_0 u A_1 on the diagonal, of B_0 u B_1 one step right
inline DesignArray build_4k(int k) {
  if (k <= 1) throw error(errc::k_too_small, "OMD(4k,k) construction needs k > 1");
  const int n = 4 * k;
  const auto a0 = detail::iota_from(0, k);
  const auto b0 = detail::iota_from(k, k);
  const auto a1 = detail::iota_from(2 * k, k);
  const auto b1 = detail::iota_from(3 * k, k);

  const auto bip = ofact_bipartite(k);
  const auto full = ofact_complete(2 * k);
  DesignArray arr(n - 1, n, k, Complete{n});

  auto circulant = [&](int offset, const std::vector<int>& diag, const std::vector<int>& super) {
    for (int i = 0; i < k; ++i) {
      arr.place(offset + i, offset + i, detail::mapped_factor(bip, i, diag));
      arr.place(offset + i, offset + (i + 1) % k, detail::mapped_factor(bip, i, super));
    }
  };
  circulant(0, detail::concat(a0, b0), detail::concat(a1, b1));
  circulant(k, detail::concat(a0, b1), detail::concat(a1, b0));

  const int c_side = 2 * k - 1;
  const auto a_pts = detail::concat(a0, a1);
  const auto b_pts = detail::concat(b0, b1);
  for (int i = 0; i < c_side; ++i) {
    arr.place(2 * k + i, 2 * k + i, detail::mapped_factor(full, i, a_pts));
    arr.place(2 * k + i, 2 * k + (i + 1) % c_side, detail::mapped_factor(full, i, b_pts));
  }
  return arr;
}

/// Orthogonal 1-factorization of K_{2,2,2} on Z_3 x Z_2. Vertex (p, b) is
/// labelled 2p + b, so parts are {0,1}, {2,3}, {4,5}.
inline DesignArray k222_seed() {
  auto v = [](int p, int b) { return 2 * p + b; };
  struct Entry {
    int row, col;
    std::array<int, 4> pb;
  };
  static constexpr std::array<Entry, 12> entries{{
      {0, 0, {0, 0, 1, 0}}, {0, 1, {0, 1, 2, 0}}, {0, 3, {1, 1, 2, 1}},
      {1, 0, {0, 1, 2, 1}}, {1, 1, {0, 0, 1, 1}}, {1, 2, {1, 0, 2, 0}},
      {2, 0, {1, 1, 2, 0}}, {2, 2, {0, 0, 2, 1}}, {2, 3, {0, 1, 1, 0}},
      {3, 1, {1, 0, 2, 1}}, {3, 2, {0, 1, 1, 1}}, {3, 3, {0, 0, 2, 0}},
  }};
  DesignArray arr(4, 6, 1, CompleteMultipartite{{2, 2, 2}});
  for (const auto& e : entries)
    arr.place(e.row, e.col, Block{{v(e.pb[0], e.pb[1]), v(e.pb[2], e.pb[3])}});
  return arr;
}

/// OMD(6k, k), k > 1, on (Z_3 x Z_2) x Z_k. Point ((p, b), y) -> p*2k + b*k + y,
/// so part p occupies p*2k .. p*2k + 2k - 1.
///   A (4k square): each seed cell holding {u, w} expanded to a copy of
///                  OMD(M_1[k], k) on {u, w} x Z_k
///   B (2k-1 square): factors of parts 0, 1, 2 at offsets 0, 1, 2 from the diagonal
inline DesignArray build_6k(int k) {
  if (k <= 1) throw error(errc::k_too_small, "OMD(6k,k) construction needs k > 1");
  const int n = 6 * k;
  DesignArray arr(n - 1, n, k, Complete{n});

  const auto seed = k222_seed();
  const auto m1k = build_m1k(k);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const auto& cell = seed.at(r, c);
      if (!cell) continue;
      const auto& e = cell->edges().front();
      std::vector<int> pts = detail::concat(detail::iota_from(e.u() * k, k), detail::iota_from(e.v() * k, k));
      embed_into(arr, m1k, detail::iota_from(r * k, k), detail::iota_from(c * k, k), pts);
    }
  }

  const auto full = ofact_complete(2 * k);
  const int b_side = 2 * k - 1;
  const int off = 4 * k;
  for (int part = 0; part < 3; ++part) {
    const auto labels = detail::iota_from(part * 2 * k, 2 * k);
    for (int i = 0; i < b_side; ++i)
      arr.place(off + i, off + (i + part) % b_side, detail::mapped_factor(full, i, labels));
  }
  return arr;
}

}  // namespace omd
