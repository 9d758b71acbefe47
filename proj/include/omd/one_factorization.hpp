#pragma once

#include <vector>

#include "omd/core.hpp"

namespace omd {

struct OneFactorization {
  int m = 0;                   // point count
  std::vector<Block> factors;  // each a perfect matching on 0..m-1
};

/// Circle method on K_m: factor i pairs m-1 with i and folds the remaining
/// points of Z_{m-1} around i.
inline OneFactorization ofact_complete(int m) {
  if (m < 2 || m % 2 != 0) throw error(errc::odd_order, "K_" + std::to_string(m) + " has no 1-factorization");
  const int r = m - 1;
  OneFactorization f{m, {}};
  f.factors.reserve(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) {
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m / 2));
    edges.emplace_back(r, i);
    for (int j = 1; j <= m / 2 - 1; ++j) edges.emplace_back((i + j) % r, ((i - j) % r + r) % r);
    f.factors.emplace_back(std::move(edges));
  }
  return f;
}

/// Cyclic Latin square factorization of K_{k,k} with sides 0..k-1 and
/// k..2k-1: factor l = { {i, k + (i+l) mod k} }.
inline OneFactorization ofact_bipartite(int k) {
  if (k < 1) throw error(errc::invalid_argument, "k must be at least 1");
  OneFactorization f{2 * k, {}};
  f.factors.reserve(static_cast<std::size_t>(k));
  for (int l = 0; l < k; ++l) {
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) edges.emplace_back(i, k + (i + l) % k);
    f.factors.emplace_back(std::move(edges));
  }
  return f;
}

}  // namespace omd
