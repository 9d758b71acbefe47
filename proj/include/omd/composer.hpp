#pragma once

// Recursive composition of an outer OMD(n, l) with ingredient designs on
// blown-up points, and the dispatcher that picks a construction for (n, k).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "omd/base_constructions.hpp"
#include "omd/core.hpp"
#include "omd/room.hpp"
#include "omd/search.hpp"
#include "omd/verifier.hpp"

namespace omd {

/// Ingredients for composing an OMD(sn, k):
///   outer                   OMD(n, l) with a transversal
///   cell_ingredient         OMD(M_l[s], k)
///   transversal_ingredient  OMD(M_l[K_s], k) with a transversal and a hole of size s-1
struct IngredientSet {
  DesignArray outer;
  Transversal outer_transversal;
  DesignArray cell_ingredient;
  DesignArray transversal_ingredient;
  Transversal ingredient_transversal;
  Hole ingredient_hole;
};

struct Composition {
  DesignArray design;
  std::optional<Transversal> transversal;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw error(errc::incoherent_ingredients, what);
}

inline int ingredient_scale(const IngredientSet& ing) {
  const int l = ing.outer.k();
  require(ing.cell_ingredient.n() % (2 * l) == 0, "cell ingredient point count is not a multiple of 2l");
  return ing.cell_ingredient.n() / (2 * l);
}

inline void check_coherent(const IngredientSet& ing) {
  const int l = ing.outer.k();
  const int n = ing.outer.n();
  require(ing.outer.host().same_edge_set(Complete{n}), "outer design must be over K_n");
  require(ing.outer.side() == n - 1, "outer design side must be n-1");
  require(verify_transversal(ing.outer, ing.outer_transversal).passed, "outer transversal is not certified");

  const int s = ingredient_scale(ing);
  require(s >= 1, "scale s must be positive");
  const int k = ing.cell_ingredient.k();
  require(ing.transversal_ingredient.k() == k, "ingredients disagree on k");
  require(ing.cell_ingredient.host().same_edge_set(LexMatching{l, s}), "cell ingredient host must be M_l[s]");
  require(ing.transversal_ingredient.host().same_edge_set(LexMatchingComplete{l, s}),
          "transversal ingredient host must be M_l[K_s]");
  require(ing.cell_ingredient.side() == s, "cell ingredient side must be s");
  require(ing.transversal_ingredient.side() == 2 * s - 1, "transversal ingredient side must be 2s-1");
  require(ing.ingredient_hole.size() == s - 1, "ingredient hole must have size s-1");
  require(verify_hole(ing.transversal_ingredient, ing.ingredient_hole).passed, "ingredient hole is not empty");
  require(verify_transversal(ing.transversal_ingredient, ing.ingredient_transversal).passed,
          "ingredient transversal is not certified");
}

// Ingredient point (v, z) -> v*s + z, where vertex 2t / 2t+1 is the smaller /
// larger endpoint of the t-th edge of `outer_block`. Output point (x, z) -> x*s + z.
inline std::vector<int> blown_up_points(const Block& outer_block, int s) {
  std::vector<int> out;
  out.reserve(outer_block.edges().size() * 2 * static_cast<std::size_t>(s));
  for (const auto& e : outer_block.edges())
    for (int x : {e.u(), e.v()})
      for (int z = 0; z < s; ++z) out.push_back(x * s + z);
  return out;
}

inline bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

// Sends the hole's rows (columns) to the extra lines and the remaining s
// rows (columns) onto the expanded cell, both in increasing order.
inline std::vector<int> hole_aligned_map(int ingredient_side, const std::vector<int>& hole_lines, int cell_base,
                                         int extra_base) {
  std::vector<int> sorted_hole(hole_lines);
  std::sort(sorted_hole.begin(), sorted_hole.end());
  std::vector<int> map(static_cast<std::size_t>(ingredient_side));
  int next_cell = 0;
  for (int i = 0; i < ingredient_side; ++i) {
    auto it = std::find(sorted_hole.begin(), sorted_hole.end(), i);
    map[static_cast<std::size_t>(i)] =
        it != sorted_hole.end() ? extra_base + static_cast<int>(it - sorted_hole.begin()) : cell_base + next_cell++;
  }
  return map;
}

}  // namespace detail

/// Expands each outer cell to an s x s subarray and appends s-1 extra rows
/// and columns. Off-transversal blocks B receive a copy of the cell
/// ingredient on V(B) x Z_s; transversal blocks receive the transversal
/// ingredient with its hole laid over the shared extra-row x extra-column
/// corner. A transversal of the result is lifted from the two input
/// transversals when the ingredient's transversal sits inside the hole's
/// rows and columns, and searched for otherwise.
inline Composition compose(const IngredientSet& ing, std::uint64_t budget = default_budget) {
  detail::check_coherent(ing);
  const int s = detail::ingredient_scale(ing);
  const int k = ing.cell_ingredient.k();
  const int outer_side = ing.outer.side();
  const int side = s * outer_side + s - 1;
  const int n = s * ing.outer.n();
  const int extra = s * outer_side;

  DesignArray out(side, n, k, Complete{n});

  std::vector<char> on_transversal(static_cast<std::size_t>(outer_side * outer_side), 0);
  for (const auto& c : ing.outer_transversal.cells)
    on_transversal[static_cast<std::size_t>(c.row * outer_side + c.col)] = 1;

  const auto& hole = ing.ingredient_hole;
  const int ing_side = ing.transversal_ingredient.side();
  try {
    for (int i = 0; i < outer_side; ++i) {
      for (int j = 0; j < outer_side; ++j) {
        const auto& b = ing.outer.at(i, j);
        if (!b) continue;
        const auto points = detail::blown_up_points(*b, s);
        if (on_transversal[static_cast<std::size_t>(i * outer_side + j)]) {
          embed_into(out, ing.transversal_ingredient, detail::hole_aligned_map(ing_side, hole.rows, i * s, extra),
                     detail::hole_aligned_map(ing_side, hole.cols, j * s, extra), points);
        } else {
          embed_into(out, ing.cell_ingredient, detail::iota_from(i * s, s), detail::iota_from(j * s, s), points);
        }
      }
    }
  } catch (const error& e) {
    if (e.code() == errc::occupied_cell) throw error(errc::embedding_collision, e.what());
    throw;
  }

  // Lift the transversal.
  std::optional<Transversal> lifted;
  bool aligned = true;
  for (const auto& c : ing.ingredient_transversal.cells)
    aligned = aligned && (detail::contains(hole.rows, c.row) == detail::contains(hole.cols, c.col));
  if (aligned) {
    Transversal t;
    const auto extra_rows = detail::hole_aligned_map(ing_side, hole.rows, 0, extra);
    const auto extra_cols = detail::hole_aligned_map(ing_side, hole.cols, 0, extra);
    for (const auto& c : ing.ingredient_transversal.cells)
      if (detail::contains(hole.rows, c.row))
        t.cells.push_back({extra_rows[static_cast<std::size_t>(c.row)], extra_cols[static_cast<std::size_t>(c.col)]});
    for (const auto& oc : ing.outer_transversal.cells) {
      if (ing.outer.at(oc.row, oc.col)) {
        const auto rows = detail::hole_aligned_map(ing_side, hole.rows, oc.row * s, extra);
        const auto cols = detail::hole_aligned_map(ing_side, hole.cols, oc.col * s, extra);
        for (const auto& c : ing.ingredient_transversal.cells)
          if (!detail::contains(hole.rows, c.row))
            t.cells.push_back({rows[static_cast<std::size_t>(c.row)], cols[static_cast<std::size_t>(c.col)]});
      } else {
        for (int a = 0; a < s; ++a) t.cells.push_back({oc.row * s + a, oc.col * s + a});
      }
    }
    std::sort(t.cells.begin(), t.cells.end());
    if (verify_transversal(out, t).passed) lifted = std::move(t);
  }
  if (!lifted) {
    auto found = find_transversal(out, budget);
    lifted = std::move(found.value);
  }
  return {std::move(out), std::move(lifted)};
}

// ---------------------------------------------------------------------------

struct BuildConfig {
  std::uint64_t seed = 0;
  std::uint64_t budget = default_budget;
};

struct Construction {
  DesignArray design;
  std::optional<Transversal> transversal;
  std::optional<Hole> hole;
  std::string path;  // which construction produced the design
  VerificationReport report;
};

/// Admissibility of (n, k): empty when an OMD(n, k) exists, otherwise the
/// violated condition.
inline std::string nonexistence_reason(int n, int k) {
  if (n % (2 * k) != 0)
    return "n = " + std::to_string(n) + " is not divisible by 2k = " + std::to_string(2 * k) +
           " (an OMD(n,k) needs n = 0 mod 2k)";
  if (k == 1 && (n == 4 || n == 6))
    return "no Room square exists on " + std::to_string(n) + " points (OMD(n,1) needs n even, n != 4, 6)";
  return {};
}

/// Builds and verifies an OMD(n, k). Throws NonExistent for inadmissible
/// parameters, SearchExhausted when a Room square search runs out of budget
/// and VerificationFailed if the result does not verify.
inline Construction construct(int n, int k, const BuildConfig& config = {}) {
  if (n < 2 || k < 1) throw error(errc::invalid_argument, "need n >= 2 and k >= 1");
  if (auto why = nonexistence_reason(n, k); !why.empty()) throw error(errc::nonexistent, why);

  auto finish = [](DesignArray d, std::optional<Transversal> t, std::optional<Hole> h, std::string path) {
    auto report = verify(d);
    if (!report.passed) throw error(errc::verification_failed, path + " produced an invalid design");
    if (t && !verify_transversal(d, *t).passed) t.reset();
    return Construction{std::move(d), std::move(t), std::move(h), std::move(path), std::move(report)};
  };

  if (k == 1) {
    auto room = build_room(n, config.seed, config.budget);
    return finish(std::move(room.design), std::move(room.transversal), std::nullopt, "room-square/" + room.method);
  }
  if (n == 2 * k) {
    auto d = build_2k(k);
    return finish(std::move(d.design), std::move(d.transversal), std::move(d.hole), "diagonal-2k");
  }
  if (n == 4 * k || n == 6 * k) {
    auto d = n == 4 * k ? build_4k(k) : build_6k(k);
    // Neither construction comes with a transversal; look for one.
    auto t = find_transversal(d, config.budget);
    return finish(std::move(d), std::move(t.value), std::nullopt,
                  n == 4 * k ? "block-circulant-4k" : "k222-expansion-6k");
  }

  // n >= 8k: outer Room square on n/k points, l = 1, s = k.
  auto room = build_room(n / k, config.seed, config.budget);
  auto diag = build_2k(k);
  IngredientSet ing{std::move(room.design), std::move(*room.transversal), build_m1k(k),
                    std::move(diag.design), std::move(diag.transversal), std::move(diag.hole)};
  auto comp = compose(ing, config.budget);
  return finish(std::move(comp.design), std::move(comp.transversal), std::nullopt,
                "composition(room-" + std::to_string(n / k) + "/" + room.method + ", s=" + std::to_string(k) + ")");
}

}  // namespace omd
