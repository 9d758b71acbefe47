#pragma once

// Room squares (OMD(n,1)) from strong starters or plain backtracking, and
// transversal search in arbitrary designs.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "omd/core.hpp"
#include "omd/search.hpp"
#include "omd/verifier.hpp"

namespace omd {

/// Starter in Z_r with its adder. Pairs partition Z_r \ {0}; the adder
/// entries are distinct and nonzero, and the shifted pairs
/// {x_i - a_i, y_i - a_i} partition Z_r \ {0} as well.
struct StarterAdder {
  int r = 0;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> adder;
};

inline int mod(int x, int r) { return ((x % r) + r) % r; }

/// Returns an empty string when `sa` is a valid starter-adder, otherwise the
/// first violated condition.
inline std::string starter_violation(const StarterAdder& sa) {
  const int r = sa.r;
  if (r < 3 || r % 2 == 0) return "modulus must be odd and at least 3";
  const auto m = static_cast<std::size_t>((r - 1) / 2);
  if (sa.pairs.size() != m || sa.adder.size() != m) return "expected " + std::to_string(m) + " pairs and adder entries";

  auto partitions = [r](const std::vector<std::pair<int, int>>& ps) {
    std::vector<int> seen(static_cast<std::size_t>(r), 0);
    for (auto [x, y] : ps) {
      if (x <= 0 || y <= 0 || x >= r || y >= r) return false;
      if (seen[static_cast<std::size_t>(x)]++ || seen[static_cast<std::size_t>(y)]++) return false;
    }
    return true;
  };
  if (!partitions(sa.pairs)) return "starter pairs do not partition the nonzero residues";

  std::vector<int> diff(static_cast<std::size_t>(r), 0);
  for (auto [x, y] : sa.pairs) {
    if (diff[static_cast<std::size_t>(mod(x - y, r))]++ || diff[static_cast<std::size_t>(mod(y - x, r))]++)
      return "starter differences repeat";
  }

  std::vector<int> used(static_cast<std::size_t>(r), 0);
  for (int a : sa.adder) {
    if (a <= 0 || a >= r) return "adder entry out of range or zero";
    if (used[static_cast<std::size_t>(a)]++) return "adder entries repeat";
  }

  std::vector<std::pair<int, int>> shifted;
  for (std::size_t i = 0; i < m; ++i)
    shifted.emplace_back(mod(sa.pairs[i].first - sa.adder[i], r), mod(sa.pairs[i].second - sa.adder[i], r));
  if (!partitions(shifted)) return "shifted pairs do not partition the nonzero residues";
  return {};
}

/// Depth-first search for a strong starter in Z_r: pairs partitioning
/// Z_r \ {0} whose differences cover every nonzero residue and whose sums are
/// distinct and nonzero. The adder is a_i = x_i + y_i, so that the shifted
/// pair {x_i - a_i, y_i - a_i} = {-y_i, -x_i}.
inline search_result<StarterAdder> strong_starter_search(int r, std::uint64_t budget = default_budget) {
  if (r < 7 || r % 2 == 0) throw error(errc::invalid_argument, "strong starter search needs odd r >= 7");
  const auto ur = static_cast<std::size_t>(r);
  std::vector<int> partner(ur, -1);
  std::vector<char> diff_used(ur, 0), sum_used(ur, 0);
  partner[0] = 0;
  std::uint64_t nodes = 0;
  bool aborted = false;

  // Most-constrained element first.
  auto rec = [&](auto&& self, int remaining) -> bool {
    if (remaining == 0) return true;
    int best = -1, best_count = r + 1;
    for (int x = 1; x < r; ++x) {
      if (partner[static_cast<std::size_t>(x)] >= 0) continue;
      int count = 0;
      for (int y = 1; y < r; ++y) {
        if (y == x || partner[static_cast<std::size_t>(y)] >= 0) continue;
        const int d = std::min(mod(x - y, r), mod(y - x, r));
        const int s = mod(x + y, r);
        if (s != 0 && !diff_used[static_cast<std::size_t>(d)] && !sum_used[static_cast<std::size_t>(s)]) ++count;
      }
      if (count < best_count) {
        best = x;
        best_count = count;
        if (count == 0) break;
      }
    }
    if (best_count == 0) return false;
    const int x = best;
    for (int y = 1; y < r; ++y) {
      if (y == x || partner[static_cast<std::size_t>(y)] >= 0) continue;
      const auto d = static_cast<std::size_t>(std::min(mod(x - y, r), mod(y - x, r)));
      const auto s = static_cast<std::size_t>(mod(x + y, r));
      if (s == 0 || diff_used[d] || sum_used[s]) continue;
      if (++nodes > budget) {
        aborted = true;
        return false;
      }
      partner[static_cast<std::size_t>(x)] = y;
      partner[static_cast<std::size_t>(y)] = x;
      diff_used[d] = sum_used[s] = 1;
      if (self(self, remaining - 1)) return true;
      partner[static_cast<std::size_t>(x)] = partner[static_cast<std::size_t>(y)] = -1;
      diff_used[d] = sum_used[s] = 0;
      if (aborted) return false;
    }
    return false;
  };

  if (!rec(rec, (r - 1) / 2))
    return {aborted ? search_status::exhausted : search_status::proven_absent, std::nullopt, nodes};

  StarterAdder sa{r, {}, {}};
  for (int x = 1; x < r; ++x) {
    const int y = partner[static_cast<std::size_t>(x)];
    if (x < y) {
      sa.pairs.emplace_back(x, y);
      sa.adder.push_back(mod(x + y, r));
    }
  }
  return {search_status::found, std::move(sa), nodes};
}

// ---------------------------------------------------------------------------
// Transversals.

namespace detail {

// Kuhn's augmenting-path matching of free rows to free columns through
// empty cells. Returns the column chosen for each row in `rows`.
inline std::optional<std::vector<int>> match_empty_cells(const DesignArray& arr, const std::vector<int>& rows,
                                                         const std::vector<int>& cols) {
  const auto nr = rows.size();
  std::vector<int> col_owner(cols.size(), -1);
  std::vector<char> visited;
  auto augment = [&](auto&& self, std::size_t ri) -> bool {
    for (std::size_t ci = 0; ci < cols.size(); ++ci) {
      if (visited[ci] || arr.at(rows[ri], cols[ci])) continue;
      visited[ci] = 1;
      if (col_owner[ci] < 0 || self(self, static_cast<std::size_t>(col_owner[ci]))) {
        col_owner[ci] = static_cast<int>(ri);
        return true;
      }
    }
    return false;
  };
  for (std::size_t ri = 0; ri < nr; ++ri) {
    visited.assign(cols.size(), 0);
    if (!augment(augment, ri)) return std::nullopt;
  }
  std::vector<int> out(nr, -1);
  for (std::size_t ci = 0; ci < cols.size(); ++ci)
    if (col_owner[ci] >= 0) out[static_cast<std::size_t>(col_owner[ci])] = cols[ci];
  return out;
}

}  // namespace detail

/// Exact-cover search for a transversal: repeatedly pick the uncovered point
/// with the fewest usable cells, then close off the remaining rows and
/// columns with a perfect matching on empty cells. Every returned
/// transversal has passed verify_transversal.
inline search_result<Transversal> find_transversal(const DesignArray& arr, std::uint64_t budget = default_budget) {
  const int side = arr.side();
  const int n = arr.n();
  const int block_points = 2 * arr.k();
  if (side == 0 || n % block_points != 0) return {search_status::proven_absent, std::nullopt, 0};

  std::vector<std::vector<Cell>> cells_of(static_cast<std::size_t>(n));
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c)
      if (const auto& b = arr.at(r, c))
        for (int p : b->points())
          if (p >= 0 && p < n) cells_of[static_cast<std::size_t>(p)].push_back({r, c});

  std::vector<char> row_used(static_cast<std::size_t>(side), 0), col_used(static_cast<std::size_t>(side), 0);
  std::vector<char> covered(static_cast<std::size_t>(n), 0);
  std::vector<Cell> chosen;
  std::uint64_t nodes = 0;
  bool aborted = false;
  std::optional<Transversal> result;

  auto usable = [&](const Cell& c) {
    if (row_used[static_cast<std::size_t>(c.row)] || col_used[static_cast<std::size_t>(c.col)]) return false;
    for (int p : arr.at(c.row, c.col)->points())
      if (p < 0 || p >= n || covered[static_cast<std::size_t>(p)]) return false;
    return true;
  };
  auto set_cell = [&](const Cell& c, char v) {
    row_used[static_cast<std::size_t>(c.row)] = col_used[static_cast<std::size_t>(c.col)] = v;
    for (int p : arr.at(c.row, c.col)->points()) covered[static_cast<std::size_t>(p)] = v;
  };

  auto rec = [&](auto&& self) -> bool {
    int best = -1;
    std::size_t best_count = SIZE_MAX;
    for (int p = 0; p < n; ++p) {
      if (covered[static_cast<std::size_t>(p)]) continue;
      std::size_t count = 0;
      for (const auto& c : cells_of[static_cast<std::size_t>(p)])
        if (usable(c)) ++count;
      if (count < best_count) {
        best = p;
        best_count = count;
        if (count == 0) return false;
      }
    }
    if (best < 0) {
      std::vector<int> free_rows, free_cols;
      for (int i = 0; i < side; ++i) {
        if (!row_used[static_cast<std::size_t>(i)]) free_rows.push_back(i);
        if (!col_used[static_cast<std::size_t>(i)]) free_cols.push_back(i);
      }
      auto m = detail::match_empty_cells(arr, free_rows, free_cols);
      if (!m) return false;
      Transversal t{chosen};
      for (std::size_t i = 0; i < free_rows.size(); ++i) t.cells.push_back({free_rows[i], (*m)[i]});
      std::sort(t.cells.begin(), t.cells.end());
      if (!verify_transversal(arr, t).passed) return false;
      result = std::move(t);
      return true;
    }
    for (const auto& c : cells_of[static_cast<std::size_t>(best)]) {
      if (!usable(c)) continue;
      if (++nodes > budget) {
        aborted = true;
        return false;
      }
      set_cell(c, 1);
      chosen.push_back(c);
      if (self(self)) return true;
      chosen.pop_back();
      set_cell(c, 0);
      if (aborted) return false;
    }
    return false;
  };

  if (rec(rec)) return {search_status::found, std::move(result), nodes};
  return {aborted ? search_status::exhausted : search_status::proven_absent, std::nullopt, nodes};
}

// ---------------------------------------------------------------------------
// Room squares.

struct RoomSquare {
  DesignArray design;
  std::optional<Transversal> transversal;
  std::string method;  // "strong-starter" or "backtracking"
};

/// Cyclic Room square of side r on Z_r u {inf}, inf flattened to r:
/// {inf, j} at (j, j) and {x_i + j, y_i + j} at (j, j + a_i).
inline RoomSquare room_from_starter(const StarterAdder& sa, std::uint64_t transversal_budget = default_budget) {
  if (auto why = starter_violation(sa); !why.empty()) throw error(errc::invalid_starter, why);
  const int r = sa.r;
  DesignArray arr(r, r + 1, 1, Complete{r + 1});
  for (int j = 0; j < r; ++j) {
    arr.place(j, j, Block{{r, j}});
    for (std::size_t i = 0; i < sa.pairs.size(); ++i)
      arr.place(j, mod(j + sa.adder[i], r), Block{{mod(sa.pairs[i].first + j, r), mod(sa.pairs[i].second + j, r)}});
  }
  auto t = find_transversal(arr, transversal_budget);
  return {std::move(arr), std::move(t.value), "strong-starter"};
}

namespace detail {

class RoomBacktrack {
 public:
  RoomBacktrack(int r, std::uint64_t seed, std::uint64_t budget)
      : r_(r), n_(r + 1), budget_(budget), rng_(seed),
        all_(n_ == 64 ? ~mask{0} : ((mask{1} << n_) - 1)),
        row_(static_cast<std::size_t>(r), 0), col_(static_cast<std::size_t>(r), 0),
        adj_(static_cast<std::size_t>(n_), 0),
        cell_(static_cast<std::size_t>(r * r), -1) {}

  search_result<DesignArray> run() {
    // Row 0 can be normalised to {0,1}, {2,3}, ... in columns 0, 1, ... by
    // relabelling points and permuting columns.
    for (int t = 0; t < n_ / 2; ++t) apply(0, t, 2 * t, 2 * t + 1);
    if (dfs()) {
      DesignArray arr(r_, n_, 1, Complete{n_});
      for (int i = 0; i < r_; ++i)
        for (int c = 0; c < r_; ++c)
          if (const int code = cell(i, c); code >= 0) arr.place(i, c, Block{{code / n_, code % n_}});
      return {search_status::found, std::move(arr), nodes_};
    }
    return {aborted_ ? search_status::exhausted : search_status::proven_absent, std::nullopt, nodes_};
  }

 private:
  using mask = std::uint64_t;
  struct Option {
    int row, col, a, b;
  };

  static mask bit(int p) { return mask{1} << p; }
  int& cell(int r, int c) { return cell_[static_cast<std::size_t>(r * r_ + c)]; }
  mask& row(int r) { return row_[static_cast<std::size_t>(r)]; }
  mask& col(int c) { return col_[static_cast<std::size_t>(c)]; }
  mask& adj(int p) { return adj_[static_cast<std::size_t>(p)]; }

  void apply(int r, int c, int a, int b) {
    row(r) |= bit(a) | bit(b);
    col(c) |= bit(a) | bit(b);
    adj(a) |= bit(b);
    adj(b) |= bit(a);
    cell(r, c) = std::min(a, b) * n_ + std::max(a, b);
  }
  void undo(int r, int c, int a, int b) {
    row(r) &= ~(bit(a) | bit(b));
    col(c) &= ~(bit(a) | bit(b));
    adj(a) &= ~bit(b);
    adj(b) &= ~bit(a);
    cell(r, c) = -1;
  }

  // Options covering point p in a given row (by_row) or column.
  void line_options(bool by_row, int line, int p, std::vector<Option>* out, int& count) {
    count = 0;
    for (int other = 0; other < r_; ++other) {
      const int r = by_row ? line : other, c = by_row ? other : line;
      if (cell(r, c) >= 0) continue;
      const mask avail = all_ & ~row(r) & ~col(c);
      if (!(avail & bit(p))) continue;
      const mask partners = avail & ~adj(p) & ~bit(p);
      count += __builtin_popcountll(partners);
      if (out)
        for (mask m = partners; m; m &= m - 1) out->push_back({r, c, p, __builtin_ctzll(m)});
    }
  }

  void pair_options(int p, int q, std::vector<Option>* out, int& count) {
    count = 0;
    const mask m = bit(p) | bit(q);
    for (int r = 0; r < r_; ++r) {
      if (row(r) & m) continue;
      for (int c = 0; c < r_; ++c)
        if (!(col(c) & m) && cell(r, c) < 0) {
          ++count;
          if (out) out->push_back({r, c, p, q});
        }
    }
  }

  bool dfs() {
    bool done = true;
    for (int i = 0; i < r_ && done; ++i) done = row(i) == all_;
    if (done) return true;

    // Most constrained of: (row, point), (column, point), unused pair. Any
    // constraint without options kills the branch.
    int best_count = INT32_MAX, kind = -1, line = -1, bp = -1, bq = -1;
    int count = 0;
    for (int i = 0; i < r_; ++i) {
      for (mask m = all_ & ~row(i); m; m &= m - 1) {
        const int p = __builtin_ctzll(m);
        line_options(true, i, p, nullptr, count);
        if (count == 0) return false;
        if (count < best_count) std::tie(best_count, kind, line, bp) = std::tuple{count, 0, i, p};
      }
      for (mask m = all_ & ~col(i); m; m &= m - 1) {
        const int p = __builtin_ctzll(m);
        line_options(false, i, p, nullptr, count);
        if (count == 0) return false;
        if (count < best_count) std::tie(best_count, kind, line, bp) = std::tuple{count, 1, i, p};
      }
    }
    for (int p = 0; p < n_; ++p)
      for (mask m = all_ & ~adj(p) & ~((mask{2} << p) - 1); m; m &= m - 1) {
        const int q = __builtin_ctzll(m);
        pair_options(p, q, nullptr, count);
        if (count == 0) return false;
        if (count < best_count) std::tie(best_count, kind, bp, bq) = std::tuple{count, 2, p, q};
      }

    std::vector<Option> options;
    if (kind == 2) pair_options(bp, bq, &options, count);
    else line_options(kind == 0, line, bp, &options, count);
    rng_.shuffle(options);
    for (const auto& o : options) {
      if (++nodes_ > budget_) {
        aborted_ = true;
        return false;
      }
      apply(o.row, o.col, o.a, o.b);
      if (dfs()) return true;
      undo(o.row, o.col, o.a, o.b);
      if (aborted_) return false;
    }
    return false;
  }

  int r_, n_;
  std::uint64_t budget_;
  Rng rng_;
  mask all_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::vector<mask> row_, col_, adj_;
  std::vector<int> cell_;
};

}  // namespace detail

/// Backtracking search for a Room square of side r (odd). Rows, columns and
/// pairs are tracked as bitmasks; each step branches on the most constrained
/// (row, point), (column, point) or pair. Candidate order is shuffled from
/// `seed`, so equal seeds give equal squares.
inline search_result<RoomSquare> room_search(int r, std::uint64_t seed, std::uint64_t budget = default_budget) {
  if (r < 1 || r % 2 == 0) throw error(errc::invalid_argument, "room_search needs odd r");
  if (r + 1 > 64) throw error(errc::invalid_argument, "room_search supports r <= 63");
  auto res = detail::RoomBacktrack(r, seed, budget).run();
  if (!res.found()) return {res.status, std::nullopt, res.nodes};
  auto t = find_transversal(*res.value, budget);
  return {search_status::found, RoomSquare{std::move(*res.value), std::move(t.value), "backtracking"}, res.nodes};
}

/// OMD(n, 1). Throws NonExistent for odd n and n in {4, 6}; SearchExhausted
/// if neither the strong-starter route nor backtracking produced a Room
/// square with a transversal inside the budget.
inline RoomSquare build_room(int n, std::uint64_t seed = 0, std::uint64_t budget = default_budget) {
  if (n < 2 || n % 2 != 0) throw error(errc::nonexistent, "a Room square needs an even number of points, got " + std::to_string(n));
  if (n == 4 || n == 6) throw error(errc::nonexistent, "no Room square exists on 4 or 6 points");
  if (n == 2) {
    DesignArray arr(1, 2, 1, Complete{2});
    arr.place(0, 0, Block{{0, 1}});
    return {std::move(arr), Transversal{{{0, 0}}}, "trivial"};
  }
  const int r = n - 1;
  if (auto ss = strong_starter_search(r, budget); ss.found()) {
    auto room = room_from_starter(*ss.value, budget);
    if (room.transversal) return room;
  }
  if (r + 1 <= 64) {
    auto bt = room_search(r, seed, budget);
    if (bt.found() && bt.value->transversal) return std::move(*bt.value);
    if (bt.status == search_status::proven_absent)
      throw error(errc::nonexistent, "exhaustive search found no Room square of side " + std::to_string(r));
  }
  throw error(errc::search_exhausted, "no Room square with a transversal of side " + std::to_string(r) +
                                          " within budget " + std::to_string(budget));
}

}  // namespace omd
