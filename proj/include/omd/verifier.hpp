#pragma once

// Construction-agnostic checks. Nothing in here reuses the constructors'
// placement logic or HostGraph's adjacency code: host membership, edge
// enumeration and coverage accounting are derived independently.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "omd/core.hpp"
#include "omd/search.hpp"

namespace omd {

struct Check {
  std::string name;
  bool passed = true;
  std::string counterexample;  // first failure found, empty on success
};

struct VerificationReport {
  bool passed = true;
  std::vector<Check> checks;
  int nonempty = 0;
  std::vector<int> per_row;
  std::vector<int> per_col;

  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

namespace detail {

inline void add_check(VerificationReport& rep, std::string name, std::optional<std::string> failure) {
  Check c{std::move(name), !failure.has_value(), failure.value_or("")};
  rep.passed = rep.passed && c.passed;
  rep.checks.push_back(std::move(c));
}

inline std::string pt(int p) { return std::to_string(p); }
inline std::string pair_str(int a, int b) { return "{" + pt(a) + "," + pt(b) + "}"; }
inline std::string cell_str(int r, int c) { return "(" + pt(r) + "," + pt(c) + ")"; }

// Adjacency matrix of the host, rebuilt from its parameters.
struct HostModel {
  int vertices = 0;
  std::vector<char> adj;
  std::optional<int> replication;

  bool adjacent(int a, int b) const {
    return a >= 0 && b >= 0 && a < vertices && b < vertices &&
           adj[static_cast<std::size_t>(a) * static_cast<std::size_t>(vertices) + static_cast<std::size_t>(b)];
  }
};

inline HostModel model_host(const HostGraph& host) {
  HostModel m;
  std::vector<int> group;   // vertices sharing a group are never adjacent...
  std::vector<int> mate;    // ...unless the host links groups through `mate`
  bool intra = false;       // whether vertices inside a group are adjacent
  std::visit(
      [&](const auto& h) {
        using T = std::decay_t<decltype(h)>;
        if constexpr (std::is_same_v<T, Complete>) {
          m.vertices = h.n;
          for (int i = 0; i < h.n; ++i) group.push_back(i);
        } else if constexpr (std::is_same_v<T, CompleteBipartite>) {
          m.vertices = h.a + h.b;
          for (int i = 0; i < h.a; ++i) group.push_back(0);
          for (int i = 0; i < h.b; ++i) group.push_back(1);
        } else if constexpr (std::is_same_v<T, LexMatching> || std::is_same_v<T, LexMatchingComplete>) {
          m.vertices = 2 * h.l * h.s;
          for (int v = 0; v < 2 * h.l; ++v)
            for (int z = 0; z < h.s; ++z) group.push_back(v);
          for (int v = 0; v < 2 * h.l; ++v) mate.push_back(v ^ 1);
          intra = std::is_same_v<T, LexMatchingComplete>;
        } else {
          int g = 0;
          for (int p : h.parts) {
            for (int i = 0; i < p; ++i) group.push_back(g);
            ++g;
          }
          m.vertices = static_cast<int>(group.size());
        }
      },
      host.variant());

  const auto nv = static_cast<std::size_t>(m.vertices);
  m.adj.assign(nv * nv, 0);
  for (std::size_t a = 0; a < nv; ++a) {
    for (std::size_t b = 0; b < nv; ++b) {
      if (a == b) continue;
      const int ga = group[a], gb = group[b];
      bool e;
      if (!mate.empty()) e = (ga == gb) ? intra : mate[static_cast<std::size_t>(ga)] == gb;
      else e = ga != gb;
      m.adj[a * nv + b] = e;
    }
  }

  // Replication number = common degree, if any.
  std::optional<int> deg;
  bool regular = true;
  for (std::size_t a = 0; a < nv; ++a) {
    int d = 0;
    for (std::size_t b = 0; b < nv; ++b) d += m.adj[a * nv + b];
    if (!deg) deg = d;
    else if (*deg != d) regular = false;
  }
  if (regular) m.replication = deg;
  return m;
}

}  // namespace detail

/// Checks an arbitrary array against its host: cell contents are k-matchings,
/// every row and column covers every host vertex once, every host edge is
/// covered exactly once and nothing else is, and the side equals the host's
/// replication number.
inline VerificationReport verify(const DesignArray& arr) {
  using detail::add_check;
  VerificationReport rep;
  const int side = arr.side();
  const auto host = detail::model_host(arr.host());
  const int nv = host.vertices;

  rep.per_row.assign(static_cast<std::size_t>(side), 0);
  rep.per_col.assign(static_cast<std::size_t>(side), 0);
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c)
      if (arr.at(r, c)) {
        ++rep.nonempty;
        ++rep.per_row[static_cast<std::size_t>(r)];
        ++rep.per_col[static_cast<std::size_t>(c)];
      }

  {
    std::optional<std::string> fail;
    if (arr.n() != nv)
      fail = "n = " + detail::pt(arr.n()) + " but host has " + detail::pt(nv) + " vertices";
    add_check(rep, "point-count", fail);
  }
  {
    std::optional<std::string> fail;
    if (!host.replication) fail = "host graph is not regular, so it has no resolvable decomposition";
    else if (*host.replication != side)
      fail = "side " + detail::pt(side) + " differs from replication number " + detail::pt(*host.replication);
    add_check(rep, "side", fail);
  }

  // (1) every non-empty cell holds a k-matching on host vertices.
  {
    std::optional<std::string> fail;
    for (int r = 0; r < side && !fail; ++r)
      for (int c = 0; c < side && !fail; ++c) {
        const auto& b = arr.at(r, c);
        if (!b) continue;
        if (b->size() != arr.k()) {
          fail = "cell " + detail::cell_str(r, c) + " has " + detail::pt(b->size()) + " edges, expected " +
                 detail::pt(arr.k());
          break;
        }
        std::set<int> seen;
        for (const auto& e : b->edges()) {
          for (int p : {e.u(), e.v()}) {
            if (p >= nv) fail = "cell " + detail::cell_str(r, c) + " uses point " + detail::pt(p) + " outside the host";
            else if (!seen.insert(p).second)
              fail = "cell " + detail::cell_str(r, c) + " repeats point " + detail::pt(p) + " (not a matching)";
            if (fail) break;
          }
          if (fail) break;
        }
      }
    add_check(rep, "blocks", fail);
  }

  // (2) rows and columns are resolution classes.
  auto line_check = [&](bool by_row) {
    std::optional<std::string> fail;
    std::vector<int> hits;
    for (int line = 0; line < side && !fail; ++line) {
      hits.assign(static_cast<std::size_t>(nv), 0);
      for (int other = 0; other < side && !fail; ++other) {
        const int r = by_row ? line : other;
        const int c = by_row ? other : line;
        const auto& b = arr.at(r, c);
        if (!b) continue;
        for (const auto& e : b->edges())
          for (int p : {e.u(), e.v()}) {
            if (p >= nv) continue;
            if (++hits[static_cast<std::size_t>(p)] == 2 && !fail)
              fail = std::string(by_row ? "row " : "column ") + detail::pt(line) + " contains point " +
                     detail::pt(p) + " twice (again at " + detail::cell_str(r, c) + ")";
          }
      }
      for (int p = 0; p < nv && !fail; ++p)
        if (hits[static_cast<std::size_t>(p)] == 0)
          fail = std::string(by_row ? "row " : "column ") + detail::pt(line) + " misses point " + detail::pt(p);
    }
    return fail;
  };
  add_check(rep, "rows", line_check(true));
  add_check(rep, "columns", line_check(false));

  // (3) every host edge exactly once, no foreign edges.
  {
    std::optional<std::string> fail;
    const auto nn = static_cast<std::size_t>(nv);
    std::vector<int> used(nn * nn, 0);
    for (int r = 0; r < side && !fail; ++r)
      for (int c = 0; c < side && !fail; ++c) {
        const auto& b = arr.at(r, c);
        if (!b) continue;
        for (const auto& e : b->edges()) {
          if (!host.adjacent(e.u(), e.v())) {
            fail = "cell " + detail::cell_str(r, c) + " holds " + detail::pair_str(e.u(), e.v()) +
                   " which is not a host edge";
            break;
          }
          auto& slot = used[static_cast<std::size_t>(e.u()) * nn + static_cast<std::size_t>(e.v())];
          if (++slot > 1) {
            fail = "pair " + detail::pair_str(e.u(), e.v()) + " covered twice (again at " + detail::cell_str(r, c) + ")";
            break;
          }
        }
      }
    for (int a = 0; a < nv && !fail; ++a)
      for (int b = a + 1; b < nv && !fail; ++b)
        if (host.adjacent(a, b) && !used[static_cast<std::size_t>(a) * nn + static_cast<std::size_t>(b)])
          fail = "pair " + detail::pair_str(a, b) + " never covered";
    add_check(rep, "pairs", fail);
  }
  return rep;
}

inline VerificationReport verify_transversal(const DesignArray& arr, const Transversal& t) {
  using detail::add_check;
  VerificationReport rep;
  const int side = arr.side();
  const auto count = static_cast<int>(t.cells.size());
  {
    std::optional<std::string> fail;
    if (count != side) fail = "transversal has " + detail::pt(count) + " cells, side is " + detail::pt(side);
    for (const auto& c : t.cells)
      if (!fail && !arr.in_range(c.row, c.col)) fail = "cell " + detail::cell_str(c.row, c.col) + " out of range";
    add_check(rep, "shape", fail);
  }
  if (!rep.passed) return rep;

  auto perm_check = [&](bool rows) {
    std::optional<std::string> fail;
    std::vector<int> seen(static_cast<std::size_t>(side), 0);
    for (const auto& c : t.cells) {
      const int idx = rows ? c.row : c.col;
      if (seen[static_cast<std::size_t>(idx)]++) {
        fail = std::string(rows ? "row " : "column ") + detail::pt(idx) + " used twice";
        break;
      }
    }
    return fail;
  };
  add_check(rep, "rows", perm_check(true));
  add_check(rep, "columns", perm_check(false));

  {
    std::optional<std::string> fail;
    std::vector<int> hits(static_cast<std::size_t>(arr.n()), 0);
    for (const auto& c : t.cells) {
      const auto& b = arr.at(c.row, c.col);
      if (!b) continue;
      ++rep.nonempty;
      for (const auto& e : b->edges())
        for (int p : {e.u(), e.v()}) {
          if (p >= arr.n()) {
            if (!fail) fail = "point " + detail::pt(p) + " out of range";
            continue;
          }
          if (++hits[static_cast<std::size_t>(p)] == 2 && !fail)
            fail = "point " + detail::pt(p) + " covered twice (again at " + detail::cell_str(c.row, c.col) + ")";
        }
    }
    for (int p = 0; p < arr.n() && !fail; ++p)
      if (!hits[static_cast<std::size_t>(p)]) fail = "point " + detail::pt(p) + " not covered";
    add_check(rep, "points", fail);
  }
  return rep;
}

inline VerificationReport verify_hole(const DesignArray& arr, const Hole& h) {
  using detail::add_check;
  VerificationReport rep;
  {
    std::optional<std::string> fail;
    if (h.rows.size() != h.cols.size())
      fail = detail::pt(static_cast<int>(h.rows.size())) + " rows vs " +
             detail::pt(static_cast<int>(h.cols.size())) + " columns";
    std::set<int> rs, cs;
    for (int r : h.rows)
      if (!fail && (r < 0 || r >= arr.side() || !rs.insert(r).second)) fail = "bad row index " + detail::pt(r);
    for (int c : h.cols)
      if (!fail && (c < 0 || c >= arr.side() || !cs.insert(c).second)) fail = "bad column index " + detail::pt(c);
    add_check(rep, "shape", fail);
  }
  if (!rep.passed) return rep;
  std::optional<std::string> fail;
  for (int r : h.rows)
    for (int c : h.cols)
      if (!fail && arr.at(r, c)) fail = "cell " + detail::cell_str(r, c) + " is occupied";
  add_check(rep, "empty", fail);
  return rep;
}

// ---------------------------------------------------------------------------
// Exhaustive existence search for OMD(n, k) on K_n.

namespace detail {

// Exact search over arrays of side n-1 on K_n. The state is three families
// of constraints, each of which must be met exactly once: (row, point),
// (column, point) and (pair). Every step branches on the constraint with the
// fewest remaining options, and a constraint with none prunes the branch.
class BruteForce {
 public:
  BruteForce(int n, int k, std::uint64_t budget)
      : n_(n), k_(k), side_(n - 1), budget_(budget),
        all_(n == 64 ? ~mask{0} : ((mask{1} << n) - 1)),
        row_(static_cast<std::size_t>(side_), 0), col_(static_cast<std::size_t>(side_), 0),
        adj_(static_cast<std::size_t>(n), 0),
        grid_(static_cast<std::size_t>(side_ * side_)) {}

  search_result<DesignArray> run() {
    // Row 0 is a resolution class; relabelling points and permuting columns
    // brings it to blocks {0..2k-1}, {2k..4k-1}, ... in columns 0, 1, ...
    if (n_ % (2 * k_) == 0 && side_ > 0) {
      for (int t = 0; t < n_ / (2 * k_); ++t) {
        std::vector<std::pair<int, int>> edges;
        for (int j = 0; j < k_; ++j) edges.emplace_back(2 * k_ * t + 2 * j, 2 * k_ * t + 2 * j + 1);
        apply(0, t, edges);
      }
    }
    if (dfs()) {
      DesignArray arr(side_, n_, k_, Complete{n_});
      for (int r = 0; r < side_; ++r)
        for (int c = 0; c < side_; ++c) {
          const auto& cell = at(r, c);
          if (cell.empty()) continue;
          std::vector<Edge> edges;
          for (auto [a, b] : cell) edges.emplace_back(a, b);
          arr.place(r, c, Block(std::move(edges)));
        }
      return {search_status::found, std::move(arr), nodes_};
    }
    return {aborted_ ? search_status::exhausted : search_status::proven_absent, std::nullopt, nodes_};
  }

 private:
  using mask = std::uint64_t;
  using edge_list = std::vector<std::pair<int, int>>;

  static mask bit(int p) { return mask{1} << p; }
  edge_list& at(int r, int c) { return grid_[static_cast<std::size_t>(r * side_ + c)]; }
  mask& row(int r) { return row_[static_cast<std::size_t>(r)]; }
  mask& col(int c) { return col_[static_cast<std::size_t>(c)]; }
  mask& adj(int p) { return adj_[static_cast<std::size_t>(p)]; }

  void apply(int r, int c, const edge_list& edges) {
    for (auto [a, b] : edges) {
      row(r) |= bit(a) | bit(b);
      col(c) |= bit(a) | bit(b);
      adj(a) |= bit(b);
      adj(b) |= bit(a);
    }
    at(r, c) = edges;
  }

  void undo(int r, int c) {
    for (auto [a, b] : at(r, c)) {
      row(r) &= ~(bit(a) | bit(b));
      col(c) &= ~(bit(a) | bit(b));
      adj(a) &= ~bit(b);
      adj(b) &= ~bit(a);
    }
    at(r, c).clear();
  }

  enum class kind { row, col, pair };
  struct Choice {
    kind what;
    int line;  // row or column index; unused for pairs
    int p, q;
  };

  // Options for (row or column `line`, point p): cells in that line where p
  // fits, times partners for p there.
  int line_options(bool by_row, int line, int p) {
    int count = 0;
    for (int other = 0; other < side_; ++other) {
      const int r = by_row ? line : other, c = by_row ? other : line;
      if (!at(r, c).empty()) continue;
      const mask avail = all_ & ~row(r) & ~col(c);
      if (!(avail & bit(p))) continue;
      count += __builtin_popcountll(avail & ~adj(p) & ~bit(p));
    }
    return count;
  }

  int pair_options(int p, int q) {
    int count = 0;
    const mask m = bit(p) | bit(q);
    for (int r = 0; r < side_; ++r) {
      if (row(r) & m) continue;
      for (int c = 0; c < side_; ++c)
        if (!(col(c) & m) && at(r, c).empty()) ++count;
    }
    return count;
  }

  bool place_and_recurse(int r, int c, const edge_list& edges) {
    if (++nodes_ > budget_) {
      aborted_ = true;
      return false;
    }
    apply(r, c, edges);
    if (dfs()) return true;
    undo(r, c);
    return false;
  }

  // Completes `edges` to a k-matching inside `avail`, adding further edges in
  // increasing order of their smaller endpoint (above `floor`).
  bool complete_block(int r, int c, mask avail, int floor, edge_list& edges) {
    if (static_cast<int>(edges.size()) == k_) return place_and_recurse(r, c, edges);
    const mask above = floor < 0 ? avail : avail & ~((mask{2} << floor) - 1);
    for (mask ma = above; ma; ma &= ma - 1) {
      const int a = __builtin_ctzll(ma);
      for (mask mb = avail & ~adj(a) & ~((mask{2} << a) - 1); mb; mb &= mb - 1) {
        const int b = __builtin_ctzll(mb);
        edges.emplace_back(a, b);
        if (complete_block(r, c, avail & ~bit(a) & ~bit(b), a, edges)) return true;
        edges.pop_back();
        if (aborted_) return false;
      }
    }
    return false;
  }

  // Every block containing p (and edge pq when q >= 0) in cell (r, c).
  bool blocks_at(int r, int c, int p, int q) {
    const mask avail = all_ & ~row(r) & ~col(c);
    if (!(avail & bit(p))) return false;
    edge_list edges;
    if (q >= 0) {
      if (!(avail & bit(q))) return false;
      edges.emplace_back(std::min(p, q), std::max(p, q));
      return complete_block(r, c, avail & ~bit(p) & ~bit(q), -1, edges);
    }
    for (mask mq = avail & ~adj(p) & ~bit(p); mq; mq &= mq - 1) {
      const int partner = __builtin_ctzll(mq);
      edges.assign(1, {std::min(p, partner), std::max(p, partner)});
      if (complete_block(r, c, avail & ~bit(p) & ~bit(partner), -1, edges)) return true;
      if (aborted_) return false;
    }
    return false;
  }

  bool dfs() {
    if (aborted_) return false;
    bool done = true;
    for (int r = 0; r < side_ && done; ++r) done = row(r) == all_;
    // All rows full means k*side*n/(2k) distinct pairs, i.e. every pair of
    // K_n, and the same count forces every column full.
    if (done) return true;

    std::optional<Choice> best;
    int best_count = INT32_MAX;
    auto consider = [&](Choice ch, int count) {
      if (count < best_count) {
        best_count = count;
        best = ch;
      }
      return count > 0;
    };
    for (int line = 0; line < side_; ++line) {
      for (mask m = all_ & ~row(line); m; m &= m - 1) {
        const int p = __builtin_ctzll(m);
        if (!consider({kind::row, line, p, -1}, line_options(true, line, p))) return false;
      }
      for (mask m = all_ & ~col(line); m; m &= m - 1) {
        const int p = __builtin_ctzll(m);
        if (!consider({kind::col, line, p, -1}, line_options(false, line, p))) return false;
      }
    }
    for (int p = 0; p < n_; ++p)
      for (mask m = all_ & ~adj(p) & ~((mask{2} << p) - 1); m; m &= m - 1) {
        const int q = __builtin_ctzll(m);
        if (!consider({kind::pair, -1, p, q}, pair_options(p, q))) return false;
      }

    const Choice ch = *best;
    switch (ch.what) {
      case kind::row:
        for (int c = 0; c < side_; ++c) {
          if (at(ch.line, c).empty() && blocks_at(ch.line, c, ch.p, -1)) return true;
          if (aborted_) return false;
        }
        return false;
      case kind::col:
        for (int r = 0; r < side_; ++r) {
          if (at(r, ch.line).empty() && blocks_at(r, ch.line, ch.p, -1)) return true;
          if (aborted_) return false;
        }
        return false;
      case kind::pair:
        for (int r = 0; r < side_; ++r)
          for (int c = 0; c < side_; ++c) {
            if (at(r, c).empty() && blocks_at(r, c, ch.p, ch.q)) return true;
            if (aborted_) return false;
          }
        return false;
    }
    return false;
  }

  int n_, k_, side_;
  std::uint64_t budget_;
  mask all_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::vector<mask> row_, col_, adj_;
  std::vector<edge_list> grid_;
};

}  // namespace detail

/// Exhaustive backtracking over arrays of side n-1 satisfying the OMD
/// conditions. Intended for n <= 8; n is capped at 64 by the bitmask state.
inline search_result<DesignArray> brute_force_exists(int n, int k, std::uint64_t budget = 10'000'000) {
  if (n < 2 || n > 64) throw error(errc::invalid_argument, "brute force supports 2 <= n <= 64");
  if (k < 1) throw error(errc::invalid_argument, "k must be at least 1");
  return detail::BruteForce(n, k, budget).run();
}

}  // namespace omd
