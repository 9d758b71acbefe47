#pragma once

// Domain types for orthogonally resolvable matching designs: points, edges,
// blocks (k-edge matchings), host graphs, square arrays of optional blocks,
// transversals and holes.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace omd {

enum class errc {
  occupied_cell,
  wrong_block_size,
  map_not_injective,
  odd_order,
  k_too_small,
  invalid_starter,
  nonexistent,
  search_exhausted,
  not_found,
  incoherent_ingredients,
  embedding_collision,
  parse_error,
  invalid_argument,
  verification_failed,
};

inline const char* to_string(errc e) {
  switch (e) {
    case errc::occupied_cell: return "OccupiedCell";
    case errc::wrong_block_size: return "WrongBlockSize";
    case errc::map_not_injective: return "MapNotInjective";
    case errc::odd_order: return "OddOrder";
    case errc::k_too_small: return "KTooSmall";
    case errc::invalid_starter: return "InvalidStarter";
    case errc::nonexistent: return "NonExistent";
    case errc::search_exhausted: return "SearchExhausted";
    case errc::not_found: return "NotFound";
    case errc::incoherent_ingredients: return "IncoherentIngredients";
    case errc::embedding_collision: return "EmbeddingCollision";
    case errc::parse_error: return "ParseError";
    case errc::invalid_argument: return "InvalidArgument";
    case errc::verification_failed: return "VerificationFailed";
  }
  return "Unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

using Point = int;

/// Unordered pair of distinct points, stored as (min, max).
class Edge {
 public:
  Edge(Point a, Point b) : u_(std::min(a, b)), v_(std::max(a, b)) {
    if (a == b) throw error(errc::invalid_argument, "edge endpoints must differ");
    if (u_ < 0) throw error(errc::invalid_argument, "negative point index");
  }

  Point u() const noexcept { return u_; }
  Point v() const noexcept { return v_; }

  friend auto operator<=>(const Edge&, const Edge&) = default;

 private:
  Point u_;
  Point v_;
};

/// Contents of one cell. Edges are kept sorted; whether they form a matching
/// is queryable rather than enforced so that malformed designs loaded from
/// disk can still be represented and rejected by the verifier.
class Block {
 public:
  Block() = default;
  explicit Block(std::vector<Edge> edges) : edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end());
  }
  Block(std::initializer_list<std::pair<Point, Point>> pairs) {
    for (auto [a, b] : pairs) edges_.emplace_back(a, b);
    std::sort(edges_.begin(), edges_.end());
  }

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  int size() const noexcept { return static_cast<int>(edges_.size()); }

  std::vector<Point> points() const {
    std::vector<Point> out;
    out.reserve(edges_.size() * 2);
    for (const auto& e : edges_) {
      out.push_back(e.u());
      out.push_back(e.v());
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool is_matching() const {
    auto pts = points();
    return std::adjacent_find(pts.begin(), pts.end()) == pts.end();
  }

  /// Relabels every endpoint through `point_map`.
  template <class Map>
  Block relabeled(const Map& point_map) const {
    std::vector<Edge> out;
    out.reserve(edges_.size());
    for (const auto& e : edges_) out.emplace_back(point_map[e.u()], point_map[e.v()]);
    return Block(std::move(out));
  }

  friend bool operator==(const Block&, const Block&) = default;

 private:
  std::vector<Edge> edges_;
};

// ---------------------------------------------------------------------------
// Host graphs.
//
// Vertex labelling conventions:
//   Complete(n)                 0..n-1
//   CompleteBipartite(a, b)     left side 0..a-1, right side a..a+b-1
//   LexMatching(l, s)           M_l[s]: vertex (v, z) -> v*s + z, v in 0..2l-1,
//                               matching edges {2t, 2t+1}; only cross edges
//   LexMatchingComplete(l, s)   M_l[K_s]: same labels, plus all edges inside
//                               each blown-up vertex
//   CompleteMultipartite(parts) parts laid out contiguously in order

struct Complete {
  int n;
  friend bool operator==(const Complete&, const Complete&) = default;
};
struct CompleteBipartite {
  int a, b;
  friend bool operator==(const CompleteBipartite&, const CompleteBipartite&) = default;
};
struct LexMatching {
  int l, s;
  friend bool operator==(const LexMatching&, const LexMatching&) = default;
};
struct LexMatchingComplete {
  int l, s;
  friend bool operator==(const LexMatchingComplete&, const LexMatchingComplete&) = default;
};
struct CompleteMultipartite {
  std::vector<int> parts;
  friend bool operator==(const CompleteMultipartite&, const CompleteMultipartite&) = default;
};

class HostGraph {
 public:
  using variant_type =
      std::variant<Complete, CompleteBipartite, LexMatching, LexMatchingComplete, CompleteMultipartite>;

  HostGraph(variant_type v) : v_(std::move(v)) {}  // NOLINT(implicit)
  template <class T>
    requires std::is_constructible_v<variant_type, T> && (!std::is_same_v<std::decay_t<T>, variant_type>)
  HostGraph(T&& alt) : v_(std::forward<T>(alt)) {}  // NOLINT(implicit)

  const variant_type& variant() const noexcept { return v_; }

  template <class T>
  const T* get_if() const noexcept {
    return std::get_if<T>(&v_);
  }

  int vertex_count() const {
    return std::visit(
        [](const auto& h) -> int {
          using T = std::decay_t<decltype(h)>;
          if constexpr (std::is_same_v<T, Complete>) return h.n;
          else if constexpr (std::is_same_v<T, CompleteBipartite>) return h.a + h.b;
          else if constexpr (std::is_same_v<T, LexMatching> || std::is_same_v<T, LexMatchingComplete>)
            return 2 * h.l * h.s;
          else return std::accumulate(h.parts.begin(), h.parts.end(), 0);
        },
        v_);
  }

  /// Closed-form edge count.
  std::int64_t edge_count() const {
    return std::visit(
        [](const auto& h) -> std::int64_t {
          using T = std::decay_t<decltype(h)>;
          if constexpr (std::is_same_v<T, Complete>) return std::int64_t{h.n} * (h.n - 1) / 2;
          else if constexpr (std::is_same_v<T, CompleteBipartite>) return std::int64_t{h.a} * h.b;
          else if constexpr (std::is_same_v<T, LexMatching>) return std::int64_t{h.l} * h.s * h.s;
          else if constexpr (std::is_same_v<T, LexMatchingComplete>)
            return std::int64_t{h.l} * (2 * h.s) * (2 * h.s - 1) / 2;
          else {
            std::int64_t total = 0, sq = 0;
            for (int p : h.parts) {
              total += p;
              sq += std::int64_t{p} * p;
            }
            return (total * total - sq) / 2;
          }
        },
        v_);
  }

  bool contains(Point x, Point y) const {
    const int nv = vertex_count();
    if (x == y || x < 0 || y < 0 || x >= nv || y >= nv) return false;
    return std::visit(
        [x, y](const auto& h) -> bool {
          using T = std::decay_t<decltype(h)>;
          if constexpr (std::is_same_v<T, Complete>) return true;
          else if constexpr (std::is_same_v<T, CompleteBipartite>) return (x < h.a) != (y < h.a);
          else if constexpr (std::is_same_v<T, LexMatching>) {
            const int vx = x / h.s, vy = y / h.s;
            return vx != vy && vx / 2 == vy / 2;
          } else if constexpr (std::is_same_v<T, LexMatchingComplete>) {
            return (x / h.s) / 2 == (y / h.s) / 2;
          } else {
            auto part_of = [&](Point p) {
              int acc = 0;
              for (std::size_t i = 0; i < h.parts.size(); ++i) {
                acc += h.parts[i];
                if (p < acc) return static_cast<int>(i);
              }
              return -1;
            };
            return part_of(x) != part_of(y);
          }
        },
        v_);
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    const int nv = vertex_count();
    for (Point x = 0; x < nv; ++x)
      for (Point y = x + 1; y < nv; ++y)
        if (contains(x, y)) out.emplace_back(x, y);
    return out;
  }

  /// Degree of every vertex if the host is regular. For a resolvable
  /// decomposition whose rows and columns are resolution classes, this is the
  /// replication number and hence the side of the array.
  std::optional<int> regular_degree() const {
    return std::visit(
        [](const auto& h) -> std::optional<int> {
          using T = std::decay_t<decltype(h)>;
          if constexpr (std::is_same_v<T, Complete>) return h.n - 1;
          else if constexpr (std::is_same_v<T, CompleteBipartite>) {
            if (h.a != h.b) return std::nullopt;
            return h.a;
          } else if constexpr (std::is_same_v<T, LexMatching>) return h.s;
          else if constexpr (std::is_same_v<T, LexMatchingComplete>) return 2 * h.s - 1;
          else {
            if (h.parts.empty()) return std::nullopt;
            for (int p : h.parts)
              if (p != h.parts.front()) return std::nullopt;
            return std::accumulate(h.parts.begin(), h.parts.end(), 0) - h.parts.front();
          }
        },
        v_);
  }

  /// True when both hosts have the same vertex count and the same edge set
  /// under the identity labelling, e.g. LexMatchingComplete(1, s) and
  /// Complete(2s).
  bool same_edge_set(const HostGraph& other) const {
    const int nv = vertex_count();
    if (nv != other.vertex_count()) return false;
    for (Point x = 0; x < nv; ++x)
      for (Point y = x + 1; y < nv; ++y)
        if (contains(x, y) != other.contains(x, y)) return false;
    return true;
  }

  friend bool operator==(const HostGraph&, const HostGraph&) = default;

 private:
  variant_type v_;
};

struct Cell {
  int row;
  int col;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// One cell per row and per column whose blocks cover every point once.
struct Transversal {
  std::vector<Cell> cells;
  friend bool operator==(const Transversal&, const Transversal&) = default;
};

/// Empty rows x cols subarray; the index sets need not be contiguous.
struct Hole {
  std::vector<int> rows;
  std::vector<int> cols;
  int size() const noexcept { return static_cast<int>(rows.size()); }
  friend bool operator==(const Hole&, const Hole&) = default;
};

class DesignArray {
 public:
  DesignArray(int side, int n, int k, HostGraph host)
      : side_(side), n_(n), k_(k), host_(std::move(host)),
        cells_(static_cast<std::size_t>(side) * static_cast<std::size_t>(std::max(side, 0))) {
    if (side < 0) throw error(errc::invalid_argument, "side must be non-negative");
    if (n < 2) throw error(errc::invalid_argument, "n must be at least 2");
    if (k < 1) throw error(errc::invalid_argument, "k must be at least 1");
  }

  int side() const noexcept { return side_; }
  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  const HostGraph& host() const noexcept { return host_; }

  bool in_range(int row, int col) const noexcept {
    return row >= 0 && col >= 0 && row < side_ && col < side_;
  }

  const std::optional<Block>& at(int row, int col) const {
    check_range(row, col);
    return cells_[index(row, col)];
  }

  bool empty(int row, int col) const { return !at(row, col).has_value(); }

  /// Places a k-matching into an empty cell.
  void place(int row, int col, Block b) {
    check_range(row, col);
    if (b.size() != k_)
      throw error(errc::wrong_block_size, "block has " + std::to_string(b.size()) +
                                              " edges, array expects " + std::to_string(k_));
    if (!b.is_matching()) throw error(errc::invalid_argument, "block is not a matching");
    auto& slot = cells_[index(row, col)];
    if (slot) throw error(errc::occupied_cell, cell_name(row, col));
    slot = std::move(b);
  }

  /// Stores arbitrary contents without validation. Used by parsers and
  /// mutation tests; the verifier is the judge of what ends up here.
  void set_unchecked(int row, int col, std::optional<Block> b) {
    check_range(row, col);
    cells_[index(row, col)] = std::move(b);
  }

  int nonempty_count() const {
    return static_cast<int>(std::count_if(cells_.begin(), cells_.end(),
                                          [](const auto& c) { return c.has_value(); }));
  }

  friend bool operator==(const DesignArray&, const DesignArray&) = default;

 private:
  std::size_t index(int row, int col) const noexcept {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(side_) + static_cast<std::size_t>(col);
  }
  void check_range(int row, int col) const {
    if (!in_range(row, col)) throw error(errc::invalid_argument, "cell out of range " + cell_name(row, col));
  }
  static std::string cell_name(int row, int col) {
    return "(" + std::to_string(row) + "," + std::to_string(col) + ")";
  }

  int side_;
  int n_;
  int k_;
  HostGraph host_;
  std::vector<std::optional<Block>> cells_;
};

inline DesignArray new_array(int side, int n, int k, HostGraph host) {
  return DesignArray(side, n, k, std::move(host));
}

/// Value-returning placement; the argument is left untouched.
inline DesignArray place(DesignArray arr, int row, int col, Block b) {
  arr.place(row, col, std::move(b));
  return arr;
}

namespace detail {

inline void require_injective(const std::vector<int>& map, int codomain, const char* what) {
  std::vector<char> seen(static_cast<std::size_t>(std::max(codomain, 0)), 0);
  for (int x : map) {
    if (x < 0 || x >= codomain)
      throw error(errc::map_not_injective, std::string(what) + " image out of range");
    if (seen[static_cast<std::size_t>(x)]++)
      throw error(errc::map_not_injective, std::string(what) + " maps two indices to " + std::to_string(x));
  }
}

}  // namespace detail

/// Copies every occupied cell (i,j) of `source` to (row_map[i], col_map[j]) of
/// `target`, relabelling points through `point_map`. Either every block lands
/// or `target` is left unchanged.
inline void embed_into(DesignArray& target, const DesignArray& source, const std::vector<int>& row_map,
                       const std::vector<int>& col_map, const std::vector<int>& point_map) {
  if (static_cast<int>(row_map.size()) != source.side() || static_cast<int>(col_map.size()) != source.side())
    throw error(errc::invalid_argument, "row/column map size must equal source side");
  if (static_cast<int>(point_map.size()) != source.n())
    throw error(errc::invalid_argument, "point map size must equal source point count");
  if (source.k() != target.k())
    throw error(errc::wrong_block_size, "source and target matching sizes differ");
  detail::require_injective(row_map, target.side(), "row map");
  detail::require_injective(col_map, target.side(), "column map");
  detail::require_injective(point_map, target.n(), "point map");

  for (int i = 0; i < source.side(); ++i)
    for (int j = 0; j < source.side(); ++j)
      if (const auto& b = source.at(i, j))
        for (const auto& e : b->edges())
          if (e.v() >= source.n()) throw error(errc::invalid_argument, "source block uses a point outside 0..n-1");

  for (int i = 0; i < source.side(); ++i)
    for (int j = 0; j < source.side(); ++j)
      if (source.at(i, j) && target.at(row_map[i], col_map[j]))
        throw error(errc::occupied_cell, "(" + std::to_string(row_map[i]) + "," +
                                             std::to_string(col_map[j]) + ") already holds a block");

  for (int i = 0; i < source.side(); ++i)
    for (int j = 0; j < source.side(); ++j)
      if (const auto& b = source.at(i, j)) target.place(row_map[i], col_map[j], b->relabeled(point_map));
}

inline DesignArray embed(DesignArray target, const DesignArray& source, const std::vector<int>& row_map,
                         const std::vector<int>& col_map, const std::vector<int>& point_map) {
  embed_into(target, source, row_map, col_map, point_map);
  return target;
}

}  // namespace omd
