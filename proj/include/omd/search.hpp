#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace omd {

enum class search_status {
  found,
  proven_absent,  // the search space was exhausted without a solution
  exhausted,      // the node budget ran out first
};

inline const char* to_string(search_status s) {
  switch (s) {
    case search_status::found: return "found";
    case search_status::proven_absent: return "proven-absent";
    case search_status::exhausted: return "exhausted";
  }
  return "unknown";
}

template <class T>
struct search_result {
  search_status status = search_status::exhausted;
  std::optional<T> value;
  std::uint64_t nodes = 0;

  bool found() const noexcept { return status == search_status::found; }
};

inline constexpr std::uint64_t default_budget = 10'000'000;

/// Seeded generator for search tie-breaking. std::mt19937_64 has a fully
/// specified output sequence; the bounded draw below avoids the
/// implementation-defined std::uniform_int_distribution so shuffles are
/// reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t below(std::uint64_t bound) {
    // Rejection sampling for an unbiased draw in [0, bound).
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do x = eng_();
    while (x >= limit);
    return x % bound;
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace omd
