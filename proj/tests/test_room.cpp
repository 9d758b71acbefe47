#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "omd/room.hpp"
#include "omd/verifier.hpp"

using namespace omd;

namespace {

int md(int x, int r) { return ((x % r) + r) % r; }

// The three strong-starter conditions, checked directly.
bool is_strong_starter(int r, const std::vector<std::pair<int, int>>& pairs) {
  std::set<int> elems, diffs, sums;
  for (auto [x, y] : pairs) {
    elems.insert(x);
    elems.insert(y);
    diffs.insert(md(x - y, r));
    diffs.insert(md(y - x, r));
    sums.insert(md(x + y, r));
  }
  const auto m = static_cast<std::size_t>(r - 1);
  return elems.size() == m && !elems.count(0) && diffs.size() == m && !diffs.count(0) &&
         sums.size() == m / 2 && !sums.count(0);
}

// Enumerates every pairing of Z_r \ {0} and counts the strong starters.
int count_strong_starters(int r) {
  std::vector<int> free;
  for (int x = 1; x < r; ++x) free.push_back(x);
  std::vector<std::pair<int, int>> cur;
  int count = 0;
  std::function<void(std::vector<int>)> rec = [&](std::vector<int> rest) {
    if (rest.empty()) {
      count += is_strong_starter(r, cur);
      return;
    }
    const int x = rest.front();
    for (std::size_t i = 1; i < rest.size(); ++i) {
      std::vector<int> next;
      for (std::size_t j = 1; j < rest.size(); ++j)
        if (j != i) next.push_back(rest[j]);
      cur.emplace_back(x, rest[i]);
      rec(next);
      cur.pop_back();
    }
  };
  rec(free);
  return count;
}

StarterAdder with_adder(int r, std::vector<std::pair<int, int>> pairs) {
  StarterAdder sa{r, std::move(pairs), {}};
  for (auto [x, y] : sa.pairs) sa.adder.push_back(md(x + y, r));
  return sa;
}

}  // namespace

TEST(StrongStarter, SevenExampleIsValid) {
  const std::vector<std::pair<int, int>> pairs{{1, 3}, {2, 6}, {4, 5}};
  ASSERT_TRUE(is_strong_starter(7, pairs));
  EXPECT_EQ(starter_violation(with_adder(7, pairs)), "");
  const auto room = room_from_starter(with_adder(7, pairs));
  EXPECT_TRUE(verify(room.design).passed);
}

TEST(StrongStarter, NoneInNine) {
  EXPECT_EQ(count_strong_starters(9), 0);
  EXPECT_EQ(strong_starter_search(9).status, search_status::proven_absent);
  EXPECT_GT(count_strong_starters(7), 0);
  EXPECT_GT(count_strong_starters(11), 0);
}

TEST(StrongStarter, RejectsSmallModulus) {
  for (int r : {5, 3, 8}) {
    try {
      strong_starter_search(r);
      FAIL() << "expected rejection for r=" << r;
    } catch (const error& e) {
      EXPECT_EQ(e.code(), errc::invalid_argument);
    }
  }
}

TEST(StrongStarter, SearchOutputRevalidated) {
  for (int r = 7; r <= 31; r += 2) {
    if (r == 9) continue;
    const auto res = strong_starter_search(r);
    ASSERT_TRUE(res.found()) << r;
    EXPECT_TRUE(is_strong_starter(r, res.value->pairs)) << r;
    EXPECT_EQ(starter_violation(*res.value), "") << r;
  }
}

TEST(RoomFromStarter, EveryAcceptedStarterUpTo31) {
  for (int r = 7; r <= 31; r += 2) {
    const auto res = strong_starter_search(r);
    if (!res.found()) continue;
    const auto room = room_from_starter(*res.value);
    SCOPED_TRACE(r);
    EXPECT_EQ(room.design.side(), r);
    EXPECT_TRUE(verify(room.design).passed);
    ASSERT_TRUE(room.transversal);
    EXPECT_TRUE(verify_transversal(room.design, *room.transversal).passed);
  }
}

TEST(RoomFromStarter, ColumnsResolveAllPoints) {
  for (int r : {7, 11}) {
    const auto room = room_from_starter(*strong_starter_search(r).value);
    for (int c = 0; c < r; ++c) {
      std::set<int> pts;
      for (int row = 0; row < r; ++row)
        if (const auto& b = room.design.at(row, c))
          for (int p : b->points()) {
            EXPECT_TRUE(pts.insert(p).second);
          }
      EXPECT_EQ(static_cast<int>(pts.size()), r + 1);
    }
  }
}

TEST(RoomFromStarter, InvalidStarterThrows) {
  try {
    room_from_starter(StarterAdder{7, {{1, 2}, {3, 4}, {5, 6}}, {3, 0, 4}});
    FAIL() << "expected InvalidStarter";
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::invalid_starter);
  }
}

TEST(RoomSearch, Examples) {
  const auto seven = room_search(7, 1);
  ASSERT_TRUE(seven.found());
  EXPECT_TRUE(verify(seven.value->design).passed);

  EXPECT_EQ(room_search(3, 0).status, search_status::proven_absent);
  EXPECT_EQ(room_search(5, 0).status, search_status::proven_absent);

  const auto nine = room_search(9, 0);
  ASSERT_TRUE(nine.found());
  EXPECT_EQ(nine.value->design.n(), 10);
  EXPECT_TRUE(verify(nine.value->design).passed);
}

TEST(RoomSearch, SameSeedSameSquare) {
  for (std::uint64_t seed : {0u, 7u, 42u}) {
    const auto a = room_search(9, seed);
    const auto b = room_search(9, seed);
    ASSERT_TRUE(a.found());
    EXPECT_EQ(a.value->design, b.value->design);
    EXPECT_EQ(a.nodes, b.nodes);
  }
}

TEST(BuildRoom, Examples) {
  for (int n : {4, 6, 5}) {
    try {
      build_room(n);
      FAIL() << "expected NonExistent for " << n;
    } catch (const error& e) {
      EXPECT_EQ(e.code(), errc::nonexistent);
    }
  }
  const auto two = build_room(2);
  EXPECT_EQ(two.design.side(), 1);
  EXPECT_EQ(*two.design.at(0, 0), (Block{{0, 1}}));
  EXPECT_EQ(two.transversal->cells, (std::vector<Cell>{{0, 0}}));

  const auto eight = build_room(8);
  EXPECT_EQ(eight.design.side(), 7);
  EXPECT_TRUE(verify(eight.design).passed);
  ASSERT_TRUE(eight.transversal);
  EXPECT_TRUE(verify_transversal(eight.design, *eight.transversal).passed);

  const auto ten = build_room(10);
  EXPECT_EQ(ten.method, "backtracking");
  EXPECT_TRUE(verify(ten.design).passed);
}

TEST(FindTransversal, Examples) {
  const auto one = build_room(2);
  const auto t1 = find_transversal(one.design);
  ASSERT_TRUE(t1.found());
  EXPECT_EQ(t1.value->cells, (std::vector<Cell>{{0, 0}}));

  for (int n : {8, 12, 16}) {
    const auto room = build_room(n);
    const auto t = find_transversal(room.design);
    ASSERT_TRUE(t.found());
    EXPECT_TRUE(verify_transversal(room.design, *t.value).passed);
  }
}

TEST(FindTransversal, AlwaysCertified) {
  // A 2x2 array on K_4 with no transversal: (0,0) and (1,1) cover {0,1} twice.
  DesignArray arr(2, 4, 1, Complete{4});
  arr.place(0, 0, Block{{0, 1}});
  arr.place(1, 1, Block{{0, 1}});
  const auto res = find_transversal(arr);
  EXPECT_FALSE(res.found());
}
