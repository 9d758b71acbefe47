#include <gtest/gtest.h>

#include "omd/composer.hpp"

using namespace omd;

namespace {

IngredientSet ingredients_over(RoomSquare room, int s) {
  auto diag = build_2k(s);
  return IngredientSet{std::move(room.design), std::move(*room.transversal), build_m1k(s),
                       std::move(diag.design), std::move(diag.transversal), std::move(diag.hole)};
}

void expect_composition(const IngredientSet& ing, int expect_side) {
  const int s = ing.cell_ingredient.n() / 2;
  const auto out = compose(ing);
  EXPECT_EQ(out.design.side(), s * ing.outer.side() + s - 1);
  EXPECT_EQ(out.design.side(), expect_side);
  EXPECT_EQ(out.design.n(), s * ing.outer.n());
  EXPECT_TRUE(verify(out.design).passed);
  ASSERT_TRUE(out.transversal);
  EXPECT_TRUE(verify_transversal(out.design, *out.transversal).passed);
}

}  // namespace

TEST(Compose, DegenerateIdentity) {
  for (int k = 1; k <= 5; ++k) {
    auto outer = build_2k(1);
    auto diag = build_2k(k);
    IngredientSet ing{outer.design, outer.transversal, build_m1k(k), diag.design, diag.transversal, diag.hole};
    const auto out = compose(ing);
    EXPECT_EQ(out.design.side(), 2 * k - 1);
    EXPECT_EQ(out.design.n(), 2 * k);
    EXPECT_TRUE(verify(out.design).passed);
    EXPECT_EQ(out.design.nonempty_count(), diag.design.nonempty_count());
  }
}

TEST(Compose, RoomEightWithScaleTwo) { expect_composition(ingredients_over(build_room(8), 2), 15); }

TEST(Compose, RoomTenWithScaleThree) { expect_composition(ingredients_over(build_room(10), 3), 29); }

TEST(Compose, SizeIdentityAcrossScales) {
  for (int n : {8, 10, 12})
    for (int s = 1; s <= 4; ++s) {
      SCOPED_TRACE(testing::Message() << "n=" << n << " s=" << s);
      expect_composition(ingredients_over(build_room(n), s), s * n - 1);
    }
}

TEST(Compose, IncoherentIngredients) {
  auto expect_incoherent = [](const IngredientSet& ing) {
    try {
      compose(ing);
      FAIL() << "expected IncoherentIngredients";
    } catch (const error& e) {
      EXPECT_EQ(e.code(), errc::incoherent_ingredients);
    }
  };
  const auto base = ingredients_over(build_room(8), 2);

  auto mismatched_k = base;
  mismatched_k.cell_ingredient = build_m1k(3);
  expect_incoherent(mismatched_k);

  auto bad_transversal = base;
  bad_transversal.outer_transversal.cells.front().col = (bad_transversal.outer_transversal.cells.front().col + 1) % 7;
  expect_incoherent(bad_transversal);

  auto bad_hole = base;
  bad_hole.ingredient_hole = Hole{{0}, {0}};
  expect_incoherent(bad_hole);

  auto wrong_host = base;
  wrong_host.transversal_ingredient = build_4k(2);
  expect_incoherent(wrong_host);
}

TEST(Construct, NonExistent) {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{10, 2}, {6, 1}, {4, 1}, {9, 1}, {12, 4}}) {
    try {
      construct(n, k);
      FAIL() << "expected NonExistent for (" << n << "," << k << ")";
    } catch (const error& e) {
      EXPECT_EQ(e.code(), errc::nonexistent);
    }
  }
  EXPECT_NE(nonexistence_reason(10, 2).find("divisible"), std::string::npos);
  EXPECT_NE(nonexistence_reason(6, 1).find("Room square"), std::string::npos);
  EXPECT_EQ(nonexistence_reason(24, 3), "");
}

TEST(Construct, PathsAndVerification) {
  struct Case {
    int n, k;
    std::string path_prefix;
  };
  for (const auto& c : std::vector<Case>{{2, 1, "room-square/trivial"},
                                         {8, 1, "room-square/strong-starter"},
                                         {10, 1, "room-square/backtracking"},
                                         {4, 2, "diagonal-2k"},
                                         {8, 2, "block-circulant-4k"},
                                         {12, 2, "k222-expansion-6k"},
                                         {16, 2, "composition(room-8"},
                                         {24, 3, "composition(room-8"},
                                         {30, 3, "composition(room-10"}}) {
    SCOPED_TRACE(testing::Message() << "(" << c.n << "," << c.k << ")");
    const auto out = construct(c.n, c.k);
    EXPECT_EQ(out.path.rfind(c.path_prefix, 0), 0u) << out.path;
    EXPECT_EQ(out.design.side(), c.n - 1);
    EXPECT_TRUE(out.report.passed);
    EXPECT_TRUE(verify(out.design).passed);
    ASSERT_TRUE(out.transversal);
    EXPECT_TRUE(verify_transversal(out.design, *out.transversal).passed);
  }
}

TEST(Construct, Deterministic) {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{10, 1}, {14, 1}, {16, 2}, {24, 3}}) {
    const auto a = construct(n, k, {5, default_budget});
    const auto b = construct(n, k, {5, default_budget});
    EXPECT_EQ(a.design, b.design);
    EXPECT_EQ(a.transversal, b.transversal);
    EXPECT_EQ(a.path, b.path);
  }
}

TEST(Construct, InvalidArguments) {
  EXPECT_THROW(construct(0, 1), error);
  EXPECT_THROW(construct(8, 0), error);
}
