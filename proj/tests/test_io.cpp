#include <gtest/gtest.h>

#include "omd/composer.hpp"
#include "omd/io.hpp"

using namespace omd;

namespace {

void expect_parse_error(const std::string& text) {
  try {
    design_from_string(text);
    FAIL() << "expected ParseError for " << text;
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::parse_error) << text;
  }
}

}  // namespace

TEST(Json, ExactLayoutOfSmallDesign) {
  const auto arr = build_m1k(1);
  EXPECT_EQ(design_to_json(arr).dump(),
            R"({"n":2,"k":1,"side":1,"host":{"type":"lex_matching","l":1,"s":1},)"
            R"("cells":[{"row":0,"col":0,"edges":[[0,1]]}]})");
}

TEST(Json, RoundTripIsIdentity) {
  std::vector<DesignArray> designs{build_m1k(3), build_2k(4).design, build_4k(3), build_6k(2), k222_seed(),
                                   construct(10, 1).design, construct(16, 2).design,
                                   new_array(0, 2, 1, Complete{2})};
  designs.push_back(DesignArray(3, 6, 1, CompleteBipartite{3, 3}));
  designs.push_back(DesignArray(3, 6, 1, LexMatchingComplete{1, 3}));
  for (const auto& d : designs) {
    const auto text = design_to_json(d).dump();
    const auto back = design_from_string(text);
    EXPECT_EQ(back, d);
    EXPECT_EQ(design_to_json(back).dump(), text);
  }
}

TEST(Json, ParseErrors) {
  expect_parse_error("{not json");
  expect_parse_error(R"({"n":4,"k":1,"side":3})");
  expect_parse_error(R"({"n":4,"k":1,"side":3,"host":{"type":"petersen"},"cells":[]})");
  expect_parse_error(R"({"n":4,"k":1,"side":3,"host":{"type":"complete","n":4},"cells":[{"row":5,"col":0,"edges":[[0,1]]}]})");
  expect_parse_error(R"({"n":4,"k":1,"side":3,"host":{"type":"complete","n":4},"cells":[{"row":0,"col":0,"edges":[[1,1]]}]})");
  expect_parse_error(
      R"({"n":4,"k":1,"side":3,"host":{"type":"complete","n":4},"cells":[{"row":0,"col":0,"edges":[[0,1]]},{"row":0,"col":0,"edges":[[2,3]]}]})");
  expect_parse_error(R"({"n":"4","k":1,"side":3,"host":{"type":"complete","n":4},"cells":[]})");
}

TEST(Json, CombinatorialProblemsAreLeftToTheVerifier) {
  // Parses, but the block has the wrong size.
  const auto arr = design_from_string(
      R"({"n":4,"k":2,"side":3,"host":{"type":"complete","n":4},"cells":[{"row":0,"col":0,"edges":[[0,1]]}]})");
  EXPECT_FALSE(verify(arr).passed);
}

TEST(Grid, Format) {
  EXPECT_EQ(to_grid(build_2k(2).design), "0-3,1-2|.|.\n.|0-2,1-3|.\n.|.|0-1,2-3\n");
  EXPECT_EQ(to_grid(build_2k(1).design), "0-1\n");
}

TEST(Latex, SideLimit) {
  const auto small = to_latex(build_2k(1).design);
  EXPECT_NE(small.find("\\begin{array}{|c|}"), std::string::npos);
  EXPECT_NE(small.find("0\\;1"), std::string::npos);
  EXPECT_NO_THROW(to_latex(construct(16, 1).design));
  try {
    to_latex(construct(18, 1).design);
    FAIL() << "expected refusal above side 15";
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::invalid_argument);
    EXPECT_NE(std::string(e.what()).find("15"), std::string::npos);
  }
}

TEST(Report, Json) {
  auto arr = build_2k(2).design;
  arr.set_unchecked(0, 1, *arr.at(0, 0));
  const auto j = report_to_json(verify(arr));
  EXPECT_FALSE(j["passed"].get<bool>());
  bool saw_counterexample = false;
  for (const auto& c : j["checks"])
    if (!c["passed"].get<bool>()) saw_counterexample = saw_counterexample || c.contains("counterexample");
  EXPECT_TRUE(saw_counterexample);
  EXPECT_EQ(j["counts"]["nonempty"].get<int>(), 4);
}
