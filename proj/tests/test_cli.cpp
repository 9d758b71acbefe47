#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "omd/cli.hpp"

using namespace omd;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string log;
};

Run generate(int n, int k, cli::Config cfg = {}) {
  std::ostringstream out, log;
  const int code = cli::cmd_generate(n, k, cfg, out, log);
  return {code, out.str(), log.str()};
}

fs::path write_temp(const std::string& name, const std::string& text) {
  const auto p = fs::temp_directory_path() / ("omd_test_" + name);
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

Run verify_file(const fs::path& p) {
  std::ostringstream out, log;
  const int code = cli::cmd_verify(p.string(), {}, out, log);
  return {code, out.str(), log.str()};
}

}  // namespace

TEST(CliGenerate, ExitCodes) {
  const auto ok = generate(12, 2);
  EXPECT_EQ(ok.code, cli::exit_code::ok);
  EXPECT_NE(ok.log.find("side 11"), std::string::npos);
  EXPECT_NE(ok.log.find("k222-expansion-6k"), std::string::npos);
  const auto doc = json::parse(ok.out);
  EXPECT_EQ(doc["side"].get<int>(), 11);
  EXPECT_EQ(doc["meta"]["construction"].get<std::string>(), "k222-expansion-6k");
  EXPECT_TRUE(doc["meta"]["verification"]["passed"].get<bool>());

  const auto no_room = generate(6, 1);
  EXPECT_EQ(no_room.code, cli::exit_code::nonexistent);
  EXPECT_NE(no_room.log.find("4, 6"), std::string::npos) << no_room.log;
  EXPECT_TRUE(no_room.out.empty());

  const auto indivisible = generate(10, 2);
  EXPECT_EQ(indivisible.code, cli::exit_code::nonexistent);
  EXPECT_NE(indivisible.log.find("mod 2k"), std::string::npos) << indivisible.log;
}

TEST(CliGenerate, Formats) {
  cli::Config grid;
  grid.format = "grid";
  const auto g = generate(4, 2, grid);
  EXPECT_EQ(g.code, 0);
  EXPECT_EQ(g.out, to_grid(build_2k(2).design));

  cli::Config latex;
  latex.format = "latex";
  EXPECT_EQ(generate(8, 1, latex).code, 0);
  EXPECT_EQ(generate(18, 1, latex).code, cli::exit_code::usage);

  cli::Config bad;
  bad.format = "xml";
  EXPECT_EQ(generate(8, 1, bad).code, cli::exit_code::usage);
}

TEST(CliGenerate, ByteIdenticalAcrossRuns) {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{10, 1}, {16, 2}, {24, 3}}) {
    cli::Config cfg;
    cfg.seed = 99;
    EXPECT_EQ(generate(n, k, cfg).out, generate(n, k, cfg).out);
  }
}

TEST(CliGenerate, WritesToFile) {
  const auto p = fs::temp_directory_path() / "omd_test_out.json";
  cli::Config cfg;
  cfg.out = p.string();
  const auto r = generate(8, 2, cfg);
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(ss.str(), generate(8, 2).out);
  fs::remove(p);
}

TEST(CliVerify, RoundTripAndFailures) {
  const auto generated = generate(16, 2).out;
  const auto good = write_temp("good.json", generated);
  EXPECT_EQ(verify_file(good).code, cli::exit_code::ok);

  auto doc = json::parse(generated);
  auto& edges = doc["cells"][0]["edges"];
  const auto removed = edges[0];
  edges.erase(edges.begin());
  const auto bad = write_temp("bad.json", doc.dump());
  const auto r = verify_file(bad);
  EXPECT_EQ(r.code, cli::exit_code::verify_failed);
  const auto pair = "{" + std::to_string(removed[0].get<int>()) + "," + std::to_string(removed[1].get<int>()) + "}";
  EXPECT_NE(r.out.find(pair), std::string::npos) << r.out;

  const auto malformed = write_temp("malformed.json", "{\"n\": 4,");
  EXPECT_EQ(verify_file(malformed).code, cli::exit_code::parse);
  EXPECT_EQ(verify_file(fs::temp_directory_path() / "omd_test_missing.json").code, cli::exit_code::parse);

  auto wrong_t = json::parse(generated);
  wrong_t["meta"]["transversal"] = json::array({json::array({0, 0})});
  const auto wt = write_temp("wrong_t.json", wrong_t.dump());
  EXPECT_EQ(verify_file(wt).code, cli::exit_code::verify_failed);

  for (const auto& p : {good, bad, malformed, wt}) fs::remove(p);
}

TEST(CliTransversal, FindsCertifiedTransversal) {
  const auto p = write_temp("t.json", generate(12, 1).out);
  std::ostringstream out, log;
  EXPECT_EQ(cli::cmd_transversal(p.string(), {}, out, log), 0);
  Transversal t;
  for (const auto& c : json::parse(out.str())) t.cells.push_back({c[0].get<int>(), c[1].get<int>()});
  EXPECT_TRUE(verify_transversal(design_from_string(generate(12, 1).out), t).passed);
  fs::remove(p);
}

TEST(CliSweep, SmallBounds) {
  const auto rows = cli::sweep(24, 3, {});
  int nonexistent = 0;
  for (const auto& r : rows) {
    if (r.k == 1 && (r.n == 4 || r.n == 6)) {
      EXPECT_EQ(r.status, "nonexistent");
      ++nonexistent;
    } else {
      EXPECT_EQ(r.status, "verified") << r.n << "," << r.k;
      EXPECT_TRUE(r.counting_law);
      EXPECT_TRUE(r.transversal);
    }
  }
  EXPECT_EQ(nonexistent, 2);
  // k=1: 12 values, k=2: 6, k=3: 4.
  EXPECT_EQ(rows.size(), 22u);

  std::ostringstream out, log;
  EXPECT_EQ(cli::cmd_sweep(24, 3, {}, out, log), 0);

  const auto single = cli::sweep(2, 1, {});
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].n, 2);
  EXPECT_EQ(single[0].status, "verified");
}

TEST(CliSweep, ExhaustedBudgetExitsThree) {
  cli::Config tight;
  tight.budget = 1;
  std::ostringstream out, log;
  // (10,1) needs backtracking, which cannot finish in one node.
  EXPECT_EQ(cli::cmd_sweep(10, 1, tight, out, log), cli::exit_code::budget) << out.str();
}
