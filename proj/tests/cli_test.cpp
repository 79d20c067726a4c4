#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "nsg/cli.hpp"
#include "oracles.hpp"

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "nsg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = nsg::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST(Cli, CountSmallTable) {
  auto r = run({"count", "--max-genus", "2", "--threads", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 4U);
  EXPECT_EQ(rows[0][0], "g");
  EXPECT_EQ((std::vector<std::string>(rows[1].begin(), rows[1].begin() + 3)), (std::vector<std::string>{"0", "1", "1"}));
  EXPECT_EQ((std::vector<std::string>(rows[2].begin(), rows[2].begin() + 3)), (std::vector<std::string>{"1", "1", "1"}));
  EXPECT_EQ((std::vector<std::string>(rows[3].begin(), rows[3].begin() + 3)), (std::vector<std::string>{"2", "2", "2"}));
  EXPECT_EQ(rows[1][3], "");
  EXPECT_EQ(rows[2][3], "1.0");
  EXPECT_EQ(rows[3][3], "2.0");
  EXPECT_EQ(rows[2][4], "0.61803398875");  // phi^-1
}

TEST(Cli, CountOracleCheck) {
  auto r = run({"count", "--max-genus", "12", "--check-oracle"});
  EXPECT_EQ(r.code, 0) << r.err;
  auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 14U);
  for (int g = 0; g <= 12; ++g)
    EXPECT_EQ(rows[static_cast<std::size_t>(g) + 1][1], std::to_string(oracle::all_of_genus(g).size()));
}

TEST(Cli, CsvAndJsonAgree) {
  auto csv = run({"count", "--max-genus", "9", "--partition"});
  auto json = run({"count", "--max-genus", "9", "--partition", "--format", "json"});
  ASSERT_EQ(csv.code, 0);
  ASSERT_EQ(json.code, 0);
  auto rows = csv_rows(csv.out);
  auto j = nlohmann::json::parse(json.out);
  ASSERT_EQ(j.size() + 1, rows.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& row = rows[i + 1];
    EXPECT_EQ(std::to_string(j[i]["n_g"].get<std::uint64_t>()), row[1]);
    EXPECT_EQ(std::to_string(j[i]["t_g"].get<std::uint64_t>()), row[2]);
    EXPECT_EQ(std::to_string(j[i]["n_g1"].get<std::uint64_t>()), row[3]);
    EXPECT_EQ(j[i]["ng_phi_g"].get<std::string>(), row[7]);
  }
  EXPECT_TRUE(j[0]["ratio_prev"].is_null());
}

TEST(Cli, CountIsThreadIndependent) {
  auto one = run({"count", "--max-genus", "22", "--threads", "1", "--partition"});
  auto four = run({"count", "--max-genus", "22", "--threads", "4", "--partition"});
  ASSERT_EQ(one.code, 0);
  EXPECT_EQ(one.out, four.out);
}

TEST(Cli, CountExactColumns) {
  auto r = run({"count", "--max-genus", "4", "--exact"});
  ASSERT_EQ(r.code, 0);
  auto rows = csv_rows(r.out);
  EXPECT_EQ(rows[5][3], "7/4");
  EXPECT_EQ(rows[5][5], "6/7");
}

TEST(Cli, CountLimitsAndUsage) {
  EXPECT_EQ(run({"count", "--max-genus", "90"}).code, 3);
  EXPECT_EQ(run({"count", "--max-genus", "-1"}).code, 2);
  EXPECT_EQ(run({"count", "--threads", "0"}).code, 2);
  EXPECT_EQ(run({"count", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, VerifyExitCodes) {
  auto app = run({"verify", "appendix", "--format", "json"});
  EXPECT_EQ(app.code, 0) << app.err;
  auto ledger = nlohmann::json::parse(app.out);
  bool w5 = false;
  for (const auto& e : ledger)
    if (e["claim"] == "appendix-ceiling" && e["params"]["I"] == 2 && e["params"]["n"] == 5) {
      w5 = e["holds"].get<bool>() && e["rhs"].get<std::string>().find("659987") != std::string::npos;
    }
  EXPECT_TRUE(w5);
  EXPECT_NE(app.err.find("appendix"), std::string::npos);

  EXPECT_EQ(run({"verify", "interval-weight", "--fm-max", "6"}).code, 0);
  EXPECT_EQ(run({"verify", "bogus"}).code, 2);
  EXPECT_EQ(run({"verify", "ng-bound", "--max-genus", "40"}).code, 2);

  auto s5 = run({"verify", "section5", "--m-max", "2", "--fm-max", "7"});
  EXPECT_EQ(s5.code, 1);
  EXPECT_NE(s5.out.find("{1,3,5,7,9}"), std::string::npos);
}

TEST(Cli, VerifyCsvLedger) {
  auto r = run({"verify", "main-lemma", "--m-max", "3", "--fm-max", "2", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  auto rows = csv_rows(r.out);
  EXPECT_EQ(rows[0][0], "suite");
  EXPECT_GT(rows.size(), 3U);
}

TEST(Cli, InspectExamples) {
  auto one = run({"inspect", "--gaps", "1"});
  ASSERT_EQ(one.code, 0);
  EXPECT_NE(one.out.find("m=2 f=1 g=1 h=2 strong=true"), std::string::npos) << one.out;

  auto s = run({"inspect", "--gaps", "1,2,4"});
  ASSERT_EQ(s.code, 0);
  EXPECT_NE(s.out.find("effective {5,7}"), std::string::npos);
  EXPECT_NE(s.out.find("strong=true"), std::string::npos);

  auto bad = run({"inspect", "--gaps", "2"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("1 + 1 = 2"), std::string::npos);
  EXPECT_EQ(run({"inspect", "--gaps", "1,x"}).code, 2);
  EXPECT_EQ(run({"inspect"}).code, 2);

  auto j = nlohmann::json::parse(run({"inspect", "--gaps", "1,2,4", "--format", "json"}).out);
  EXPECT_EQ(j["effective"], nlohmann::json::array({5, 7}));
  EXPECT_EQ(j["children"].size(), 2U);
}
