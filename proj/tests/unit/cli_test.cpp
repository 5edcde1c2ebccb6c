// Copyright 2026 The aotoc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include "aotoc/closedforms.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace aotoc::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

fs::path write_config(const std::string& name, const std::string& body) {
  const fs::path p = fs::temp_directory_path() / ("aotoc_cli_" + name);
  std::ofstream(p) << body;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

TEST(Cli, StabilizerWorkedValue) {
  const Result r = invoke({"stabilizer", "--n", "3", "--k", "1", "--chi", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0][3], "g");
  EXPECT_NEAR(std::stod(rows[1][3]), 0.1875, 1e-10);
  EXPECT_NEAR(std::stod(rows[1][8]), 0.1875, 1e-15);
}

TEST(Cli, ExampleOneMatchesClosedForm) {
  const Result r = invoke({"examples", "--which", "1", "--n", "2", "--tmax", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 62u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double t = std::stod(rows[i][0]);
    const double beta = (1.0 - std::exp(-2.0 * t)) / 2.0;
    EXPECT_NEAR(std::stod(rows[i][1]), beta * beta * 0.75, 1e-8);
  }
}

TEST(Cli, ComputeIdentityChannelFromConfig) {
  const fs::path cfg = write_config(
      "identity.json",
      R"({"command": "compute", "algebra": {"kind": "bipartite", "dA": 2, "dB": 2}, "channel": {"kind": "identity"}})");
  const Result r = invoke({"--config", cfg.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][0], "correlator");
  EXPECT_EQ(std::stod(rows[1][1]), 0.0);
}

TEST(Cli, ComputeRoutesAgree) {
  std::vector<double> values;
  for (const std::string route : {"correlator", "replica"}) {
    const fs::path cfg = write_config(
        "routes.json", R"({"algebra": {"kind": "maximal_abelian", "dim": 4}, "channel": {"kind": "haar"}})");
    const Result r = invoke({"compute", "--config", cfg.string(), "--route", route, "--seed", "4"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    values.push_back(std::stod(parse_csv(r.out)[1][1]));
  }
  EXPECT_NEAR(values[0], values[1], 1e-10);
}

TEST(Cli, FlagsOverrideConfigValues) {
  const fs::path cfg = write_config("override.json", R"({"command": "stabilizer", "n": 3, "k": 1, "chi": 0})");
  const Result r = invoke({"stabilizer", "--config", cfg.string(), "--chi", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(parse_csv(r.out)[1][2], "1");
}

TEST(Cli, ConfigErrorsExitTwoWithFieldName) {
  const fs::path unknown = write_config("unknown.json", R"({"command": "pxp", "sitez": 8})");
  Result r = invoke({"--config", unknown.string()});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("sitez"), std::string::npos) << r.err;

  const fs::path typed = write_config("typed.json", R"({"sites": "eight"})");
  r = invoke({"pxp", "--config", typed.string()});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("'sites'"), std::string::npos) << r.err;

  const fs::path broken = write_config("broken.json", "{\n  \"n\": 3,\n  ,\n}");
  r = invoke({"stabilizer", "--config", broken.string()});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;

  const fs::path nested = write_config(
      "nested.json", R"({"algebra": {"kind": "bipartite", "dA": 2, "dB": 2, "dC": 1}, "channel": {"kind": "identity"}})");
  r = invoke({"compute", "--config", nested.string()});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("algebra.dC"), std::string::npos) << r.err;

  EXPECT_EQ(invoke({"stabilizer", "--n", "3", "--k", "1"}).code, kExitConfig);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitConfig);
  EXPECT_EQ(invoke({}).code, kExitConfig);
  EXPECT_EQ(invoke({"examples", "--which", "3"}).code, kExitConfig);
}

TEST(Cli, HelpExitsCleanly) {
  const Result r = invoke({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("pxp"), std::string::npos);
}

TEST(Cli, NumericalFailureExitsThree) {
  // Forcing the sparse Taylor path on a stiff generator exhausts the substep budget.
  const fs::path cfg = write_config(
      "stiff.json",
      R"({"command": "pxp", "sites": 4, "gamma": 1e12, "tmax": 1, "dt": 0.5, "tolerance": {"dense_threshold": 1}})");
  const Result r = invoke({"--config", cfg.string()});
  EXPECT_EQ(r.code, kExitNumerical) << r.err;
  EXPECT_NE(r.err.find("substep"), std::string::npos) << r.err;
}

TEST(Cli, OutputFilesAreReproducible) {
  const fs::path dir = fs::temp_directory_path() / "aotoc_cli_out";
  fs::remove_all(dir);
  const fs::path a = dir / "a.csv", b = dir / "b.csv";
  for (const fs::path& p : {a, b}) {
    const Result r = invoke({"pxp", "--sites", "6", "--alpha", "0.05", "--gamma", "0.05", "--tmax", "1.5", "--out",
                             p.string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
  }
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_TRUE(fs::exists(dir / "a.meta.json"));
  EXPECT_TRUE(fs::exists(dir / "a.plot.dat"));
  EXPECT_NE(slurp(dir / "a.meta.json").find("\"seed\""), std::string::npos);
  EXPECT_EQ(slurp(a).substr(0, 23), "t,g,g1,g2,bound,typical");
}

TEST(Cli, HaarTypicalAndDfsRuns) {
  Result r = invoke({"haar-typical", "--blocks", "2x4", "--samples", "400", "--seed", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = parse_csv(r.out);
  EXPECT_LE(std::abs(std::stod(rows[1][0]) - 5.0 / 7.0), 4.0 * std::stod(rows[1][1]));
  EXPECT_EQ(invoke({"haar-typical", "--blocks", "2y4"}).code, kExitConfig);

  r = invoke({"xxx-dfs", "--sites", "4", "--lambdas", "0,0.1", "--tmax", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto dfs = parse_csv(r.out);
  EXPECT_EQ(dfs[0][0], "lambda");
  for (std::size_t i = 1; i < dfs.size(); ++i)
    if (dfs[i][0] == "0") EXPECT_LE(std::abs(std::stod(dfs[i][2])), 1e-9);
}

TEST(Cli, ValidateSubset) {
  const Result r = invoke({"validate", "--only", "1,7"});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  EXPECT_NE(r.out.find("[PASS]  1"), std::string::npos);
  EXPECT_NE(r.out.find("[PASS]  7"), std::string::npos);
}

}  // namespace
}  // namespace aotoc::cli
