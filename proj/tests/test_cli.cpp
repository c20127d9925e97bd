// Copyright 2026 The semicoh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "semicoh/cli.hpp"

namespace fs = std::filesystem;
using semicoh::cli::run;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("semicoh_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int quiet(std::vector<std::string> args, std::string* err_text = nullptr) {
  std::ostringstream log, err;
  int code = run(std::move(args), log, err);
  if (err_text) *err_text = err.str();
  return code;
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Cli, UsageErrorsNameTheFlag) {
  std::string err;
  EXPECT_EQ(quiet({"trotter", "--bogus", "1"}, &err), semicoh::cli::kExitUsage);
  EXPECT_NE(err.find("--bogus"), std::string::npos);
  EXPECT_EQ(quiet({"walk", "--steps", "abc"}, &err), semicoh::cli::kExitUsage);
  EXPECT_NE(err.find("--steps"), std::string::npos);
  EXPECT_EQ(quiet({"symmetry-table", "--t-grid", "0.1,x", "--out", scratch("bad").string()}, &err),
            semicoh::cli::kExitUsage);
  EXPECT_NE(err.find("--t-grid"), std::string::npos);
  EXPECT_EQ(quiet({}, &err), semicoh::cli::kExitUsage);
  EXPECT_EQ(quiet({"--help"}), semicoh::cli::kExitOk);
}

TEST(Cli, NumericalFailureExitCode) {
  fs::path dir = scratch("numerical");
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "h.json");
    f << R"({"dim": 2, "re": [0, 1, 0, 0], "im": [0, 0, 0, 0]})";
  }
  std::string err;
  int code = quiet({"qze", "--hamiltonian", "file:" + (dir / "h.json").string(), "--dim", "2", "--out",
                    (dir / "out").string()},
                   &err);
  EXPECT_EQ(code, semicoh::cli::kExitNumerical) << err;
}

TEST(Cli, TrotterGridShape) {
  fs::path out = scratch("trotter");
  ASSERT_EQ(quiet({"trotter", "--out", out.string()}), 0);
  std::string csv = slurp(out / "grid.csv");
  EXPECT_EQ(csv.rfind("t,theta,err_plus,err_trotter2\n", 0), 0u);
  EXPECT_EQ(count_lines(csv), 4097);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
}

TEST(Cli, ManifestReplayIsByteIdentical) {
  fs::path a = scratch("replay_a"), b = scratch("replay_b");
  ASSERT_EQ(quiet({"walk", "--shots", "20", "--steps", "30", "--seed", "4", "--out", a.string()}), 0);
  ASSERT_EQ(quiet({"walk", "--config", (a / "manifest.json").string(), "--out", b.string()}), 0);
  for (const char* f : {"bitmatrix.csv", "fidelities.csv", "summary.json"}) EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  fs::path c = scratch("replay_c");
  ASSERT_EQ(quiet({"walk", "--config", (a / "manifest.json").string(), "--seed", "5", "--out", c.string()}), 0);
  EXPECT_NE(slurp(a / "bitmatrix.csv"), slurp(c / "bitmatrix.csv"));
  std::string err;
  EXPECT_EQ(quiet({"trotter", "--config", (a / "manifest.json").string()}, &err), semicoh::cli::kExitUsage);
}

TEST(Cli, SeedEnvironmentOverride) {
  fs::path a = scratch("env_a"), b = scratch("env_b");
  ASSERT_EQ(quiet({"walk", "--shots", "10", "--steps", "20", "--seed", "9", "--out", a.string()}), 0);
  setenv("SEMICOH_SEED", "9", 1);
  int code = quiet({"walk", "--shots", "10", "--steps", "20", "--seed", "2", "--out", b.string()});
  unsetenv("SEMICOH_SEED");
  ASSERT_EQ(code, 0);
  EXPECT_EQ(slurp(a / "bitmatrix.csv"), slurp(b / "bitmatrix.csv"));
}

TEST(Cli, JsonKeysSortedWithUnixNewlines) {
  fs::path out = scratch("mermin");
  ASSERT_EQ(quiet({"mermin", "--out", out.string()}), 0);
  std::string text = slurp(out / "report.json");
  EXPECT_EQ(text.find('\r'), std::string::npos);
  EXPECT_EQ(text.back(), '\n');
  auto j = nlohmann::json::parse(text);
  std::string prev;
  for (auto it = j.begin(); it != j.end(); ++it) {
    EXPECT_LT(prev, it.key());
    prev = it.key();
  }
  size_t pos = 0;
  for (auto it = j.begin(); it != j.end(); ++it) {
    size_t at = text.find("\"" + it.key() + "\"", pos);
    ASSERT_NE(at, std::string::npos) << it.key();
    pos = at;
  }
  EXPECT_NEAR(j["expectation"].get<double>(), 2.0, 1e-12);
  EXPECT_NEAR(j["p0"].get<double>(), 0.25, 1e-12);
  auto m = nlohmann::json::parse(slurp(out / "manifest.json"));
  EXPECT_EQ(m["subcommand"], "mermin");
}
