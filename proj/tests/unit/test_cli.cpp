// Copyright 2026 The tpmem Authors
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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "tpm/core/random.hpp"
#include "tpm/core/serialize.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace tpm {
namespace {

const std::string kBin = TPMEM_BINARY;
const std::string kData = TPM_TEST_DATA_DIR;

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "tpmem_cli_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

RunResult run(const std::string& args) {
  const fs::path dir = fs::temp_directory_path() / "tpmem_cli_test";
  fs::create_directories(dir);
  const fs::path out = dir / "stdout.txt", err = dir / "stderr.txt";
  const std::string cmd = kBin + " " + args + " > " + out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string data(const std::string& name) { return kData + "/" + name; }

TEST(CliValidate, ExitCodes) {
  EXPECT_EQ(run("validate " + data("markov.json")).code, 0);
  const RunResult scaled = run("validate " + data("scaled.json"));
  EXPECT_EQ(scaled.code, 1);
  EXPECT_NE(scaled.err.find("trace residual 2.000e+00"), std::string::npos) << scaled.err;
  EXPECT_NEAR(json::parse(scaled.out).at("trace").get<double>(), 2.0, 1e-9);
  EXPECT_EQ(run("validate " + data("malformed.json")).code, 2);
  EXPECT_EQ(run("validate " + data("does_not_exist.json")).code, 2);
  EXPECT_EQ(run("nonsense").code, 2);
  EXPECT_EQ(run("").code, 2);
}

TEST(CliDetect, JaynesCummingsOptimum) {
  const RunResult r = run("detect --protocol --theta " + data("jc_optimum.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j.at("value").get<double>(), 2.0, 1e-6);
  EXPECT_TRUE(j.at("detected").get<bool>());
  EXPECT_EQ(j.at("dimension_bound").get<int>(), 2);
  EXPECT_TRUE(j.contains("theta"));
  EXPECT_NEAR(j.at("protocol").at("average").get<double>(), 1.0, 1e-6);
  EXPECT_NE(r.err.find("E(W) = 2.000000"), std::string::npos) << r.err;
}

TEST(CliDetect, MarkovNotDetected) {
  const RunResult r = run("detect --lambda-star " + data("markov.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_LE(j.at("value").get<double>(), 1.0 + 1e-6);
  EXPECT_FALSE(j.at("detected").get<bool>());
  const double lo = j.at("lambda_star").at("lower").get<double>();
  const double hi = j.at("lambda_star").at("relaxation_upper").get<double>();
  EXPECT_LE(lo, hi + 1e-6);
}

TEST(CliDetect, InvalidProcessIsSemanticFailure) {
  EXPECT_EQ(run("detect " + data("scaled.json")).code, 1);
}

TEST(CliSpinboson, ScanIsDeterministic) {
  const fs::path a = scratch("scan_a"), b = scratch("scan_b");
  const std::string cfg = " --config " + data("scan_lorentzian.json");
  ASSERT_EQ(run("spinboson scan" + cfg + " --out " + a.string()).code, 0);
  ASSERT_EQ(run("spinboson scan" + cfg + " --jobs 1 --out " + b.string()).code, 0);
  const std::string csv = slurp(a / "scan.csv");
  EXPECT_EQ(csv, slurp(b / "scan.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "param,t,tau,m,detected");
  EXPECT_TRUE(json::parse(slurp(a / "scan.json")).at("detected").get<bool>());
}

TEST(CliSpinboson, UnitMismatchIsInputError) {
  EXPECT_EQ(run("spinboson scan --units g --config " + data("scan_lorentzian.json")).code, 2);
  EXPECT_EQ(run("spinboson scan --units parsec --config " + data("scan_lorentzian.json")).code, 2);
}

TEST(CliSpinboson, FigureA1WritesOneCsvPerBeta) {
  const fs::path dir = scratch("a1");
  const fs::path cfg = dir / "cfg.json";
  std::ofstream(cfg) << R"({"beta": [0.7, 1.5], "fock": [0, 1], "points": 20})";
  ASSERT_EQ(run("spinboson figureA1 --config " + cfg.string() + " --out " + dir.string()).code, 0);
  EXPECT_TRUE(fs::exists(dir / "figureA1_beta_0.7.csv"));
  EXPECT_TRUE(fs::exists(dir / "figureA1_beta_1.5.csv"));
  const json j = json::parse(slurp(dir / "figureA1.json"));
  EXPECT_NEAR(j.at("fock").at(0).at("max_m").get<double>(), 2.0, 1e-12);
}

TEST(CliSpinboson, FamilyScanReportsBracket) {
  const fs::path dir = scratch("f3");
  const fs::path cfg = dir / "cfg.json";
  std::ofstream(cfg) << R"({"grid": [2.0, 4.0]})";
  ASSERT_EQ(run("spinboson figure3 --config " + cfg.string() + " --out " + dir.string()).code, 0);
  const json j = json::parse(slurp(dir / "figure3.json"));
  EXPECT_EQ(j.at("rows").size(), 2u);
  EXPECT_TRUE(j.at("message").is_string());
}

TEST(CliWitness, ThetaStarSelfCheck) {
  const RunResult r = run("witness --theta-star --process " + data("jc_optimum.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_LT(j.at("self_check").at("residual").get<double>(), 1e-9);
  EXPECT_NEAR(j.at("self_check").at("trace_zw").get<double>(), 2.0, 1e-9);
}

TEST(CliWitness, ZeroWitnessHasZeroCoefficients) {
  const RunResult r = run("witness " + data("zero_witness.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  for (const json& t : json::parse(r.out).at("terms"))
    EXPECT_EQ(t.at("coefficient").get<double>(), 0.0);
}

TEST(CliWitness, RandomWitnessReconstructs) {
  const fs::path dir = scratch("witness");
  Rng rng(11);
  const Space abc({{"A", 2}, {"B", 2}, {"C", 2}});
  CMat g = random_ginibre(8, 8, rng);
  write_json_file((dir / "z.json").string(), operator_to_json(Operator(abc, g + g.adjoint())));
  for (const char* frame : {"sic", "standard"}) {
    const RunResult r = run("witness --seed 4 --frame " + std::string(frame) + " " +
                            (dir / "z.json").string());
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_LT(json::parse(r.out).at("self_check").at("residual").get<double>(), 1e-9);
  }
  EXPECT_EQ(run("witness").code, 1);
}

}  // namespace
}  // namespace tpm
