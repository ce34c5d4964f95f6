// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "hecke_bose/hecke_bose.hpp"

using namespace hecke_bose;
using Json = nlohmann::json;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& binary, const std::string& args) {
  const std::string command = binary + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  Run r;
  if (!pipe) return r;
  char buffer[4096];
  std::size_t n;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) r.out.append(buffer, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

Run cli(const std::string& args) { return run(HECKE_BOSE_CLI, args); }

std::string scratch(const std::string& name) {
  std::filesystem::create_directories(HECKE_BOSE_SCRATCH);
  return std::string(HECKE_BOSE_SCRATCH) + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, VerifyTheoremPasses) {
  const auto r = cli("verify theorem --k 2 --L 2 --alpha -1/3 --beta 2/5 --window 4 --seed 7");
  ASSERT_EQ(r.status, 0) << r.out;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["suite"], "theorem");
  EXPECT_TRUE(j["failures"].empty());
  EXPECT_EQ(j["params"]["alpha"], "-1/3");
  EXPECT_EQ(j["params"]["beta"], "2/5");
  EXPECT_EQ(j["checks_run"], 81);
}

TEST(Cli, VerifyOtherSuitesPass) {
  for (const std::string suite : {"hecke", "duality", "d-change", "w-invariance", "lemma-main", "hl-identity"}) {
    const auto r = cli("verify " + suite + " --k 3 --L 2 --alpha 1/2 --beta -3/4 --window 2 --seed 3");
    EXPECT_EQ(r.status, 0) << suite << "\n" << r.out;
    EXPECT_TRUE(Json::parse(r.out)["failures"].empty()) << suite;
  }
}

TEST(Cli, CorruptionHookFails) {
  const auto clean = run(HECKE_BOSE_CLI_HOOKED, "verify theorem --k 2 --L 2 --alpha -1/3 --beta 2/5 --window 3 --seed 7");
  EXPECT_EQ(clean.status, 0);
  const auto r = run(HECKE_BOSE_CLI_HOOKED,
                     "verify theorem --k 2 --L 2 --alpha -1/3 --beta 2/5 --window 3 --seed 7 --corrupt-d-plus 1");
  EXPECT_EQ(r.status, 1);
  const auto j = Json::parse(r.out);
  EXPECT_FALSE(j["failures"].empty());
  EXPECT_TRUE(j["failures"][0].contains("x"));
  EXPECT_TRUE(j["failures"][0].contains("detail"));
  // The release binary does not know the hook.
  EXPECT_EQ(cli("verify theorem --k 2 --L 2 --window 1 --corrupt-d-plus 1").status, 2);
}

TEST(Cli, DeterministicOutput) {
  const std::string args = "verify lemma-main --k 3 --L 2 --alpha 2/3 --beta 5/4 --window 2 --seed 11 --out ";
  ASSERT_EQ(cli(args + scratch("a.json")).status, 0);
  ASSERT_EQ(cli(args + scratch("b.json")).status, 0);
  auto a = Json::parse(slurp(scratch("a.json")));
  auto b = Json::parse(slurp(scratch("b.json")));
  a.erase("elapsed_ms");
  b.erase("elapsed_ms");
  EXPECT_EQ(a.dump(), b.dump());
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli("verify nonsense --k 2 --L 2").status, 2);
  EXPECT_EQ(cli("verify theorem --k 2 --L 2 --beta 0").status, 2);
  EXPECT_EQ(cli("verify theorem --k 1 --L 2").status, 2);
  EXPECT_EQ(cli("verify theorem --k 2 --L 2 --alpha 1/0").status, 2);
  EXPECT_EQ(cli("").status, 2);
  EXPECT_EQ(cli("wavefunction --k 2 --L 2").status, 2);
  EXPECT_EQ(cli("verify theorem --format xml").status, 2);
}

TEST(Cli, BetheFreePoint) {
  const auto r = cli("bethe --k 2 --L 3 --alpha 0 --beta 1");
  ASSERT_EQ(r.status, 0) << r.out;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["roots"][0][0], 1.0);
  EXPECT_LT(j["residual"].get<double>(), 1e-12);
  EXPECT_LT(j["eigenfunction_defect"].get<double>(), 1e-12);
  EXPECT_LT(j["pi_invariance_defect"].get<double>(), 1e-12);
}

TEST(Cli, BetheContinuation) {
  for (const std::string args : {"--k 2 --L 2 --alpha -1 --beta 1", "--k 2 --L 3 --alpha 0 --beta 1/2"}) {
    const auto r = cli("bethe " + args);
    ASSERT_EQ(r.status, 0) << r.out;
    const auto j = Json::parse(r.out);
    EXPECT_LT(j["residual"].get<double>(), 1e-10);
    EXPECT_LT(j["eigenfunction_defect"].get<double>(), 1e-8);
    EXPECT_LT(j["pi_invariance_defect"].get<double>(), 1e-8);
    if (j.contains("hl_identity_defect")) {
      EXPECT_LT(j["hl_identity_defect"].get<double>(), 1e-8);
    }
  }
  EXPECT_TRUE(Json::parse(cli("bethe --k 2 --L 3 --alpha 0 --beta 1/2").out).contains("hl_identity_defect"));
  EXPECT_EQ(cli("bethe --k 2 --L 2 --seeds 1,3").status, 2);
}

TEST(Cli, WavefunctionRationalTable) {
  const auto r = cli("wavefunction --k 2 --L 2 --alpha -1/3 --beta 2/5 --p 2,-1/2 --window 2");
  ASSERT_EQ(r.status, 0) << r.out;
  const auto j = Json::parse(r.out);
  ASSERT_EQ(j["rows"].size(), 25u);
  const Params P(2, 2, Rational(-1, 3), Rational(2, 5));
  const std::vector<Rational> p{Rational(2), Rational(-1, 2)};
  for (const auto& row : j["rows"]) {
    const LatticePoint x{row["x"][0].get<int>(), row["x"][1].get<int>()};
    const Rational value = parse_rational(row["value"].get<std::string>());
    EXPECT_EQ(value, bethe_wave<Rational>(P, p, x));
    if (is_dominant(P.sys, x)) {
      const Rational direct = (P.beta * p[0] - p[1] - P.alpha) * ipow(p[0], -x[1]) * ipow(p[1], -x[2]) -
                              (P.beta * p[1] - p[0] - P.alpha) * ipow(p[1], -x[1]) * ipow(p[0], -x[2]);
      EXPECT_EQ(value, direct) << x.str();
    }
  }
}

TEST(Cli, WavefunctionCsvAndRootsFile) {
  const auto csv = cli("wavefunction --k 2 --L 2 --p 2,3 --window 1 --format csv");
  ASSERT_EQ(csv.status, 0);
  std::istringstream lines(csv.out);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "x1,x2,value");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  EXPECT_EQ(rows, 9);

  const std::string roots = scratch("roots.json");
  ASSERT_EQ(cli("bethe --k 2 --L 2 --alpha -1 --beta 1 --out " + roots).status, 0);
  const auto table = cli("wavefunction --k 2 --L 2 --alpha -1 --beta 1 --window 2 --roots-file " + roots);
  ASSERT_EQ(table.status, 0);
  EXPECT_EQ(Json::parse(table.out)["rows"].size(), 25u);
  const auto ctable = cli("wavefunction --k 2 --L 2 --alpha -1 --beta 1 --window 1 --format csv --roots-file " + roots);
  EXPECT_EQ(ctable.out.substr(0, ctable.out.find('\n')), "x1,x2,re,im");
}

TEST(Cli, HallLittlewood) {
  const auto r = cli("hall-littlewood --lambda 2 --z 3,-2/5 --t 2/7");
  ASSERT_EQ(r.status, 0);
  const auto j = Json::parse(r.out);
  const Rational z1(3), z2(-2, 5), t(2, 7);
  EXPECT_EQ(parse_rational(j["P"].get<std::string>()), z1 * z1 + z2 * z2 + (1 - t) * z1 * z2);
  EXPECT_EQ(j["lambda"], Json::array({2, 0}));
  EXPECT_EQ(j["v"], "1");
  EXPECT_TRUE(Json::parse(cli("hall-littlewood --lambda 1,1 --z 2,3 --t -1").out)["P"].is_null());
  EXPECT_NE(cli("hall-littlewood --lambda 1 --z 2,2 --t 1/2").status, 0);
}
