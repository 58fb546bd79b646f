#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
  int status = -1;
  std::string out;
  json report() const { return json::parse(out); }
};

Run hurwitz(const std::string& args) {
  const char* bin = std::getenv("HURWITZ_BIN");
  if (!bin) throw std::runtime_error("HURWITZ_BIN not set");
  std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("popen failed");
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  auto p = std::filesystem::temp_directory_path() / ("hurwitz_cli_" + std::to_string(::getpid()) + "_" + name);
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST(Cli, OrbitStraightCount) {
  auto r = hurwitz("orbit psl52_2a2a3b8a.json");
  ASSERT_EQ(r.status, 0) << r.out;
  auto j = r.report();
  EXPECT_EQ(j["subcommand"], "orbit");
  EXPECT_EQ(j["result"]["straight_count"], 24);
  EXPECT_EQ(j["result"]["genus_r4"], 0);
}

TEST(Cli, SturmCountAtTwo) {
  auto r = hurwitz("poly sturm thm9_f.json --at 2");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(r.report()["result"]["real_roots"], 22);
}

TEST(Cli, PatternAtInfinityAndQuadraticPoint) {
  EXPECT_EQ(hurwitz("poly pattern thm9_f --at inf").report()["result"]["pattern"], "2^8.1^6");
  auto r = hurwitz("poly pattern cor4 --at quad -424521/16 644972544");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.report()["result"]["pattern"], "2^8.1^15");
}

TEST(Cli, VerifyExitCodes) {
  EXPECT_EQ(hurwitz("verify cor4").status, 0);
  auto bad = temp_file("bad.json", R"({"key": "bad", "vars": ["t", "x"], "model": {"p": "x^3 - 3*x", "q": "1"},
    "checks": {"ramification": {"structure": ["3", "3"], "genus": 0}}})");
  auto r = hurwitz("verify " + bad.string() + " --json");
  std::filesystem::remove(bad);
  EXPECT_EQ(r.status, 1);
  EXPECT_FALSE(r.report()["result"][0]["passed"].get<bool>());
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(hurwitz("").status, 2);
  EXPECT_EQ(hurwitz("poly frobnicate cor4").status, 2);
  EXPECT_EQ(hurwitz("poly sturm no_such_entry").status, 2);
  EXPECT_EQ(hurwitz("poly factor cor4 --at 1 --mod 100").status, 2);
  EXPECT_EQ(hurwitz("algdep x.json").status, 2);
}

TEST(Cli, ReportsAreReproducible) {
  auto strip = [](json j) {
    j.erase("elapsed_seconds");
    return j.dump();
  };
  auto a = hurwitz("--seed 5 orbit psl211_2a2a3a3a").report();
  auto b = hurwitz("--seed 5 orbit psl211_2a2a3a3a").report();
  EXPECT_EQ(hurwitz("orbit psl211_2a2a3a3a --seed 5").report()["result"], a["result"]);
  EXPECT_EQ(strip(a), strip(b));
  EXPECT_EQ(a["seed"], 5);
}

TEST(Cli, GroupAndDataset) {
  auto g = hurwitz("group info PSL2_11@11").report()["result"];
  EXPECT_EQ(g["order"], "660");
  EXPECT_EQ(g["degree"], 11);
  auto d = hurwitz("dataset list").report()["result"];
  bool found = false;
  for (const auto& e : d) found = found || e["key"] == "cor4";
  EXPECT_TRUE(found);
}

TEST(Cli, DeformThenAlgdep) {
  auto r = hurwitz("deform eq2 --seed eq2_seed --digits 200 --path circle:60:1/12 --compact");
  ASSERT_EQ(r.status, 0) << r.out.substr(0, 400);
  EXPECT_EQ(r.report()["result"]["solutions"].size(), 60u);
  auto samples = temp_file("samples.json", r.out);
  auto fixed = hurwitz("algdep " + samples.string() + " --deg 4 3");
  auto fit = hurwitz("algdep " + samples.string() + " --deg 4 3 --search");
  std::filesystem::remove(samples);
  EXPECT_EQ(fixed.status, 1);
  ASSERT_EQ(fit.status, 0);
  auto j = fit.report()["result"];
  EXPECT_EQ(j["degrees"], json::array({4, 6}));
  EXPECT_NE(j["relation"].get<std::string>().find("88/19*x^4 - 524/19*x^3"), std::string::npos);
}
