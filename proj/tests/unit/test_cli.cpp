#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  std::string cmd = std::string(TOPREC_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string curve(const char* name) { return std::string(TOPREC_CURVES) + "/" + name; }

fs::path temp_dir(const std::string& tag) {
  fs::path p = fs::temp_directory_path() / ("toprec_cli_" + tag + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST(Cli, PsiGenusTwo) {
  CliRun r = run("psi --g 2 --format json");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("entries").at(0).at("value"), "1/1152");
}

TEST(Cli, TrEnumeratesTheChiSimplex) {
  CliRun r = run("tr --curve " + curve("airy.json") + " --chi 3 --format json");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  std::vector<std::array<int, 2>> got;
  for (auto& e : j) got.push_back({e.at("g").get<int>(), e.at("m").get<int>()});
  std::vector<std::array<int, 2>> expect{{0, 3}, {1, 1}, {0, 4}, {1, 2}, {0, 5}, {1, 3}, {2, 1}};
  std::sort(got.begin(), got.end());
  std::sort(expect.begin(), expect.end());
  EXPECT_EQ(got, expect);
}

TEST(Cli, OutputIsDeterministic) {
  CliRun a = run("swap --curve " + curve("acc.json") + " --g 0 --n 3 --format json");
  CliRun b = run("swap --curve " + curve("acc.json") + " --g 0 --n 3 --format json");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, CacheRerunAndCorruption) {
  fs::path dir = temp_dir("cache");
  std::string args = "tr --curve " + curve("acc.json") + " --chi 2 --format json --cache " + dir.string();
  CliRun a = run(args);
  ASSERT_EQ(a.code, 0);
  // zero recomputation on a warm cache
  std::string cmd = std::string(TOPREC_CLI) + " " + args + " 2>&1 >/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::array<char, 256> buf{};
  std::string err;
  while (fgets(buf.data(), buf.size(), p)) err += buf.data();
  pclose(p);
  EXPECT_NE(err.find(" 0 computed"), std::string::npos) << err;
  // corrupt every cached file; results must be recomputed and identical
  for (auto& f : fs::recursive_directory_iterator(dir))
    if (f.path().extension() == ".json") {
      std::ifstream in(f.path());
      std::string text((std::istreambuf_iterator<char>(in)), {});
      in.close();
      auto pos = text.find("\"c\": \"");
      text.insert(pos + 6, "3");
      std::ofstream(f.path()) << text;
    }
  CliRun c = run(args);
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(c.out, a.out);
  fs::remove_all(dir);
}

TEST(Cli, MixedBothAttestsEquality) {
  CliRun r = run("mixed --curve " + curve("acc.json") + " --g 1 --m 1 --n 1 --method both --format json");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 3u);
  EXPECT_EQ(j.at(0).at("body"), j.at(1).at("body"));
  EXPECT_NE(j.at(0).at("provenance"), j.at(1).at("provenance"));
  EXPECT_EQ(j.at(2).at("equal"), true);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("verify --curve " + curve("coincident.json")).code, 1);
  EXPECT_EQ(run("tr --curve /nonexistent.json --chi 1").code, 1);
  EXPECT_EQ(run("tr --curve " + curve("airy.json") + " --chi 0").code, 1);
  EXPECT_EQ(run("mixed --curve " + curve("airy.json") + " --g 0 --m 1 --n 0").code, 1);
  EXPECT_EQ(run("nonsense").code, 1);
  EXPECT_EQ(run("verify --curve " + curve("airy.json") + " --chi 1").code, 0);
}

TEST(Cli, ClosedYzRequiresYEqualZ) {
  EXPECT_EQ(run("closed-yz --curve " + curve("acc.json") + " --g 1 --m 1").code, 1);
  CliRun r = run("closed-yz --curve " + curve("airy.json") + " --g 1 --m 1 --format json");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("closed y=z formula"), std::string::npos);
}
