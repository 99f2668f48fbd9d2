#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "superorbit/scenario.hpp"

using namespace superorbit;
using namespace superorbit::scenario;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kScenarios = fs::path(SUPERORBIT_SOURCE_DIR) / "examples" / "scenarios";

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  std::string cmd = std::string(SUPERORBIT_CLI_PATH) + " " + args + " 2>/dev/null";
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

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json normalized(const CliRun& r) {
  json j = json::parse(r.out);
  j.erase("timing_ms");
  j["exit_code"] = r.code;
  return j;
}

// "<scenario>.<group>-<cmd>.expected.json" -> ("<group> <cmd>", scenario path)
std::pair<std::string, fs::path> golden_case(const fs::path& golden) {
  std::string name = golden.filename().string();
  std::string stem = name.substr(0, name.find('.'));
  std::string cmd = name.substr(stem.size() + 1);
  cmd = cmd.substr(0, cmd.find('.'));
  cmd[cmd.find('-')] = ' ';
  return {cmd, kScenarios / (stem + ".scn")};
}

std::vector<fs::path> goldens() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(kScenarios))
    if (e.path().string().ends_with(".expected.json")) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Goldens, MatchCurrentOutput) {
  auto gs = goldens();
  ASSERT_GE(gs.size(), 15u);
  for (const auto& g : gs) {
    auto [cmd, scn] = golden_case(g);
    CliRun r = run_cli("--json " + cmd + " " + scn.string());
    ASSERT_FALSE(r.out.empty()) << g;
    EXPECT_EQ(normalized(r), json::parse(slurp(g))) << g.filename();
  }
}

TEST(Goldens, Deterministic) {
  for (const auto& g : goldens()) {
    auto [cmd, scn] = golden_case(g);
    std::string args = "--json " + cmd + " " + scn.string();
    EXPECT_EQ(normalized(run_cli(args)), normalized(run_cli(args))) << g.filename();
  }
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("").code, 2);
  EXPECT_EQ(run_cli("bogus").code, 2);
  EXPECT_EQ(run_cli("plancherel --n 9").code, 2);
  EXPECT_EQ(run_cli("orbit check-rank /nonexistent.scn").code, 2);
  EXPECT_EQ(run_cli("plancherel --n 2").code, 0);
  EXPECT_EQ(run_cli("kks closed " + (kScenarios / "broken_jacobi.scn").string()).code, 1);
}

TEST(Cli, PlancherelJson) {
  CliRun r = run_cli("--json plancherel --n 2");
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_TRUE(j.contains("timing_ms"));
  EXPECT_FALSE(j["checks"].empty());
}

TEST(Cli, KernelRefusesNonConstantRank) {
  CliRun r = run_cli("--json kks kernel " + (kScenarios / "odd_heisenberg.scn").string());
  EXPECT_EQ(r.code, 1);
  json j = json::parse(r.out);
  EXPECT_EQ(j["verdict"], "fail");
  bool seen = false;
  for (const auto& c : j["checks"])
    if (c.value("discrepancy", "").starts_with("not constant rank")) seen = true;
  EXPECT_TRUE(seen);
}

TEST(Cli, TextOutput) {
  CliRun r = run_cli("heisenberg --parity eoo fields");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("pass"), std::string::npos);
}

TEST(ScenarioFile, PrintParseRoundTrip) {
  for (const auto& e : fs::directory_iterator(kScenarios)) {
    if (e.path().extension() != ".scn") continue;
    Scenario s = parse_scenario(slurp(e.path()));
    std::string once = print_scenario(s);
    EXPECT_EQ(print_scenario(parse_scenario(once)), once) << e.path().filename();
  }
}

TEST(ScenarioFile, EmptyParses) {
  Scenario s = parse_scenario("");
  EXPECT_TRUE(s.functionals.empty());
  EXPECT_EQ(run_cli("orbit check-rank /dev/null").code, 2);
}

TEST(ScenarioFile, ErrorLocation) {
  try {
    parse_scenario("algebra A {\n  even x;\n  bogus y;\n}\n");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 3);
  }
}

TEST(ScenarioFile, UndeclaredGenerator) {
  EXPECT_THROW(parse_scenario("algebra A { even x; }\nalgebra B { even y; }\nmorphism m : A -> B { x -> w; }\n"), Error);
}

TEST(ScenarioFile, MorphismParityMismatch) {
  EXPECT_THROW(parse_scenario("algebra A { even x; }\nalgebra B { odd t; }\nmorphism m : A -> B { x -> t; }\n"), Error);
}

TEST(Expression, NegativePowerOfUnit) {
  auto T = AlgebraBuilder().even("u").unit("u").build();
  EXPECT_EQ(parse_expression("u^-1", T) * SuperElement::gen(T, "u"), SuperElement::one(T));
  EXPECT_EQ(parse_expression("u^-2 * u^3", T), SuperElement::gen(T, "u"));
  auto X = AlgebraBuilder().even("x").build();
  EXPECT_THROW(parse_expression("x^-1", X), Error);
}
