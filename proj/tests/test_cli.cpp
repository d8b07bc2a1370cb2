#include "cli.hpp"

#include <gtest/gtest.h>

#include "json.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <sys/wait.h>

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = spinsum::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args, int expect = 0) {
  args.push_back("--json");
  auto r = run(args);
  EXPECT_EQ(r.code, expect) << r.err;
  return json::parse(r.out);
}

std::string temp_file(const std::string& name, const std::string& body) {
  auto p = std::filesystem::temp_directory_path() / ("spinsum_cli_" + name);
  std::ofstream(p) << body;
  return p.string();
}

}  // namespace

TEST(Cli, ValidateAlgebraBuiltins) {
  auto j = run_json({"validate-algebra", "--builtin", "clifford"});
  for (auto& [k, v] : j["predicates"].items())
    if (k != "symmetric") EXPECT_TRUE(v.get<bool>()) << k;
  j = run_json({"validate-algebra", "--builtin", "twisted-matrix-3-f3"});
  EXPECT_TRUE(j["predicates"]["nakayama_times_id_zero"].get<bool>());
  j = run_json({"validate-algebra", "--builtin", "twisted-matrix-2-q"});
  EXPECT_FALSE(j["predicates"]["nakayama_times_id_zero"].get<bool>());
}

TEST(Cli, ValidateAlgebraBadInput) {
  auto bad = temp_file("bad.json", "{\"field\": ");
  auto r = run({"validate-algebra", "--file", bad});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("parse error"), std::string::npos);
  EXPECT_EQ(run({"validate-algebra", "--builtin", "nope"}).code, 2);
  EXPECT_EQ(run({"validate-algebra"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, ValidateAlgebraDegeneratePairingIsViolation) {
  auto f = temp_file("degenerate.json",
                     R"({"field": "Q", "dim": 2, "parity": [0, 0],
                         "mu": [[0, 0, 0, 1], [1, 0, 1, 1], [1, 1, 0, 1]], "eta": [1, 0], "eps": [1, 0]})");
  auto j = run_json({"validate-algebra", "--file", f}, 1);
  EXPECT_FALSE(j["pairing_nondegenerate"].get<bool>());
}

TEST(Cli, AmplitudeTorusTable) {
  const std::map<std::string, std::string> want = {{"NS+", "1"}, {"NS-", "1"}, {"R+", "-1"}, {"R-", "1"}};
  for (const auto& [spin, v] : want) {
    auto j = run_json({"amplitude", "--surface", "torus", "--spin", spin, "--algebra", "clifford", "--oracle"});
    EXPECT_EQ(j["amplitude"]["scalar"], v) << spin;
    EXPECT_EQ(j["oracle"], "equal") << spin;
  }
}

TEST(Cli, AmplitudeOracleText) {
  auto r = run({"amplitude", "--surface", "cylinder", "--spin", "NS+", "--algebra", "clifford", "--oracle"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("oracle: equal\n"), std::string::npos);
  r = run({"amplitude", "--surface", "pants", "--spin", "R,R,NS:-+", "--algebra", "twisted-matrix-3-f3", "--oracle"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("oracle: equal\n"), std::string::npos);
}

TEST(Cli, AmplitudeRawOnNonAdmissibleSigns) {
  json s;
  for (int e = 0; e < 12; ++e) s[std::to_string(e)] = 1;
  s["3"] = -1;
  auto f = temp_file("na.json", s.dump());
  std::vector<std::string> base = {"amplitude", "--surface", "cylinder", "--signs", f, "--types", "NS,NS"};
  auto r = run(base);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("not admissible"), std::string::npos);
  auto args = base;
  args.push_back("--raw");
  auto j = run_json(args);
  EXPECT_FALSE(j["admissible"].get<bool>());
  args.push_back("--project");
  j = run_json(args);
  EXPECT_TRUE(j["zero"].get<bool>());
  EXPECT_TRUE(j["amplitude"]["entries"].empty());
}

TEST(Cli, AmplitudeFromFiles) {
  auto surf = temp_file("disk.json", R"({
    "edges": [{"src": 0, "dst": 1}, {"src": 1, "dst": 2}, {"src": 2, "dst": 0}],
    "triangles": [[{"edge": 0, "side": "R"}, {"edge": 2, "side": "R"}, {"edge": 1, "side": "R"}]],
    "boundaries": [[{"edge": 0, "position": 0}, {"edge": 1, "position": 1}, {"edge": 2, "position": 2}]]})");
  auto signs = temp_file("disk_signs.json", "[1, 1, 1]");
  auto j = run_json({"amplitude", "--surface-file", surf, "--signs", signs, "--raw"});
  EXPECT_EQ(j["amplitude"]["legs"].size(), 3u);
  EXPECT_EQ(run({"amplitude", "--surface-file", surf, "--signs", signs}).code, 2);  // no types
}

TEST(Cli, AmplitudeBudget) {
  auto r = run({"amplitude", "--surface", "cylinder", "--spin", "NS+", "--max-legs", "3"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("budget"), std::string::npos);
  EXPECT_EQ(run({"amplitude", "--surface", "cylinder", "--spin", "NS+", "--max-legs", "0"}).code, 2);
}

TEST(Cli, Classify) {
  auto j = run_json({"classify", "--surface", "torus"});
  EXPECT_EQ(j["count"], 4);
  j = run_json({"classify", "--surface", "genus-2"});
  EXPECT_EQ(j["count"], 16);
  EXPECT_EQ(j["arf_multiset"]["+1"], 10);
  EXPECT_EQ(j["arf_multiset"]["-1"], 6);
  j = run_json({"classify", "--surface", "sphere"});
  EXPECT_EQ(j["count"], 1);
  EXPECT_EQ(j["classes"][0]["arf"], 1);
  EXPECT_EQ(run({"classify", "--surface", "cylinder"}).code, 2);
}

TEST(Cli, FuzzPassesAndIsByteIdentical) {
  std::vector<std::string> args = {"pachner-fuzz", "--surface", "cylinder", "--algebra", "clifford",
                                   "--seed",       "1",         "--moves",    "200",      "--json"};
  auto a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(json::parse(a.out)["passed"].get<bool>());
  args.push_back("--log");
  args.push_back(temp_file("log1.jsonl", ""));
  run(args);
  std::ifstream in1(args.back());
  std::string log1((std::istreambuf_iterator<char>(in1)), {});
  args.back() = temp_file("log2.jsonl", "");
  run(args);
  std::ifstream in2(args.back());
  std::string log2((std::istreambuf_iterator<char>(in2)), {});
  EXPECT_EQ(log1, log2);
  EXPECT_EQ(std::count(log1.begin(), log1.end(), '\n'), 200);
  auto rep = run_json({"pachner-fuzz", "--surface", "cylinder", "--replay", args.back()});
  EXPECT_EQ(rep["replayed"], 200);
}

TEST(Cli, FuzzNegativeControl) {
  auto r = run({"pachner-fuzz", "--negative-control", "--json"});
  EXPECT_EQ(r.code, 1);
  auto j = json::parse(r.out);
  EXPECT_FALSE(j["passed"].get<bool>());
  EXPECT_FALSE(j["shrunk"].empty());
}

TEST(Cli, FuzzPantsTwistedMatrix) {
  auto j = run_json({"pachner-fuzz", "--surface", "pants", "--algebra", "twisted-matrix-3-f3", "--moves", "60"});
  EXPECT_TRUE(j["passed"].get<bool>());
}

TEST(Cli, SignScan) {
  auto j = run_json({"sign-scan", "--surface", "torus", "--algebra", "clifford"});
  EXPECT_EQ(j["weighted_sum"], "1");
  EXPECT_TRUE(j["matches_a_plus"].get<bool>());
  EXPECT_EQ(j["nonadmissible_nonzero"], 0);
  std::vector<std::pair<int, std::string>> got;
  for (const auto& c : j["per_class"]) got.push_back({c["arf"].get<int>(), c["contribution"].get<std::string>()});
  for (const auto& [arf, v] : got) EXPECT_EQ(v, arf > 0 ? "32" : "-32");
  j = run_json({"sign-scan", "--surface", "torus", "--algebra", "twisted-matrix-2-q"});
  EXPECT_EQ(j["mode"], "report-only");
  EXPECT_EQ(run({"sign-scan", "--surface", "pants"}).code, 2);
}

TEST(Cli, OutputFileMatchesStdout) {
  auto path = temp_file("out.txt", "");
  auto a = run({"classify", "--surface", "torus"});
  auto b = run({"classify", "--surface", "torus", "-o", path});
  EXPECT_TRUE(b.out.empty());
  std::ifstream in(path);
  std::string body((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(body, a.out);
}

TEST(Cli, TextMirrorsJson) {
  auto text = run({"validate-algebra", "--builtin", "clifford"}).out;
  auto j = run_json({"validate-algebra", "--builtin", "clifford"});
  for (auto& [k, v] : j["predicates"].items())
    EXPECT_NE(text.find("  " + k + ": " + (v.get<bool>() ? "true" : "false") + "\n"), std::string::npos) << k;
}

#ifdef SPINSUM_BINARY
TEST(Cli, BinaryExitCodesAndDeterminism) {
  auto sh = [](const std::string& cmd, std::string* out) {
    FILE* p = popen((std::string(SPINSUM_BINARY) + " " + cmd + " 2>/dev/null").c_str(), "r");
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out->append(buf, n);
    int st = pclose(p);
    return WEXITSTATUS(st);
  };
  std::string a, b, c;
  EXPECT_EQ(sh("pachner-fuzz --seed 4 --moves 50 --json", &a), 0);
  EXPECT_EQ(sh("pachner-fuzz --seed 4 --moves 50 --json", &b), 0);
  EXPECT_EQ(a, b);
  EXPECT_EQ(sh("amplitude --surface torus --spin R+ --algebra clifford", &c), 0);
  EXPECT_NE(c.find("scalar: -1"), std::string::npos);
  std::string d;
  EXPECT_EQ(sh("validate-algebra --file /nonexistent.json", &d), 2);
}
#endif
