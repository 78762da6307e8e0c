#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#ifdef MAZO_CLI_PATH

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string("\"") + MAZO_CLI_PATH + "\" " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST(Cli, ActorTextReport) {
  const auto r = run("actor --runs 20 --seed-start 1");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("runs=20 wins=", 0), 0u) << r.out;
  for (const char* key : {" losses=", " aborts=0\n", "win_rate=", "%\n", "avg_combats=", " avg_elites=",
                          " avg_bosses=", "avg_victory_hp=", " avg_surviving_heroes="})
    EXPECT_NE(r.out.find(key), std::string::npos) << key;
}

TEST(Cli, ActorMachineReportIsDeterministic) {
  const auto a = run("actor --runs 1 --seed-start 7 --report machine");
  const auto b = run("actor --runs 1 --seed-start 7 --report machine");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j.dump() + "\n", a.out);
  EXPECT_EQ(j["records"].size(), 1u);
  EXPECT_EQ(j["records"][0]["seed"], "0000000000000007");
}

TEST(Cli, ActorTwoPlayers) {
  const auto r = run("actor --runs 3 --players 2 --report machine");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["report"]["runs"], 3);
}

TEST(Cli, ExitCodeContract) {
  EXPECT_EQ(run("actor --runs 0").code, 1);
  EXPECT_EQ(run("actor").code, 1);
  EXPECT_EQ(run("actor --runs 2 --players 3").code, 1);
  EXPECT_EQ(run("actor --runs 2 --report xml").code, 1);
  EXPECT_EQ(run("warp").code, 1);
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("--help").code, 0);
  const auto aborted = run("actor --runs 2 --combat-step-limit 1");
  EXPECT_EQ(aborted.code, 2);
  EXPECT_NE(aborted.out.find("aborts=2"), std::string::npos);
  EXPECT_EQ(run("actor --runs 1 --content /nonexistent/pack.json").code, 1);
  EXPECT_EQ(run("actor --runs 1 --content " + temp_file("mazo_bad_pack.json", "{\"cards\": 3}")).code, 1);
}

TEST(Cli, ContentFlagLoadsPack) {
  const auto path = std::string(MAZO_CONTENT_DIR) + "/baseline.pack.json";
  EXPECT_EQ(run("actor --runs 2 --content " + path).out, run("actor --runs 2").out);
}

TEST(Cli, SoakReports) {
  const auto ok = run("soak --runs 2 --seed-start 1");
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, "completed=2 stalls=0 progress_timeouts=0\n");
  EXPECT_EQ(run("soak --runs 2 --seed-start 1").out, ok.out);
  const auto tiny = run("soak --runs 5 --budget 1");
  EXPECT_EQ(tiny.code, 0);
  EXPECT_EQ(tiny.out, "completed=0 stalls=0 progress_timeouts=5\n");
  const auto machine = run("soak --runs 1 --report machine");
  EXPECT_EQ(nlohmann::json::parse(machine.out)["completed"], 1);
  EXPECT_EQ(run("soak --runs 1 --idle-limit 0").code, 1);
  EXPECT_EQ(run("soak --runs 1 --budget -4").code, 1);
}

#endif
