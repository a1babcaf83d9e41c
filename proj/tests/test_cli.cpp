// End-to-end runs of the command-line tool against fixture configs.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace {

namespace fs = std::filesystem;

const fs::path kFixtures = SONIC_FIXTURE_DIR;

struct Run {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Run run(const std::string& args) {
  const fs::path dir = fs::temp_directory_path() / ("sonic_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string cmd = std::string("\"") + SONIC_CLI_PATH + "\" " + args + " >\"" +
                          (dir / "out").string() + "\" 2>\"" + (dir / "err").string() + "\"";
  const int status = std::system(cmd.c_str());
  Run r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(dir / "out");
  r.err = slurp(dir / "err");
  fs::remove_all(dir);
  return r;
}

std::string config(const std::string& name) { return "--config \"" + (kFixtures / name).string() + "\""; }

TEST(Cli, HorizonSucceeds) {
  const auto r = run("horizon " + config("linear_horizon.cfg"));
  EXPECT_EQ(r.exit_code, 0) << r.err;
  EXPECT_TRUE(r.err.empty());
  EXPECT_NE(r.out.find("r_H,alpha,temperature,rho0,event_horizon"), std::string::npos);
  EXPECT_NE(r.out.find("\n2,0.5,0.079577471545947"), std::string::npos) << r.out;
}

TEST(Cli, NoHorizonExitsOne) {
  const auto r = run("horizon " + config("no_horizon.cfg"));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_TRUE(r.out.empty());
  const auto j = nlohmann::json::parse(r.err);
  EXPECT_EQ(j["error"], "NoHorizon");
  EXPECT_EQ(j["exit"], 1);
}

TEST(Cli, ConfigErrorsExitTwo) {
  for (const char* name : {"malformed.cfg", "unknown_key.cfg", "conflicting_source.cfg",
                           "missing_profile_file.cfg", "does_not_exist.cfg"}) {
    const auto r = run("squeeze " + config(name));
    EXPECT_EQ(r.exit_code, 2) << name << ": " << r.err;
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << r.err;
    EXPECT_TRUE(nlohmann::json::accept(r.err)) << r.err;
  }
  const auto unknown = run("squeeze " + config("unknown_key.cfg"));
  EXPECT_EQ(nlohmann::json::parse(unknown.err)["error"], "ParseError");
  EXPECT_NE(unknown.err.find("alpah"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("levitate " + config("squeeze.cfg")).exit_code, 2);
  EXPECT_EQ(run("squeeze").exit_code, 2);
  EXPECT_EQ(run("squeeze " + config("squeeze.cfg") + " --output xml").exit_code, 2);
}

TEST(Cli, DomainErrorExitsOne) {
  const auto r = run("teleport " + config("shift_out_of_range.cfg"));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_EQ(nlohmann::json::parse(r.err)["error"], "ShiftOutOfRange");
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  for (const char* cmd : {"sweep", "teleport"}) {
    const std::string cfg = std::string(cmd) == "sweep" ? "sweep.cfg" : "teleport_random.cfg";
    const auto a = run(std::string(cmd) + " " + config(cfg));
    const auto b = run(std::string(cmd) + " " + config(cfg));
    ASSERT_EQ(a.exit_code, 0) << a.err;
    EXPECT_FALSE(a.out.empty());
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, JsonOutputAndOutFile) {
  const fs::path target = fs::temp_directory_path() / ("sonic_cli_out_" + std::to_string(::getpid()) + ".json");
  const auto r = run("spectrum " + config("spectrum_si.cfg") + " --output json --out \"" + target.string() + "\"");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const auto j = nlohmann::json::parse(slurp(target));
  fs::remove(target);
  EXPECT_EQ(j["records"].size(), 50u);
  EXPECT_NE(j["metadata"]["alpha"].get<std::string>().find("164519.35"), std::string::npos);
}

}  // namespace
