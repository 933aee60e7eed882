#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include "costshare/cli.hpp"
#include "costshare/corpus.hpp"
#include "costshare/instance_io.hpp"

using namespace costshare;

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string corpus(const std::string& name) { return std::string(CORPUS_DIR) + "/" + name; }

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("costshare_cli_" + std::to_string(std::rand()) + "_" +
                                         std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name, const std::string& contents) const {
    const auto p = path_ / name;
    std::ofstream(p) << contents;
    return p.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Cli, RunColocatedTripleTruthful) {
  TempDir dir;
  const auto v = dir.file("v.json", "[0.5, 0.5, 0.5]");
  const auto r = cli({"run", "--mechanism", "moulin-pt", "--instance", corpus("colocated3.json"),
                      "--truthful", "--valuations", v});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json report = Json::parse(r.out);
  EXPECT_EQ(report["served"], Json::array({0, 1, 2}));
  for (const auto& p : report["prices"]) EXPECT_NEAR(p.get<double>(), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(report["revenue"].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(report["budget_balance_recovery"].get<double>(),
              report["revenue"].get<double>() / report["incurred_cost"].get<double>(), 1e-9);
  EXPECT_NEAR(report["social_cost_ratio"].get<double>(),
              report["social_cost"].get<double>() / report["optimal_social_cost"]["cost"].get<double>(),
              1e-9);
}

TEST(Cli, RunWithBidsFileAndInfiniteBid) {
  TempDir dir;
  const auto b = dir.file("b.json", R"({"values": ["inf", 0.1, 0.2]})");
  const auto r = cli({"run", "--mechanism", "moulin-pt", "--instance", corpus("colocated3.json"), "--bids", b});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json report = Json::parse(r.out);
  EXPECT_EQ(report["served"], Json::array({0}));
  EXPECT_NEAR(report["prices"][0].get<double>(), 1.0, 1e-12);
}

TEST(Cli, RunEveryMechanism) {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"moulin-pt", "fl-seed1-p3-f2.json"}, {"dmv-fl", "fl-seed1-p3-f2.json"},
      {"moulin-jv", "steiner-seed1-v6-p4.json"}, {"moulin-gst", "ssrob-seed1-v5-p3.json"},
      {"dmv-sc", "setcover-seed1-e4-s4.json"}};
  TempDir dir;
  for (const auto& [mechanism, instance] : cases) {
    const auto file = load_instance(corpus(instance));
    std::string values = "[";
    for (std::size_t i = 0; i < file.num_players(); ++i) values += (i ? ", " : "") + std::string("1.0");
    const auto v = dir.file("v.json", values + "]");
    const auto csv = dir.path(mechanism + ".csv");
    const auto r = cli({"run", "--mechanism", mechanism, "--instance", corpus(instance), "--truthful",
                        "--valuations", v, "--csv", csv});
    ASSERT_EQ(r.code, kExitOk) << mechanism << ": " << r.err;
    const Json report = Json::parse(r.out);
    EXPECT_EQ(report["mechanism"], mechanism);
    EXPECT_LE(report["revenue"].get<double>(), report["served_cost"].get<double>() + 1e-6);
    EXPECT_FALSE(slurp(csv).empty());
  }
}

TEST(Cli, SummabilityColocatedFourExhaustive) {
  const auto r = cli({"summability", "--method", "pt", "--instance", corpus("colocated4.json"), "--exhaustive"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json report = Json::parse(r.out);
  EXPECT_NEAR(report["ratio"].get<double>(), 25.0 / 12.0, 1e-9);
  EXPECT_EQ(report["mode"], "exhaustive");
}

TEST(Cli, SummabilityFixedAndRandom) {
  auto r = cli({"summability", "--method", "pt", "--instance", corpus("colocated4.json"), "--fixed", "--set",
                "0,2", "--ordering", "2,0"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NEAR(Json::parse(r.out)["ratio"].get<double>(), 1.5, 1e-12);
  r = cli({"summability", "--method", "pt", "--instance", corpus("colocated4.json"), "--random", "--trials",
           "20", "--seed", "5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(Json::parse(r.out)["seed"], 5);
  r = cli({"summability", "--method", "jv", "--instance", corpus("colocated4.json")});
  EXPECT_EQ(r.code, kExitValidation);
  r = cli({"summability", "--method", "pt", "--instance", corpus("colocated4.json"), "--fixed", "--random"});
  EXPECT_EQ(r.code, kExitValidation);
}

TEST(Cli, LowerboundSixteen) {
  const auto r = cli({"lowerbound", "--k", "16", "--beta", "2", "--m", "3", "--method", "jv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json report = Json::parse(r.out);
  EXPECT_EQ(report["levels"], 2);
  EXPECT_EQ(report["edges_per_level"], Json::array({1, 6, 36}));
  EXPECT_EQ(report["players"], 88);
  EXPECT_FALSE(report["guaranteed_scale"].get<bool>());
  EXPECT_EQ(report["selection"]["level_sizes"], Json::array({4, 4, 8}));
}

TEST(Cli, LowerboundFromSpecFileAndCapacity) {
  auto r = cli({"lowerbound", "--instance", corpus("lower-bound-k4-m2.json"), "--method", "jv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(Json::parse(r.out)["m"], 2);
  r = cli({"lowerbound", "--k", "16", "--beta", "2", "--method", "jv"});
  EXPECT_EQ(r.code, kExitCapacity);
  EXPECT_EQ(Json::parse(r.err)["error"], "capacity");
  r = cli({"lowerbound", "--k", "8", "--beta", "2", "--m", "2", "--method", "jv"});
  EXPECT_EQ(r.code, kExitValidation);
}

TEST(Cli, VerifyChecks) {
  TempDir dir;
  const auto v = dir.file("v.json", "[0.4, 0.9, 1.3]");
  for (const std::string check : {"sp", "gsp"}) {
    const auto r = cli({"verify", "--check", check, "--mechanism", "moulin-pt", "--instance",
                        corpus("fl-seed1-p3-f2.json"), "--valuations", v});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_TRUE(Json::parse(r.out)["passed"].get<bool>());
  }
  auto r = cli({"verify", "--check", "weak-gsp", "--mechanism", "dmv-sc", "--instance",
                corpus("setcover-seed2-e3-s3.json"), "--valuations", v});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(Json::parse(r.out)["passed"].get<bool>());
  r = cli({"verify", "--check", "cross-monotonic", "--method", "pt", "--instance", corpus("fl-seed1-p3-f2.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(Json::parse(r.out)["passed"].get<bool>());
  r = cli({"verify", "--check", "core", "--method", "jv", "--instance", corpus("steiner-seed1-v6-p4.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(Json::parse(r.out)["passed"].get<bool>());
}

TEST(Cli, VerifyCapacity) {
  TempDir dir;
  const auto v = dir.file("v.json", "[1, 1, 1, 1, 1, 1, 1, 1]");
  const auto r = cli({"verify", "--check", "sp", "--mechanism", "moulin-pt", "--instance",
                      corpus("colocated8.json"), "--valuations", v});
  EXPECT_EQ(r.code, kExitCapacity);
}

TEST(Cli, OracleEvaluatesCost) {
  TempDir dir;
  const auto v = dir.file("v.json", "[0.2, 0.2, 0.2]");
  auto r = cli({"oracle", "--instance", corpus("colocated3.json"), "--set", "0,1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NEAR(Json::parse(r.out)["cost"].get<double>(), 1.0, 1e-12);
  r = cli({"oracle", "--instance", corpus("colocated3.json"), "--valuations", v});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json report = Json::parse(r.out);
  EXPECT_NEAR(report["optimal_social_cost"]["cost"].get<double>(), 0.6, 1e-12);
  EXPECT_EQ(report["optimal_social_cost"]["witness"], Json::array());
}

TEST(Cli, ValidateReportsNamedFields) {
  TempDir dir;
  const auto asym = dir.file("asym.json", R"({"format_version": "1", "kind": "facility-location",
    "body": {"points": 2, "metric": [[0, 1], [2, 0]], "facilities": [{"point": 0, "opening_cost": 1}],
             "players": [1]}})");
  auto r = cli({"validate", "--instance", asym});
  EXPECT_EQ(r.code, kExitValidation);
  const Json diag = Json::parse(r.err);
  ASSERT_FALSE(diag["diagnostics"].empty());
  EXPECT_NE(diag["diagnostics"][0]["path"].get<std::string>().find("metric"), std::string::npos);

  const auto uncoverable = dir.file("sc.json", R"({"format_version": "1", "kind": "set-cover",
    "body": {"elements": 3, "sets": [{"cost": 1, "members": [0, 1]}]}})");
  r = cli({"validate", "--instance", uncoverable});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("cover"), std::string::npos);

  r = cli({"validate", "--instance", corpus("colocated3.json")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(Json::parse(r.out)["diagnostics"], Json::array());
}

TEST(Cli, ValidationErrorsAreJson) {
  auto r = cli({"run", "--mechanism", "nope", "--instance", corpus("colocated3.json"), "--truthful"});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_EQ(Json::parse(r.err)["error"], "validation");
  r = cli({"run", "--mechanism", "moulin-pt", "--instance", "/nonexistent.json", "--truthful"});
  EXPECT_EQ(r.code, kExitValidation);
  r = cli({"frobnicate"});
  EXPECT_EQ(r.code, kExitValidation);
  r = cli({"run", "--mechanism", "moulin-pt", "--instance", corpus("colocated3.json")});
  EXPECT_EQ(r.code, kExitValidation);
}

TEST(Cli, GenerateRoundTrip) {
  TempDir dir;
  const std::vector<std::vector<std::string>> kinds = {
      {"--kind", "facility-location", "--players", "4", "--facilities", "2", "--seed", "3"},
      {"--kind", "colocated", "--players", "5", "--opening-cost", "2"},
      {"--kind", "steiner", "--vertices", "6", "--players", "4", "--seed", "3"},
      {"--kind", "ssrob", "--vertices", "5", "--players", "3", "--seed", "3"},
      {"--kind", "set-cover", "--elements", "4", "--sets", "3", "--seed", "3"},
      {"--kind", "lower-bound-spec", "--k", "16", "--beta", "2", "--m", "3"}};
  for (const auto& flags : kinds) {
    std::vector<std::string> args = {"generate"};
    args.insert(args.end(), flags.begin(), flags.end());
    const auto path = dir.path("gen.json");
    args.insert(args.end(), {"--output", path});
    ASSERT_EQ(cli(args).code, kExitOk) << flags[1];
    const InstanceFile a = load_instance(path);
    const auto copy = dir.path("copy.json");
    save_instance(a, copy);
    const InstanceFile b = load_instance(copy);
    EXPECT_EQ(instance_digest(a), instance_digest(b));
    EXPECT_EQ(a.body, b.body);
    EXPECT_EQ(cli({"validate", "--instance", path}).code, kExitOk);
  }
}

TEST(Cli, ReportsAreByteIdentical) {
  const std::vector<std::string> args = {"summability", "--method", "jv", "--instance",
                                         corpus("steiner-seed1-v6-p4.json"), "--random", "--seed", "9",
                                         "--trials", "40"};
  EXPECT_EQ(cli(args).out, cli(args).out);
  const std::vector<std::string> gst = {"run", "--mechanism", "moulin-gst", "--instance",
                                        corpus("ssrob-seed1-v5-p3.json"), "--truthful", "--gst-mode", "mc",
                                        "--samples", "500", "--gst-seed", "4"};
  EXPECT_EQ(cli(gst).out, cli(gst).out);
}

TEST(Cli, ParseCaps) {
  const Caps c = parse_caps("subsets=20,orderings=9");
  EXPECT_EQ(c.subsets, 20u);
  EXPECT_EQ(c.orderings, 9u);
  EXPECT_THROW(parse_caps("bogus=1"), InvalidInput);
  EXPECT_THROW(parse_caps("subsets=x"), InvalidInput);
}

TEST(CliBinary, ExitCodesFromProcess) {
  const std::string tool = COSTSHARE_TOOL;
  const auto status = [](const std::string& cmd) {
    const int s = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(s);
  };
  EXPECT_EQ(status(tool + " validate --instance " + corpus("colocated3.json")), 0);
  EXPECT_EQ(status(tool + " validate --instance /nonexistent.json"), 1);
  EXPECT_EQ(status(tool + " lowerbound --k 16 --beta 2 --method jv"), 2);
  TempDir dir;
  const auto v = dir.file("v.json", "[1, 1, 1, 1, 1, 1, 1, 1]");
  const std::string verify = " verify --check sp --mechanism moulin-pt --grid-step 1 --grid-max 1 --instance " +
                             corpus("colocated8.json") + " --valuations " + v;
  EXPECT_EQ(status(tool + verify), 2);
  EXPECT_EQ(status("COSTSHARE_CAPS=incentive_players=8 " + tool + verify), 0);
}
