#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sstpca_cli/cli.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "sstpca");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = sstpca::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sstpca_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, SampleThenRecover) {
  const auto sampled = run({"sample", "--n", "20", "--p", "3", "--k", "4", "--lambda", "60", "--seed", "7",
                            "--out", path("y.sstf")});
  ASSERT_EQ(sampled.code, 0) << sampled.err;
  ASSERT_TRUE(fs::exists(path("y.meta.json")));
  const auto meta = Json::parse(slurp(path("y.meta.json")));
  EXPECT_EQ(meta["n"], 20);
  EXPECT_EQ(meta["truth_supports"].size(), 1U);
  EXPECT_EQ(meta["truth_supports"][0].size(), 4U);

  const auto recovered = run({"recover", "--in", path("y.sstf"), "--k", "4", "--t", "1", "--seed", "1"});
  ASSERT_EQ(recovered.code, 0) << recovered.err;
  const auto report = Json::parse(recovered.out);
  EXPECT_EQ(report["recovered"][0], meta["truth_supports"][0]);
  EXPECT_TRUE(report["all_exact"].get<bool>());
}

TEST_F(CliTest, RecoverReadsParamsFile) {
  ASSERT_EQ(run({"sample", "--n", "16", "--p", "3", "--k", "3", "--r", "2", "--lambda", "80,70", "--seed", "2",
                 "--out", path("y.sstf")}).code, 0);
  std::ofstream(path("params.json")) << R"({"k": 3, "t": 1, "r": 2, "seed": 4})";
  const auto recovered = run({"recover", "--in", path("y.sstf"), "--params", path("params.json")});
  ASSERT_EQ(recovered.code, 0) << recovered.err;
  const auto report = Json::parse(recovered.out);
  EXPECT_EQ(report["r"], 2);
  EXPECT_EQ(report["recovered"].size(), 2U);
  EXPECT_TRUE(report["all_exact"].get<bool>());
}

TEST_F(CliTest, SampleIsDeterministic) {
  const std::vector<std::string> base{"sample", "--n", "10", "--p", "3", "--k", "3", "--lambda", "5", "--seed", "11"};
  auto a = base, b = base;
  a.insert(a.end(), {"--out", path("a.sstf")});
  b.insert(b.end(), {"--out", path("b.sstf")});
  ASSERT_EQ(run(a).code, 0);
  ASSERT_EQ(run(b).code, 0);
  EXPECT_EQ(slurp(path("a.sstf")), slurp(path("b.sstf")));
  EXPECT_EQ(slurp(path("a.meta.json")), slurp(path("b.meta.json")));
}

TEST_F(CliTest, LowDegreeReport) {
  const auto result = run({"lowdeg", "--n", "2", "--k", "1", "--p", "2", "--D", "3", "--lambda", "1"});
  ASSERT_EQ(result.code, 0) << result.err;
  const auto report = Json::parse(result.out);
  EXPECT_EQ(report["arithmetic"], "exact");
  EXPECT_EQ(report["exact"]["per_degree"][2], "19/48");
  EXPECT_NEAR(report["per_degree"][2].get<double>(), 19.0 / 48.0, 1e-15);
  EXPECT_FALSE(report["d_le_2n_over_p"].get<bool>());
  EXPECT_TRUE(report.contains("lower_threshold"));
  EXPECT_TRUE(report["upper_thresholds"]["lambda"].is_null());  // D odd
}

TEST_F(CliTest, ItBoundReport) {
  const auto result = run({"itbound", "--n", "100", "--k", "10"});
  ASSERT_EQ(result.code, 0) << result.err;
  const auto report = Json::parse(result.out);
  EXPECT_NEAR(report["minimax_lambda"].get<double>(), 1.154, 5e-4);
  EXPECT_EQ(report["fano_constant"], "7/80");

  const auto cover = Json::parse(run({"itbound", "--n", "4", "--k", "1", "--eps", "1", "--cover"}).out);
  EXPECT_EQ(cover["covering"]["euclidean"]["exact"], 8);
  EXPECT_EQ(cover["covering"]["sign_invariant"]["exact"], 4);
}

TEST_F(CliTest, PhaseCsv) {
  const std::vector<std::string> base{"phase", "--n", "12", "--p", "3", "--k", "3", "--lambda", "0,30",
                                      "--trials", "2", "--seed", "5"};
  auto one = base, eight = base;
  one.insert(one.end(), {"--workers", "1", "--out", path("one.csv")});
  eight.insert(eight.end(), {"--workers", "8", "--out", path("eight.csv")});
  ASSERT_EQ(run(one).code, 0);
  ASSERT_EQ(run(eight).code, 0);
  const auto text = slurp(path("one.csv"));
  EXPECT_EQ(text, slurp(path("eight.csv")));
  EXPECT_EQ(text.rfind("n,p,k,r,t,lambda,trial,seed,exact,overlap,argmax_value,runtime_ms,error\n", 0), 0U);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);
}

TEST_F(CliTest, Concentration) {
  const auto result = run({"check-concentration", "--n", "10", "--trials", "5", "--noise-scale", "0"});
  ASSERT_EQ(result.code, 0) << result.err;
  const auto report = Json::parse(result.out);
  for (const auto& m : report["maxima"]) EXPECT_EQ(m.get<double>(), 0.0);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"lowdeg", "--help"}).code, 0);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"lowdeg", "--n", "2"}).code, 1);
  EXPECT_EQ(run({"lowdeg", "--n", "2", "--k", "3", "--p", "2", "--D", "1", "--lambda", "1"}).code, 1);
  EXPECT_EQ(run({"recover", "--in", path("missing.sstf"), "--k", "2"}).code, 1);

  std::ofstream(path("junk.sstf"), std::ios::binary) << "not a tensor file";
  const auto corrupt = run({"recover", "--in", path("junk.sstf"), "--k", "2"});
  EXPECT_EQ(corrupt.code, 2);
  EXPECT_FALSE(corrupt.err.empty());
}
