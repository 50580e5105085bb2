#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "slicerank/cli.hpp"
#include "slicerank/io.hpp"

using slicerank::io::Json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = slicerank::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args) {
  const auto r = run(std::move(args));
  EXPECT_EQ(r.code, 0) << r.err;
  return Json::parse(r.out);
}

class TempDir {
 public:
  TempDir() : path_(std::filesystem::temp_directory_path() / ("slicerank_cli_" + std::to_string(::getpid()))) {
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(file(name)) << text;
    return file(name);
  }

 private:
  std::filesystem::path path_;
};

const char* kStpp = R"({"group":{"factors":[[8,1]]},"triples":[
  {"A":[[0]],"B":[[0]],"C":[[0]]},
  {"A":[[0],[1]],"B":[[2]],"C":[[4]]}]})";

}  // namespace

TEST(Cli, Constants) {
  const auto j = run_json({"constants"});
  EXPECT_NEAR(j["epsilon"].get<double>(), 0.028316, 1e-6);
  EXPECT_NEAR(j["delta"].get<double>(), 0.056633, 1e-6);
}

TEST(Cli, Bound) {
  const auto j = run_json({"bound", "--group", "Z2^10"});
  EXPECT_TRUE(j.contains("thmA"));
  EXPECT_TRUE(j["thmZm"].is_number());
  EXPECT_EQ(j["order"], "1024");
  EXPECT_LT(j["thmZm"].get<double>(), j["thmA"].get<double>());
}

TEST(Cli, OmegaFromSizes) {
  auto j = run_json({"omega", "--sizes", "8", "--order", "4"});
  EXPECT_NEAR(j["omega_bound"].get<double>(), 2.0, 1e-9);
  j = run_json({"omega", "--sizes", "2x2x2", "--order", "16"});
  EXPECT_NEAR(j["omega_floor"].get<double>(), 2.4, 1e-12);
  const auto table = run({"omega", "--sizes", "4", "--order", "2", "--table"});
  EXPECT_EQ(table.code, 0);
  EXPECT_NE(table.out.find("bound < 2 clamps to 2"), std::string::npos);
  EXPECT_EQ(run({"omega", "--sizes", "1", "--order", "4"}).code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"bound"}).code, 2);
  EXPECT_EQ(run({"bound", "--group", "Z1"}).code, 2);
  EXPECT_EQ(run({"sumfree-search", "--group", "Z11"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, RatesCsv) {
  const auto r = run({"rates", "--m", "1,2", "--n", "6"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string header, row1, row2;
  std::getline(in, header);
  std::getline(in, row1);
  std::getline(in, row2);
  EXPECT_EQ(header, "m,alpha,I,J,exact_count,fraction,hoeffding_bound,chernoff_bound");
  EXPECT_EQ(row1.rfind("1,1/3,0.05663301226513", 0), 0u) << row1;
  EXPECT_NE(row1.find(",22,11/32,"), std::string::npos);
  EXPECT_NE(row2.find(",168,56/243,"), std::string::npos);
}

TEST(Cli, Count) {
  EXPECT_EQ(run_json({"count", "--k", "3", "--n", "6"})["bound"], "504");
  EXPECT_EQ(run_json({"count", "--weights", "0,1", "--n", "6", "--threshold", "1/3"})["count"], "22");
  EXPECT_EQ(run_json({"count", "--m", "2", "--n", "6"})["fraction"], "56/243");
  EXPECT_NEAR(run_json({"count", "--dims", "2,2,2", "--epsilon", "0", "--n", "5"})["bound"].get<double>(), 96, 1e-12);
}

TEST(Cli, SumFreeRoundTrip) {
  TempDir dir;
  const auto out = dir.file("z5.json");
  ASSERT_EQ(run({"--out", out, "sumfree-search", "--group", "Z5"}).code, 0);
  const auto v = run_json({"sumfree-verify", "--in", out});
  EXPECT_TRUE(v["valid"].get<bool>());
  // A failing set exits with status 1.
  const auto bad = dir.write("bad.json", R"({"group":"Z5","matching":[[[0],[0],[0]],[[1],[1],[3]],[[2],[4],[4]]]})");
  const auto r = run({"sumfree-verify", "--in", bad});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(Json::parse(r.out)["valid"].get<bool>());
  const auto malformed = dir.write("malformed.json", R"({"group":"Z2","matching":[[[0],[0],[0]],[[1],[1],[0]]]})");
  EXPECT_EQ(run({"sumfree-verify", "--in", malformed}).code, 2);
}

TEST(Cli, StppPipelineRoundTrip) {
  TempDir dir;
  const auto stpp = dir.write("stpp.json", kStpp);
  EXPECT_TRUE(run_json({"stpp-verify", "--in", stpp})["valid"].get<bool>());
  EXPECT_EQ(run_json({"packing", "--in", stpp})["sum_AB"], "3");
  EXPECT_TRUE(run_json({"omega", "--in", stpp}).contains("omega_floor"));

  const auto border = dir.file("border.json");
  ASSERT_EQ(run({"border", "--in", stpp, "--out", border}).code, 0);
  const auto bv = run_json({"sumfree-verify", "--in", border});
  EXPECT_TRUE(bv["valid"].get<bool>());
  EXPECT_EQ(bv["kind"], "border");

  for (const char* n : {"1", "2"}) {
    const auto set = dir.file(std::string("set") + n + ".json");
    ASSERT_EQ(run({"unborder", "--in", border, "--power", n, "--out", set}).code, 0);
    const auto v = run_json({"sumfree-verify", "--in", set});
    EXPECT_TRUE(v["valid"].get<bool>());
    EXPECT_EQ(v["kind"], "tricolored");
  }
  const auto u = run_json({"uniformize", "--in", stpp, "--power", "2", "--seed", "3"});
  EXPECT_EQ(u["spot_check_failures"], 0);
  EXPECT_EQ(u["loss_factor"], "729");

  const auto bad = dir.write("bad.json", R"({"group":"Z2","triples":[{"A":[[0]],"B":[[0]],"C":[[0]]},{"A":[[0]],"B":[[0]],"C":[[0]]}]})");
  EXPECT_EQ(run({"stpp-verify", "--in", bad}).code, 1);
  EXPECT_EQ(run({"border", "--in", bad}).code, 2);
}

TEST(Cli, TensorSliceInstabilityRoundTrip) {
  TempDir dir;
  const auto t = dir.file("t.json");
  ASSERT_EQ(run({"tensor", "--poly", "1,1,0", "--p", "3", "--out", t}).code, 0);
  const auto sr = run_json({"slicerank", "--in", t});
  EXPECT_TRUE(sr["verified"].get<bool>());
  const auto d = dir.write("d.json", sr["decomposition"].dump());
  const auto rank = sr["rank"].get<std::size_t>();
  if (rank < 3) {
    const auto cert = dir.file("cert.json");
    ASSERT_EQ(run({"instability", "--from-slice", d, "--out", cert}).code, 0);
    EXPECT_TRUE(run_json({"instability", "--verify", cert, "--in", t})["valid"].get<bool>());
  }
  // Product decomposition against D_{Z2} ⊗ ... in F_3.
  const auto g = dir.file("g.json");
  ASSERT_EQ(run({"tensor", "--group", "Z2", "--p", "3", "--out", g}).code, 0);
  const auto prod = dir.file("prod.json");
  ASSERT_EQ(run({"slicerank", "--in", t, "--decomposition", d, "--with", g, "--mode", "max_axis", "--out", prod}).code, 0);
  const auto ft = dir.file("fg.json");
  ASSERT_EQ(run({"tensor", "--product", t, "--with", g, "--out", ft}).code, 0);
  EXPECT_EQ(Json::parse(std::ifstream(prod))["dims"], Json::parse(std::ifstream(ft))["dims"]);
}

TEST(Cli, TriangleRoundTrip) {
  TempDir dir;
  const auto tri = dir.file("tri.json");
  ASSERT_EQ(run({"triangle", "--q", "3", "--out", tri}).code, 0);
  EXPECT_TRUE(Json::parse(std::ifstream(tri))["verified"].get<bool>());
  const auto d3 = dir.file("d3.json");
  ASSERT_EQ(run({"tensor", "--group", "Z3", "--p", "3", "--out", d3}).code, 0);
  EXPECT_TRUE(run_json({"triangle", "--check", tri, "--in", d3})["valid"].get<bool>());
  const auto cert = dir.file("cert.json");
  ASSERT_EQ(run({"instability", "--from-triangle", tri, "--out", cert}).code, 0);
  const auto v = run_json({"instability", "--verify", cert, "--in", d3});
  EXPECT_TRUE(v["valid"].get<bool>());
  EXPECT_EQ(Json::parse(std::ifstream(cert))["epsilon"], "1/6");
  const auto diag = dir.file("diag.json");
  ASSERT_EQ(run({"tensor", "--diagonal", "2", "--p", "2", "--out", diag}).code, 0);
  EXPECT_FALSE(run_json({"instability", "--search", "--in", diag})["found"].get<bool>());
}

TEST(Cli, DeterministicOutput) {
  TempDir dir;
  const auto stpp = dir.write("stpp.json", kStpp);
  const auto a = run({"uniformize", "--in", stpp, "--power", "2", "--seed", "5"});
  const auto b = run({"uniformize", "--in", stpp, "--power", "2", "--seed", "5", "--threads", "3"});
  EXPECT_EQ(a.out, b.out);
  const auto c = run({"sumfree-search", "--group", "Z3^2", "--threads", "1"});
  const auto d = run({"sumfree-search", "--group", "Z3^2", "--threads", "4"});
  EXPECT_EQ(c.out, d.out);
}

TEST(Cli, BinaryExitCodes) {
  const std::string bin = SLICERANK_BIN;
  EXPECT_EQ(std::system((bin + " constants > /dev/null").c_str()), 0);
  EXPECT_NE(std::system((bin + " nonsense > /dev/null 2>&1").c_str()), 0);
}
