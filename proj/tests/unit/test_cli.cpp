#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace quatem::cli {
namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("quatem_cli_" + std::string(::testing::UnitTest::GetInstance()
                                            ->current_test_info()
                                            ->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int call(std::vector<std::string> args) {
    out_.str("");
    log_.str("");
    return run(args, out_, log_);
  }
  std::string path(std::string const& name) const { return (dir_ / name).string(); }
  static std::string slurp(std::string const& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
  std::ostringstream out_, log_;
};

TEST(CliParsing, ComplexNumbers) {
  EXPECT_EQ(parse_complex("1"), ComplexScalar(1, 0));
  EXPECT_EQ(parse_complex("-2.5"), ComplexScalar(-2.5, 0));
  EXPECT_EQ(parse_complex("2i"), ComplexScalar(0, 2));
  EXPECT_EQ(parse_complex("-i"), ComplexScalar(0, -1));
  EXPECT_EQ(parse_complex("1+0.3i"), ComplexScalar(1, 0.3));
  EXPECT_EQ(parse_complex("1e-2-4j"), ComplexScalar(0.01, -4));
  EXPECT_EQ(parse_complex(" 3 - i "), ComplexScalar(3, -1));
  for (char const* bad : {"", "i2", "1+", "abc", "1+2", "1..2"})
    EXPECT_THROW(parse_complex(bad), config_error) << bad;
}

TEST(CliParsing, Points) {
  auto const p = parse_points("0,0,0; 0.1,0.2,-0.3");
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[1], (Vec3{0.1, 0.2, -0.3}));
  EXPECT_THROW(parse_points("1,2"), config_error);
  EXPECT_THROW(parse_points(""), config_error);
}

TEST_F(Cli, HelpDocumentsColumns) {
  EXPECT_EQ(call({"--help"}), exit_ok);
  EXPECT_NE(out_.str().find("triangle,e1_re,e1_im"), std::string::npos);
  EXPECT_NE(out_.str().find("x,y,z,q0_re"), std::string::npos);
  EXPECT_EQ(call({"extend-check", "--help"}), exit_ok);
  EXPECT_NE(out_.str().find("--seed"), std::string::npos);
  EXPECT_NE(out_.str().find("42"), std::string::npos);
}

TEST_F(Cli, ConfigErrorsExitWithTwo) {
  EXPECT_EQ(call({}), exit_config);
  EXPECT_EQ(call({"frobnicate"}), exit_config);
  EXPECT_EQ(call({"kernel-probe", "--alpha", "one"}), exit_config);
  EXPECT_EQ(call({"gen-mesh", "--rule", "five-point"}), exit_config);
  EXPECT_EQ(call({"reconstruct", "--traces", path("missing.csv")}), exit_config);
  EXPECT_NE(log_.str().find("missing.csv"), std::string::npos);
}

TEST_F(Cli, PreconditionErrorsExitWithFour) {
  EXPECT_EQ(call({"kernel-probe", "--r-min", "0", "--r-max", "1"}), exit_config);
  EXPECT_EQ(call({"gen-field", "--family", "chiral", "--beta", "1"}), exit_precondition);
  EXPECT_EQ(call({"gen-field", "--family", "chiral", "--level", "1", "-o", path("t.csv")}),
            exit_ok);
  EXPECT_EQ(call({"reconstruct", "--level", "1", "--traces", path("t.csv"), "--probes",
                  "0,0,0.9"}),
            exit_precondition);
}

TEST_F(Cli, MeshRoundTrip) {
  ASSERT_EQ(call({"gen-mesh", "--level", "2", "--scale", "2,1,1", "-o", path("m.off")}),
            exit_ok);
  EXPECT_NE(log_.str().find("320 triangles"), std::string::npos);
  auto in = io::open_input(path("m.off"));
  auto const mesh = io::read_off(in);
  EXPECT_EQ(mesh.size(), 320u);
  EXPECT_TRUE(checked_normals(mesh).outward);
}

TEST_F(Cli, GenFieldFamilies) {
  ASSERT_EQ(call({"gen-field", "--family", "abc", "--lambda", "2", "--level", "0"}), exit_ok);
  std::istringstream rows(out_.str());
  std::string line;
  std::getline(rows, line);
  EXPECT_EQ(line, io::field_csv_header);
  std::size_t n = 0;
  while (std::getline(rows, line)) ++n;
  EXPECT_EQ(n, 20u);
  ASSERT_EQ(call({"gen-field", "--family", "polynomial", "--target", "volume", "--level",
                  "0", "--radial-order", "2"}),
            exit_ok);
  EXPECT_NE(log_.str().find("40 volume points"), std::string::npos);
  EXPECT_EQ(call({"gen-field", "--family", "chiral", "--target", "volume", "--level", "0",
                  "--component", "Q"}),
            exit_config);
}

TEST_F(Cli, KernelProbeMatchesLibrary) {
  ASSERT_EQ(call({"kernel-probe", "--alpha", "1+0.3i", "--sign", "-", "--direction", "0,3,4",
                  "--r-min", "0.5", "--r-max", "0.5", "--samples", "1"}),
            exit_ok);
  std::istringstream rows(out_.str());
  std::string line;
  std::getline(rows, line);
  std::getline(rows, line);
  auto const v = parse_list(line);
  ASSERT_EQ(v.size(), 14u);
  Vec3 const x{0, 0.3, 0.4};
  auto const u = upsilon({1, 0.3}, Sign::minus, x);
  EXPECT_DOUBLE_EQ(v[0], 0.5);
  EXPECT_DOUBLE_EQ(v[4], theta({1, 0.3}, x).real());
  EXPECT_DOUBLE_EQ(v[6], u[0].real());
  EXPECT_DOUBLE_EQ(v[13], u[3].imag());
}

TEST_F(Cli, ReconstructPathsAgree) {
  ASSERT_EQ(call({"gen-field", "--family", "chiral", "--level", "2", "-o", path("t.csv")}),
            exit_ok);
  std::vector<std::string> base{"reconstruct", "--level",  "2",      "--traces",
                                path("t.csv"), "--probes", "0.1,0,0.2"};
  auto direct = base;
  direct.insert(direct.end(), {"-o", path("d.json")});
  auto split = base;
  split.insert(split.end(), {"--path", "split", "-o", path("s.json")});
  ASSERT_EQ(call(direct), exit_ok);
  ASSERT_EQ(call(split), exit_ok);
  auto const a = json::parse(slurp(path("d.json")));
  auto const b = json::parse(slurp(path("s.json")));
  EXPECT_EQ(a["schema_version"], schema_version);
  for (char const* f : {"E", "H"})
    for (std::size_t k = 0; k < 4; ++k)
      for (std::size_t c = 0; c < 2; ++c)
        EXPECT_NEAR(a["points"][0][f][k][c].get<double>(),
                    b["points"][0][f][k][c].get<double>(), 1e-12);
}

TEST_F(Cli, ExtendCheckVerdictAndDeterminism) {
  ASSERT_EQ(call({"gen-field", "--family", "chiral", "--level", "3", "-o", path("t.csv")}),
            exit_ok);
  std::vector<std::string> args{"extend-check", "--level", "3", "--traces", path("t.csv"),
                                "--perturb", "0.1"};
  auto first = args;
  first.insert(first.end(), {"-o", path("a.json")});
  auto second = args;
  second.insert(second.end(), {"-o", path("b.json")});
  int const rc = call(first);
  EXPECT_TRUE(rc == exit_ok || rc == exit_criterion);
  EXPECT_EQ(call(second), rc);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  auto const j = json::parse(slurp(path("a.json")));
  EXPECT_EQ(j["seed"], 42);
  EXPECT_EQ(j["threshold"], 0.05);
  EXPECT_EQ(j["extendible"], rc == exit_ok);

  EXPECT_EQ(call({"extend-check", "--level", "3", "--traces", path("t.csv"), "--threshold",
                  "1e-9"}),
            exit_criterion);
  EXPECT_EQ(call({"extend-check", "--level", "3", "--traces", path("t.csv"), "--depth-factor",
                  "1"}),
            exit_precondition);
}

TEST_F(Cli, VerifyBpReportsLevels) {
  ASSERT_EQ(call({"verify-bp", "--levels", "2,3", "--fields", "scalar,beltrami"}), exit_ok);
  auto const j = json::parse(out_.str());
  EXPECT_EQ(j["schema_version"], schema_version);
  ASSERT_EQ(j["levels"].size(), 2u);
  EXPECT_EQ(j["levels"][1]["residuals"]["scalar"].size(), 5u);
  EXPECT_EQ(j["reduction_ratios"].size(), 1u);
  EXPECT_EQ(call({"verify-bp", "--levels", "1.5"}), exit_config);
}

}  // namespace
}  // namespace quatem::cli
