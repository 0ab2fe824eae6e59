#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gaussprec/commands.hpp"
#include "gaussprec/figures.hpp"
#include "gaussprec/scenario.hpp"

using namespace gaussprec;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("gaussprec_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "gaussprec");
    out_.str("");
    err_.str("");
    return run_cli(args, out_, err_);
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

const char* kTmsv = R"({
  "probe": {"family": "tmsv", "r": 0.4},
  "bath": {"gamma": 1.0, "N_e": 0.5},
  "t": 0.0
})";

}  // namespace

TEST_F(CliTest, BoundsPrintsNamedValues) {
  EXPECT_EQ(run({"bounds", "--config", write("a.json", kTmsv)}), kExitOk) << err_.str();
  const std::string text = out_.str();
  EXPECT_NE(text.find("family = tmsv\n"), std::string::npos);
  EXPECT_NE(text.find("B_H_max = 1.306755085969"), std::string::npos) << text;
  EXPECT_NE(text.find("SQL = 2\n"), std::string::npos) << text;
  EXPECT_EQ(err_.str(), "");
}

TEST_F(CliTest, BoundsToFile) {
  const auto out = (dir_ / "b.txt").string();
  EXPECT_EQ(run({"bounds", "--config", write("a.json", kTmsv), "--out", out}), kExitOk);
  EXPECT_EQ(out_.str(), "");
  EXPECT_NE(slurp(out).find("B_S = "), std::string::npos);
}

TEST_F(CliTest, MalformedConfigProducesNoOutput) {
  const auto cfg = write("bad.json", "{\n  \"probe\": {\"family\": \"tmsv\", \"r\": 0.4},\n  \"t\": ,\n}");
  const auto csv = dir_ / "out.csv";
  EXPECT_EQ(run({"sweep", "--config", cfg, "--out", csv.string()}), kExitConfig);
  EXPECT_FALSE(fs::exists(csv));
  EXPECT_EQ(out_.str(), "");
  EXPECT_NE(err_.str().find("line 3"), std::string::npos) << err_.str();
  EXPECT_EQ(run({"bounds", "--config", cfg}), kExitConfig);
  EXPECT_EQ(out_.str(), "");
}

TEST_F(CliTest, UnknownFieldIsNamed) {
  const auto cfg = write("u.json", "{\n  \"probe\": {\"family\": \"tmsv\", \"r\": 0.4},\n  \"gama\": 1\n}");
  EXPECT_EQ(run({"bounds", "--config", cfg}), kExitConfig);
  EXPECT_NE(err_.str().find("'gama'"), std::string::npos) << err_.str();
  EXPECT_NE(err_.str().find("line 3"), std::string::npos) << err_.str();
}

TEST_F(CliTest, MissingConfigFileAndArguments) {
  EXPECT_EQ(run({"bounds", "--config", (dir_ / "nope.json").string()}), kExitConfig);
  EXPECT_EQ(run({"bounds"}), kExitConfig);
  EXPECT_EQ(run({}), kExitConfig);
  EXPECT_EQ(run({"frobnicate"}), kExitConfig);
  EXPECT_EQ(run({"--help"}), kExitOk);
}

TEST_F(CliTest, SinglePointSweep) {
  const auto cfg = write("s.json", R"({
    "probe": {"family": "tmdt", "alpha1": 0.5, "nbar": "N_e"},
    "bath": {"N_e": 0.5},
    "sweep": {"axis": "t", "start": 0.5, "points": 1},
    "outputs": ["B_S", "B_R", "R"]
  })");
  const auto csv = dir_ / "one.csv";
  EXPECT_EQ(run({"sweep", "--config", cfg, "--out", csv.string()}), kExitOk) << err_.str();
  const auto text = slurp(csv);
  ASSERT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
  EXPECT_EQ(text.substr(0, text.find('\n')), "t,B_S,B_R,R");
  double t, bs, br, r;
  char c;
  std::istringstream row(text.substr(text.find('\n') + 1));
  row >> t >> c >> bs >> c >> br >> c >> r;
  EXPECT_EQ(t, 0.5);
  EXPECT_NEAR(bs, 3.2974425414002563, 1e-13);
  EXPECT_NEAR(br, 4.9461638121003844, 1e-13);
  EXPECT_NEAR(r, 0.5, 1e-15);
}

TEST_F(CliTest, SweepIsDeterministic) {
  const auto cfg = write("d.json", R"({
    "probe": {"family": "tmst", "r": 0.4, "nbar": "N_e"},
    "bath": {"N_e": 0.5},
    "phi_hd": 0.3,
    "sweep": {"axis": "N_e", "start": 0, "stop": 2, "points": 41}
  })");
  const auto a = dir_ / "a.csv", b = dir_ / "b.csv";
  ASSERT_EQ(run({"sweep", "--config", cfg, "--out", a.string()}), kExitOk) << err_.str();
  ASSERT_EQ(run({"sweep", "--config", cfg, "--out", b.string()}), kExitOk);
  const auto text = slurp(a);
  EXPECT_EQ(text, slurp(b));
  EXPECT_EQ(text.substr(0, text.find('\n')), "N_e,B_S,B_R,R,B_H_max,B_HD,SQL");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 42);
}

TEST_F(CliTest, FigureWritesPanels) {
  EXPECT_EQ(run({"figure", "6", "--out", (dir_ / "figs").string()}), kExitOk) << err_.str();
  EXPECT_TRUE(fs::exists(dir_ / "figs" / "fig6a.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "figs" / "fig6b.csv"));
  EXPECT_EQ(run({"figure", "7"}), kExitConfig);
  EXPECT_EQ(run({"figure", "x"}), kExitConfig);
}

TEST_F(CliTest, OracleExitCodes) {
  const auto mixed = write("m.json", R"({
    "probe": {"family": "tmdv", "alpha1": 0.5},
    "bath": {"N_e": 0.5}, "t": 0.1
  })");
  EXPECT_EQ(run({"oracle-check", "--config", mixed, "--cutoff", "12"}), kExitOk) << out_.str();
  EXPECT_NE(out_.str().find("PASS\n"), std::string::npos);
  EXPECT_EQ(run({"oracle-check", "--config", mixed, "--cutoff", "12", "--tol", "1e-15"}),
            kExitOracleMismatch);
  EXPECT_EQ(out_.str().substr(out_.str().size() - 5), "FAIL\n");

  EXPECT_EQ(run({"oracle-check", "--config", write("p.json", kTmsv), "--cutoff", "12"}),
            kExitDegenerate);
  EXPECT_EQ(out_.str(), "");

  const auto big = write("big.json", R"({"probe": {"family": "tmsv", "r": 2.0}, "t": 0.1})");
  EXPECT_EQ(run({"oracle-check", "--config", big, "--cutoff", "6"}), kExitConfig);
  EXPECT_NE(err_.str().find("--cutoff"), std::string::npos);
}

TEST(Scenario, Defaults) {
  const auto cfg = parse_scenario(R"({"probe": {"family": "tmsv", "r": 0.4}})");
  EXPECT_EQ(cfg.bath, BathParams{});
  EXPECT_EQ(cfg.t, 0.0);
  EXPECT_EQ(cfg.outputs, (std::vector<Output>{Output::b_s, Output::b_r, Output::r,
                                              Output::b_h_max, Output::sql}));
}

TEST(Scenario, TiedOccupation) {
  const auto cfg = parse_scenario(R"({
    "probe": {"family": "tmst", "r": 0.4, "nbar": "N_e"},
    "bath": {"N_e": 0.5},
    "sweep": {"axis": "N_e", "start": 0, "stop": 2, "points": 5}
  })");
  EXPECT_TRUE(cfg.nbar_tracks_env);
  const auto p = point_at(cfg, 1.5);
  EXPECT_EQ(p.bath.n_env, 1.5);
  EXPECT_EQ(std::get<Tmst>(p.probe).nbar, 1.5);
  EXPECT_EQ(cfg.sweep->values().back(), 2.0);
}

TEST(Scenario, Errors) {
  auto field_of = [](const char* text) {
    try {
      parse_scenario(text);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  EXPECT_EQ(field_of(R"({"bath": {"N_e": 0.5}})"), "probe");
  EXPECT_EQ(field_of(R"({"probe": {"family": "tmsv", "r": -1}})"), "probe.r");
  EXPECT_EQ(field_of(R"({"probe": {"family": "tmsv", "r": 0.1}, "bath": {"gamma": 0}})"), "bath");
  EXPECT_EQ(field_of(R"({"probe": {"family": "tmsv", "r": 0.1}, "t": -1})"), "t");
  EXPECT_EQ(field_of(R"({"probe": {"family": "tmsv", "r": 0.1}, "outputs": ["B_HD"]})"), "outputs");
  EXPECT_EQ(field_of(R"({"probe": {"family": "tmdv"}, "sweep": {"axis": "r", "start": 0, "points": 3}})"),
            "sweep.axis");
  EXPECT_EQ(field_of(R"({"probe": {"family": "tmsv", "r": 0.1}, "sweep": {"axis": "t", "start": 0, "points": 0}})"),
            "sweep.points");
  EXPECT_EQ(field_of(R"({"probe": {"family": "tmst", "r": 0.1, "nbar": 0.2}, "phi_hd": 0})"),
            "probe.nbar");
  EXPECT_EQ(field_of(R"({"probe": {"family": "tmsv", "r": 0.1}, "sweep": {"axis": "N_e", "start": -1, "stop": 1, "points": 3}})"),
            "sweep.start");
  EXPECT_EQ(field_of(R"({"probe": {"family": "tmsv", "r": 0.1}})"), "<none>");
}

TEST(Csv, FormatAndLayout) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(2.0), "2");
  CsvTable t{"x", {"a", "b"}, {{1.0, 0.5}, {2.0, -3.0}}};
  EXPECT_EQ(to_csv(t), "a,b\n1,0.5\n2,-3\n");
  EXPECT_EQ(t.column("b"), 1u);
  EXPECT_THROW(t.column("c"), std::out_of_range);
}
