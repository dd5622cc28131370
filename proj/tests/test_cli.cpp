#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "trusskit/continuum.hpp"
#include "trusskit/damage.hpp"
#include "trusskit/io.hpp"
#include "trusskit/lattice.hpp"
#include "trusskit/rigidity.hpp"
#include "trusskit/statics.hpp"
#include "trusskit/svg.hpp"
#include "trusskit/wagon_wheel.hpp"

using namespace trusskit;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome cli(const std::string& args) {
  const std::string cmd = std::string(TRUSSKIT_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  Outcome r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("trusskit_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    save_text(path(name), text);
    return path(name);
  }
  std::filesystem::path dir_;
};

}  // namespace

TEST_F(Cli, GenMatchesLibrary) {
  Outcome r = cli("gen --shape rhombus -n 2");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, serialize_truss(rhombus(2)));
}

TEST_F(Cli, AnalyzeIsBitForBit) {
  const std::string f = write("r.json", serialize_truss(rhombus(3)));
  Outcome r = cli("analyze " + f);
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out), to_json(analyze(load_truss(f).truss)));
}

TEST_F(Cli, CompatCsvIsBitForBit) {
  const std::string f = write("h.json", serialize_truss(hexstar()));
  Outcome r = cli("compat " + f);
  ASSERT_EQ(r.code, 0);
  const CompatibilityBasis b = compatibility_basis(load_truss(f).truss);
  EXPECT_EQ(r.out, compat_csv(b.B, b.edge_ids));
}

TEST_F(Cli, WagonRowsRoundTrip) {
  const Truss t = hexstar();
  const std::string f = write("h.json", serialize_truss(t));
  Outcome r = cli("wagon " + f);
  ASSERT_EQ(r.code, 0);
  const WagonRow row = wagon_row(t, topology_report(t).interior_vertices.at(0));
  std::istringstream in(r.out);
  int center;
  char colon;
  in >> center >> colon;
  EXPECT_EQ(center, row.center);
  for (std::size_t i = 0; i < row.edge_ids.size(); ++i) {
    int id;
    char eq, comma;
    double v;
    in >> id >> eq >> v;
    if (i + 1 < row.edge_ids.size()) in >> comma;
    EXPECT_EQ(id, row.edge_ids[i]);
    EXPECT_EQ(v, row.coeff_L[i]);  // shortest round-trip text parses back exactly
  }
}

TEST_F(Cli, DamageJson) {
  const Truss t = rhombus(3);
  const std::string f = write("r.json", serialize_truss(t));
  Outcome r = cli("damage " + f + " --remove 4,9 --json");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out), to_json(assess_damage(load_truss(f).truss, {4, 9})));
}

TEST_F(Cli, StaticsJson) {
  const Truss t = rhombus(2);
  const std::string f = write("r.json", serialize_truss(t));
  const Eigen::VectorXd F = random_balanced_load(t, 5);
  const std::string loads = write("F.json", vector_json(F).dump());
  Outcome r = cli("statics " + f + " --loads " + loads);
  ASSERT_EQ(r.code, 0);
  const Truss back = load_truss(f).truss;
  EXPECT_EQ(Json::parse(r.out), to_json(solve_displacement(back, unit_springs(back), F)));
  Outcome e = cli("statics " + f + " --loads " + loads + " --method elongation");
  ASSERT_EQ(e.code, 0);
  EXPECT_EQ(Json::parse(e.out), to_json(solve_elongation(back, unit_springs(back), F)));
}

TEST_F(Cli, LimitProbes) {
  Outcome h = cli("limit hexagon --ink-field \"e11=y^2; e12=0; e22=0\" --deltas 0.2,0.1,0.05");
  ASSERT_EQ(h.code, 0);
  // An exact expansion has an infinite error order, written as null.
  EXPECT_EQ(Json::parse(h.out).dump(),
            to_json(hexagon_limit_check(parse_strain("e11=y^2; e12=0; e22=0"), {0, 0}, {0.2, 0.1, 0.05})).dump());
  Outcome b = cli("limit boundary --kappa 0.1 --b 0.3 --eps \"e11=1; e12=0; e22=0\" --rs 0.04,0.02,0.01");
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(Json::parse(b.out),
            to_json(boundary_limit_check(0.1, 0.3, parse_strain("e11=1; e12=0; e22=0"), {0.04, 0.02, 0.01})));
}

TEST_F(Cli, AcAndSvg) {
  Outcome a = cli("ac --k 5 --holes \"para(2,2,1,1)\" --empirical 2 --json");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(Json::parse(a.out), to_json(asymptotic_compatibility({5, {ParallelogramHole{{2, 2}, 1, 1}}}, 2)));
  const std::string f = write("h.json", serialize_truss(hexstar()));
  Outcome s = cli("svg " + f);
  ASSERT_EQ(s.code, 0);
  EXPECT_EQ(s.out, render_svg(load_truss(f).truss));
}

TEST_F(Cli, DevelopWritesPositions) {
  const std::string f = write("h.json", serialize_truss(hexstar()));
  const std::string out = path("dev.json");
  ASSERT_EQ(cli("develop " + f + " --seed-edge 3 -o " + out).code, 0);
  const Truss d = load_truss(out).truss;
  const Edge& e = d.edges()[3];
  EXPECT_NEAR(d.vertices()[e.a].x, 0.0, 1e-14);
  EXPECT_NEAR(d.vertices()[e.a].y, 0.0, 1e-14);
  EXPECT_NEAR(d.vertices()[e.b].y, 0.0, 1e-12);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(cli("analyze " + path("missing.json")).code, 1);
  EXPECT_EQ(cli("gen --shape pentagon").code, 1);
  EXPECT_EQ(cli("frobnicate").code, 1);
  const Truss square({{0, 0}, {1, 0}, {1, 1}, {0, 1}},
                      {Edge{0, 1, std::nullopt, false, false}, Edge{1, 2, std::nullopt, false, false},
                       Edge{2, 3, std::nullopt, false, false}, Edge{3, 0, std::nullopt, false, false}});
  const std::string sq = write("sq.json", serialize_truss(square));
  EXPECT_EQ(cli("svg " + sq + " --color flex --mode 3").code, 2);
  // Balanced shear on a square excites its flex.
  const std::string loads = write("F.json", "[-1,-1, -1,1, 1,1, 1,-1]");
  EXPECT_EQ(cli("statics " + sq + " --loads " + loads).code, 2);
  EXPECT_EQ(cli("--help").code, 0);
}
