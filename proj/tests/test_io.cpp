#include <gtest/gtest.h>

#include <regex>

#include "helpers.hpp"
#include "trusskit/errors.hpp"
#include "trusskit/io.hpp"
#include "trusskit/lattice.hpp"
#include "trusskit/svg.hpp"
#include "trusskit/topology.hpp"
#include "trusskit/wagon_wheel.hpp"

using namespace trusskit;

namespace {

int count(const std::string& s, const std::string& what) {
  int n = 0;
  for (std::size_t at = s.find(what); at != std::string::npos; at = s.find(what, at + 1)) ++n;
  return n;
}

std::string error_of(const std::string& text) {
  try {
    parse_truss(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

// Stroke color of an edge's line element.
std::string stroke_of(const std::string& svg, int edge) {
  std::smatch m;
  std::regex re("data-edge=\"" + std::to_string(edge) + "\"[^>]*stroke=\"(#[0-9a-f]{6})\"");
  EXPECT_TRUE(std::regex_search(svg, m, re));
  return m[1].str();
}

}  // namespace

TEST(TrussFile, CanonicalRoundTrip) {
  for (const Truss& t : {hexstar(), rhombus(2), cell({5, {HexagonHole{{{3, 3}}}}}).with_removed({4})}) {
    const std::string bytes = serialize_truss(t);
    ParsedTruss p = parse_truss(bytes);
    EXPECT_TRUE(p.warnings.empty());
    EXPECT_EQ(serialize_truss(p.truss), bytes);
    EXPECT_EQ(p.truss.lattice(), t.lattice());
  }
}

TEST(TrussFile, ShortestRoundTripFloats) {
  Truss t = trusskit::testing::jiggle(rhombus(1), 0.1, 5);
  ParsedTruss p = parse_truss(serialize_truss(t));
  for (int i = 0; i < t.num_vertices(); ++i) {
    EXPECT_EQ(p.truss.vertices()[i].x, t.vertices()[i].x);
    EXPECT_EQ(p.truss.vertices()[i].y, t.vertices()[i].y);
  }
}

TEST(TrussFile, Diagnostics) {
  const std::string base = R"({"version":1,"vertices":[{"id":0,"x":0,"y":0},{"id":1,"x":1,"y":0}],"edges":[)";
  EXPECT_NE(error_of(base + R"({"id":0,"a":0,"b":7}]})").find("edges[0]"), std::string::npos);
  EXPECT_NE(error_of(base + R"({"id":0,"a":0,"b":7}]})").find("missing vertex 7"), std::string::npos);
  EXPECT_NE(error_of(base + R"({"id":3,"a":0,"b":1}]})").find("edges[0].id"), std::string::npos);
  EXPECT_NE(error_of(R"({"vertices":[],"edges":[]})").find("version"), std::string::npos);
  EXPECT_NE(error_of(R"({"version":2,"vertices":[],"edges":[]})").find("unsupported"), std::string::npos);
  EXPECT_NE(error_of("{\n\"version\":1,\n\"vertices\": [,\n]}").find("line 3"), std::string::npos);
  EXPECT_NE(error_of(base + R"({"id":0,"a":0,"b":1,"removed":"no"}]})").find("removed"), std::string::npos);
  // Coincident vertices need the flag.
  EXPECT_NE(error_of(R"({"version":1,"vertices":[{"id":0,"x":0,"y":0},{"id":1,"x":0,"y":0},{"id":2,"x":1,"y":0}],)"
                     R"("edges":[{"id":0,"a":0,"b":2},{"id":1,"a":1,"b":2}]})")
                .find("coincide"),
            std::string::npos);
}

TEST(TrussFile, LengthMismatchWarns) {
  ParsedTruss p = parse_truss(
      R"({"version":1,"vertices":[{"id":0,"x":0,"y":0},{"id":1,"x":1,"y":0}],"edges":[{"id":0,"a":0,"b":1,"length":1.5}]})");
  ASSERT_EQ(p.warnings.size(), 1u);
  EXPECT_NE(p.warnings[0].find("edge 0"), std::string::npos);
  EXPECT_DOUBLE_EQ(p.truss.length(0), 1.5);
  EXPECT_DOUBLE_EQ(p.truss.geometric_length(0), 1.0);
}

TEST(BtpFile, RoundTrip) {
  BtpNode n = random_btp(11, 2);
  Json j = btp_to_json(n);
  EXPECT_EQ(btp_to_json(btp_from_json(j)).dump(), j.dump());
  EXPECT_EQ(serialize_truss(assemble(btp_from_json(j)).truss), serialize_truss(assemble(n).truss));
  EXPECT_THROW(btp_from_json(Json{{"kind", "hexagon"}}), InputError);
}

TEST(Csv, HeaderAndPrecision) {
  Eigen::MatrixXd B(1, 2);
  B << 1.0 / 3.0, -2.0;
  const std::string csv = compat_csv(B, {4, 9});
  EXPECT_EQ(csv, "edge_4,edge_9\n0.33333333333333331,-2\n");
}

TEST(Lists, Parse) {
  EXPECT_EQ(parse_int_list("1, 2,5"), (std::vector<int>{1, 2, 5}));
  EXPECT_EQ(parse_double_list("0.2,0.1"), (std::vector<double>{0.2, 0.1}));
  EXPECT_THROW(parse_int_list("1,x"), InputError);
  EXPECT_THROW(parse_double_list("0.2,1e"), InputError);
}

TEST(Svg, HexstarElements) {
  const std::string s = render_svg(hexstar());
  EXPECT_EQ(count(s, "<line "), 12);
  EXPECT_EQ(count(s, "<circle "), 7);
  EXPECT_EQ(count(s, "stroke-dasharray"), 0);
  EXPECT_EQ(render_svg(hexstar()), s);
  const std::string r = render_svg(hexstar().with_removed({2}));
  EXPECT_EQ(count(r, "stroke-dasharray"), 1);
  EXPECT_NE(r.find("data-edge=\"2\"") , std::string::npos);
  std::regex dashed("data-edge=\"2\"[^>]*stroke-dasharray");
  EXPECT_TRUE(std::regex_search(r, dashed));
}

TEST(Svg, SigmaSignSplit) {
  Truss t = hexagon_union({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {-1, 1}, {1, -1}, {2, 0}});
  Complex cx = build_complex(t);
  std::vector<int> region;
  for (int v = 0; v < t.num_vertices(); ++v)
    if (cx.interior[v]) region.push_back(v);
  CurveSum cs = curve_sum(t, region);
  std::vector<double> values(t.num_edges(), 0.0);
  for (std::size_t k = 0; k < cs.edge_ids.size(); ++k) values[cs.edge_ids[k]] = cs.sigma(static_cast<Eigen::Index>(k));
  const std::string s = render_svg(t, Coloring::Sigma, values);
  EXPECT_NE(s.find("id=\"legend\""), std::string::npos);
  int checked = 0;
  for (std::size_t k = 0; k < cs.edge_ids.size(); ++k) {
    const std::string c = stroke_of(s, cs.edge_ids[k]);
    const int r = std::stoi(c.substr(1, 2), nullptr, 16), b = std::stoi(c.substr(5, 2), nullptr, 16);
    if (cs.classes[k] == EdgeClass::Boundary) {
      EXPECT_GT(r, b);
      ++checked;
    } else if (cs.classes[k] == EdgeClass::Parallel) {
      EXPECT_LT(r, b);
      ++checked;
    }
  }
  EXPECT_GT(checked, 10);
}

TEST(Svg, FlexArrowsAndErrors) {
  Truss sq = trusskit::testing::make_truss({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  const std::string s = render_svg(sq, Coloring::Flex, {0, 0, 0, 0, 1, 0, 1, 0});
  EXPECT_EQ(count(s, "marker-end"), 2);
  EXPECT_THROW(render_svg(sq, Coloring::Sigma, {1.0}), InputError);
  EXPECT_THROW(render_svg(sq, Coloring::Flex, {1.0}), InputError);
  EXPECT_THROW(parse_coloring("rainbow"), InputError);
}
