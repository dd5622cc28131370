#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "trusskit/btp.hpp"
#include "trusskit/errors.hpp"
#include "trusskit/rigidity.hpp"

using namespace trusskit;

namespace {

BtpNode unit_triangle(Point a, Point b, Point c) {
  return btp_triangle(btp_segment(a, b), btp_segment(b, c), btp_segment(c, a),
                      {PinPair{{0, 1}, {1, 0}}, PinPair{{1, 1}, {2, 0}}, PinPair{{2, 1}, {0, 0}}});
}

BtpNode simple_prism(std::array<Point, 6> z) {
  BtpNode p = unit_triangle(z[0], z[1], z[2]), q = unit_triangle(z[3], z[4], z[5]);
  // Triangle vertex order after assembly is z1, z2, z3.
  return btp_prism({std::move(p), std::move(q), btp_segment(z[0], z[3]), btp_segment(z[1], z[4]),
                    btp_segment(z[2], z[5])},
                   {PinPair{{0, 0}, {2, 0}}, PinPair{{0, 1}, {3, 0}}, PinPair{{0, 2}, {4, 0}}, PinPair{{1, 0}, {2, 1}},
                    PinPair{{1, 1}, {3, 1}}, PinPair{{1, 2}, {4, 1}}});
}

}  // namespace

TEST(Btp, SegmentAndTriangle) {
  BtpNode s = btp_segment({0, 0}, {1, 0});
  EXPECT_EQ(predicted_compat(s), 0);
  Assembly a = assemble(unit_triangle({0, 0}, {1, 0}, {0, 1}));
  EXPECT_EQ(a.truss.num_vertices(), 3);
  EXPECT_EQ(a.truss.num_edges(), 3);
  EXPECT_EQ(analyze(a.truss).c, 0);
}

TEST(Btp, BigonOfTriangles) {
  BtpNode b = btp_bigon(unit_triangle({0, 0}, {1, 0}, {0, 1}), unit_triangle({0, 0}, {1, 0}, {1, -1}),
                        {PinPair{{0, 0}, {1, 0}}, PinPair{{0, 1}, {1, 1}}});
  Assembly a = assemble(b);
  EXPECT_EQ(a.truss.num_vertices(), 4);
  EXPECT_EQ(a.truss.num_edges(), 6);
  int doubled = 0;
  for (const Edge& e : a.truss.edges()) doubled += e.doubled;
  EXPECT_EQ(doubled, 1);
  AnalysisReport r = analyze(a.truss);
  EXPECT_EQ(r.c, 1);
  EXPECT_TRUE(r.is_inf_rigid);
  EXPECT_EQ(predicted_compat(b), 1);
}

TEST(Btp, PinnedDoubleTriangle) {
  BtpNode b = btp_bigon(unit_triangle({0, 0}, {1, 0}, {0, 1}), unit_triangle({0, 0}, {1, 0}, {0, 1}),
                        {PinPair{{0, 0}, {1, 0}}, PinPair{{0, 1}, {1, 1}}});
  BtpNode p = btp_pin(b, 2, 3);
  EXPECT_EQ(predicted_compat(p), predicted_compat(b) + 2);
  Assembly a = assemble(p);
  EXPECT_EQ(a.truss.num_vertices(), 3);
  EXPECT_EQ(analyze(a.truss).c, 3);
}

TEST(Btp, GenericPrism) {
  Assembly a = assemble(simple_prism({Point{0, 0}, {3, 0}, {1, 2}, {0.4, 4}, {2.5, 3.5}, {1.2, 6}}));
  EXPECT_FALSE(a.degenerate);
  EXPECT_EQ(a.truss.num_vertices(), 6);
  EXPECT_EQ(a.truss.num_edges(), 9);
  AnalysisReport r = analyze(a.truss);
  EXPECT_EQ(r.nullity, 3);
  EXPECT_EQ(r.c, 0);
}

TEST(Btp, ParallelLegsShear) {
  std::array<Point, 6> z{Point{0, 0}, {1, 0.3}, {2, -0.2}, {0, 1}, {1, 1.3}, {2, 0.8}};
  PrismLegs legs{z};
  EXPECT_NEAR(prism_determinant(legs), 0.0, 1e-12);
  Assembly a = assemble(simple_prism(z));
  EXPECT_TRUE(a.degenerate);
  EXPECT_FALSE(a.warnings.empty());
  EXPECT_EQ(analyze(a.truss).nullity, 4);
}

TEST(Btp, ConcurrentLegsRotate) {
  // Legs on lines through the origin.
  std::array<Point, 6> z{Point{1, 0}, {0, 1}, {-1, -1}, {2, 0}, {0, 3}, {-2, -2}};
  EXPECT_NEAR(prism_determinant({z}), 0.0, 1e-12);
  Assembly a = assemble(simple_prism(z));
  EXPECT_TRUE(a.degenerate);
  EXPECT_EQ(analyze(a.truss).nullity, 4);
}

TEST(Btp, DeterminantTranslationInvariant) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 0; k < 100; ++k) {
    PrismLegs legs;
    for (Point& p : legs.z) p = {u(rng), u(rng)};
    PrismLegs moved = legs;
    double dx = u(rng), dy = u(rng);
    for (Point& p : moved.z) p.x += dx, p.y += dy;
    EXPECT_NEAR(prism_determinant(legs), prism_determinant(moved), 1e-9);
  }
}

TEST(Btp, InputErrors) {
  BtpNode tri = unit_triangle({0, 0}, {1, 0}, {0, 1});
  EXPECT_THROW(assemble(btp_bigon(tri, tri, {PinPair{{0, 0}, {1, 0}}, PinPair{{0, 0}, {1, 0}}})), InputError);
  EXPECT_THROW(assemble(btp_bigon(tri, tri, {PinPair{{0, 0}, {1, 1}}, PinPair{{0, 1}, {1, 0}}})), InputError);
  EXPECT_THROW(assemble(unit_triangle({0, 0}, {1, 0}, {2, 0})), InputError);
  EXPECT_THROW(assemble(btp_segment({1, 1}, {1, 1})), InputError);
  EXPECT_THROW(assemble(btp_pin(tri, 0, 1)), InputError);
}

TEST(Btp, RandomTreesMatchPrediction) {
  int tested = 0, nontrivial = 0;
  while (tested < 50) {
    BtpNode n = random_btp(2024 + tested, 3);
    Assembly a = assemble(n);
    ASSERT_FALSE(a.degenerate);
    AnalysisReport r = analyze(a.truss);
    EXPECT_EQ(r.nullity, 3) << "tree " << tested;
    EXPECT_EQ(r.c, predicted_compat(n)) << "tree " << tested;
    nontrivial += a.truss.num_vertices() > 4;
    ++tested;
  }
  EXPECT_GT(nontrivial, 25);
}
