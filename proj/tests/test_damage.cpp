#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "trusskit/damage.hpp"
#include "trusskit/errors.hpp"
#include "trusskit/rigidity.hpp"
#include "trusskit/topology.hpp"

using namespace trusskit;
using trusskit::testing::jiggle;

namespace {

int vertex_at(const Truss& t, Lattice p) {
  for (int i = 0; i < t.num_vertices(); ++i)
    if (t.lattice()[i] == p) return i;
  return -1;
}

int edge_at(const Truss& t, Lattice p, Lattice q) { return t.find_edge(vertex_at(t, p), vertex_at(t, q)); }

}  // namespace

TEST(Damage, RecoverableSingleInteriorLink) {
  Truss t = rhombus(3);
  int e = edge_at(t, {2, 2}, {3, 2});
  DamageReport r = assess_damage(t, {e});
  EXPECT_TRUE(r.recoverable);
  EXPECT_EQ(r.reduced_c, r.original_c - 1);
}

TEST(Damage, CornerLosingTwoLinks) {
  Truss t = rhombus(2);
  // A degree-three outline vertex left with a single link swings freely.
  int corner = -1;
  for (int v = 0; v < t.num_vertices() && corner < 0; ++v) {
    int deg = 0;
    for (const Edge& e : t.edges()) deg += (e.a == v || e.b == v);
    if (deg == 3) corner = v;
  }
  ASSERT_GE(corner, 0);
  std::vector<int> removed;
  for (int i = 0; i < t.num_edges() && removed.size() < 2; ++i)
    if (t.edges()[i].a == corner || t.edges()[i].b == corner) removed.push_back(i);
  DamageReport r = assess_damage(t, removed);
  EXPECT_FALSE(r.recoverable);
  EXPECT_GE(r.flexes, 1);
}

TEST(Damage, ReconstructionMatchesOracle) {
  for (unsigned seed = 1; seed <= 3; ++seed) {
    Truss t = jiggle(rhombus(3), 0.08, seed);
    Eigen::MatrixXd A = assemble_rigidity(t).A;
    Eigen::VectorXd U = Eigen::VectorXd::LinSpaced(A.cols(), 0.0, 3.0).array().cos();
    Eigen::VectorXd lam = A * U;
    std::vector<int> removed{5, 17, 30};
    std::vector<int> keep;
    Eigen::VectorXd lam_s(A.rows() - 3);
    for (int k = 0, j = 0; k < A.rows(); ++k)
      if (std::find(removed.begin(), removed.end(), k) == removed.end()) lam_s(j++) = lam(k);
    DamageReport r = assess_damage(t, removed, lam_s);
    ASSERT_TRUE(r.recoverable);
    ASSERT_TRUE(r.reconstructed);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR((*r.reconstructed)(k), lam(removed[k]), 1e-9);
    EXPECT_EQ(r.reduced_c, r.original_c - 3);
  }
}

TEST(Damage, IncompatibleSurvivorDataRejected) {
  Truss t = rhombus(2);
  Eigen::VectorXd lam = Eigen::VectorXd::Zero(t.num_edges() - 1);
  lam(0) = 1.0;
  EXPECT_THROW(assess_damage(t, {10}, lam), InfeasibleError);
}

TEST(HoleLoss, SmallHolesOnCellSeven) {
  Truss host = rhombus(7);
  // Single triangle.
  Complex cx = build_complex(host);
  int v = vertex_at(host, {4, 4}), w = vertex_at(host, {5, 4}), x = vertex_at(host, {4, 5});
  int face = -1;
  for (std::size_t f = 0; f < cx.faces.size(); ++f) {
    const Face& F = cx.faces[f];
    if (std::count(F.begin(), F.end(), v) && std::count(F.begin(), F.end(), w) && std::count(F.begin(), F.end(), x))
      face = static_cast<int>(f);
  }
  HoleLoss tri = hole_loss(host, std::vector<int>{face});
  EXPECT_EQ(tri.loss, 0);
  EXPECT_EQ(tri.formula_loss, 0);
  HoleLoss rh = hole_loss(host, ParallelogramHole{{4, 4}, 1, 1});
  EXPECT_EQ(rh.l1, 4);
  EXPECT_EQ(rh.loss, 1);
  EXPECT_EQ(rh.formula_loss, 1);
  HoleLoss hx = hole_loss(host, HexagonHole{{{4, 4}}});
  EXPECT_EQ(hx.v1, 1);
  EXPECT_EQ(hx.l1, 6);
  EXPECT_EQ(hx.loss, 4);
  EXPECT_EQ(hx.formula_loss, 4);
}

TEST(HoleLoss, CollaredHolesMatchFormula) {
  Truss host = rhombus(9);
  HoleLoss big = hole_loss(host, HexagonHole{{{4, 5}, {5, 4}, {5, 5}, {6, 4}, {4, 6}, {6, 5}, {5, 6}}});
  // Hexagon of side 2: 7 inner points, 12 links.
  EXPECT_TRUE(big.collared);
  EXPECT_EQ(big.v1, 7);
  EXPECT_EQ(big.l1, 12);
  EXPECT_EQ(big.loss, big.formula_loss);
  EXPECT_EQ(big.loss, 16);
  HoleLoss para = hole_loss(host, ParallelogramHole{{3, 3}, 3, 2});
  EXPECT_GE(para.loss, para.l1 - 3);
  if (para.collared) EXPECT_EQ(para.loss, para.formula_loss);
}

TEST(HoleLoss, NonCollaredSatisfyLowerBound) {
  Truss host = rhombus(7);
  for (const Hole& h : std::vector<Hole>{ParallelogramHole{{3, 3}, 1, 1}, ParallelogramHole{{2, 3}, 3, 1},
                                         HexagonHole{{{4, 4}}}, EdgeHole{{{{3, 3}, {3, 4}}}}}) {
    HoleLoss r = hole_loss(host, h);
    EXPECT_GE(r.loss, r.l1 - 3);
  }
}

TEST(HoleLoss, TouchingOuterBoundaryRejected) {
  Truss host = rhombus(5);
  EXPECT_THROW(hole_loss(host, HexagonHole{{{1, 1}}}), InputError);
}

TEST(Isoperimetric, BoundsAndHexagons) {
  Isoperimetric four = isoperimetric(4);
  EXPECT_EQ(four.max_interior, 0);
  EXPECT_EQ(four.loss_lower, 1);
  EXPECT_EQ(four.loss_upper, 1);
  EXPECT_NEAR(four.loss_upper_real, 4.0 / 3.0, 1e-12);
  EXPECT_EQ(isoperimetric(6).max_interior, 1);
  EXPECT_EQ(isoperimetric(12).max_interior, 7);
  EXPECT_THROW(isoperimetric(2), InputError);
  for (int p = 1; p <= 4; ++p) {
    Truss hex = hexagon_union([&] {
      std::vector<Lattice> c;
      for (int a = -p + 1; a <= p - 1; ++a)
        for (int b = -p + 1; b <= p - 1; ++b)
          if (std::abs(a + b) <= p - 1) c.push_back({a, b});
      return c;
    }());
    TopologyReport r = topology_report(hex);
    EXPECT_EQ(r.v_interior, 3 * p * p - 3 * p + 1);
    EXPECT_EQ(r.e_boundary, 6 * p);
    EXPECT_EQ(isoperimetric(6 * p).max_interior, r.v_interior);
  }
}

TEST(Isoperimetric, BruteForceMatchesBound) {
  for (int l = 3; l <= 9; ++l) EXPECT_EQ(max_interior_bruteforce(l), isoperimetric(l).max_interior) << l;
  EXPECT_THROW(max_interior_bruteforce(11), InputError);
}

TEST(AC, FormulaTable) {
  EXPECT_NEAR(ac_formula(13, 9, 4), 1.0932, 5e-4);
  EXPECT_NEAR(ac_formula(13, 1, 16), 1.0659, 5e-4);
  EXPECT_NEAR(ac_formula(13, 1, 20), 1.0385, 5e-4);
  EXPECT_NEAR(ac_formula(13, 1, 144), 0.1913, 5e-4);
  EXPECT_NEAR(ac_formula(13, 0, 0), 2.0 / std::sqrt(3.0), 1e-12);
  EXPECT_GT(ac_formula(13, 9, 4), ac_formula(13, 1, 16));
  EXPECT_GT(ac_formula(13, 1, 16), ac_formula(13, 1, 20));
  EXPECT_THROW(ac_formula(3, 1, 9), InputError);
}

TEST(AC, EmpiricalApproachesFormula) {
  CellSpec spec{5, {ParallelogramHole{{2, 2}, 1, 1}}};
  ACResult r = asymptotic_compatibility(spec, 3);
  EXPECT_EQ(r.h, 1);
  EXPECT_EQ(r.m, 4);
  ASSERT_EQ(r.empirical.size(), 3u);
  for (std::size_t i = 0; i < r.empirical.size(); ++i) {
    EXPECT_EQ(r.empirical[i].c, r.empirical[i].predicted_c);
    if (i > 0) {
      EXPECT_GT(r.empirical[i].value, r.empirical[i - 1].value);
      EXPECT_LT(r.empirical[i].gap, r.empirical[i - 1].gap);
    }
  }
  EXPECT_LT(r.empirical[1].gap, 0.10);
}

TEST(AC, UndamagedPeriodicMatchesRhombus) {
  CellSpec spec{2, {}};
  Truss p = periodic(spec, 2);
  Truss r = rhombus(4);
  EXPECT_EQ(p.num_vertices(), r.num_vertices());
  EXPECT_EQ(p.num_edges(), r.num_edges());
}

TEST(Thinning, NorthEastLinks) {
  for (int n = 1; n <= 4; ++n) {
    ThinningResult r = ne_thinning(n, 20, 7);
    EXPECT_EQ(r.removable, n * n);
    EXPECT_TRUE(r.rigid) << n;
    EXPECT_EQ(r.c, 0) << n;
    EXPECT_TRUE(r.all_flexible) << n;
    EXPECT_GT(r.checked, 0);
  }
}
