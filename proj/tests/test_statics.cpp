#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "trusskit/btp.hpp"
#include "trusskit/errors.hpp"
#include "trusskit/lattice.hpp"
#include "trusskit/rigidity.hpp"
#include "trusskit/statics.hpp"

using namespace trusskit;
using trusskit::testing::jiggle;
using trusskit::testing::make_truss;

namespace {

Springs random_springs(const Truss& t, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  Springs s(t.num_edges());
  for (double& c : s) c = u(rng);
  return s;
}

double relative_gap(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).norm() / std::max(1e-300, a.norm());
}

}  // namespace

TEST(Stiffness, SingleEdgeAndRigidMotions) {
  Truss t = make_truss({{0, 0}, {1, 0}}, {{0, 1}});
  Eigen::MatrixXd K = stiffness(t, {1.0});
  EXPECT_EQ(numerical_rank(K), 1);
  Truss h = jiggle(hexstar(), 0.1, 3);
  Eigen::MatrixXd Kh = stiffness(h, random_springs(h, 1));
  EXPECT_LT((Kh * gauge_matrix(h).transpose()).norm(), 1e-12);
}

TEST(Stiffness, ZeroModesMatchNullity) {
  for (const Truss& t : {hexstar(), rhombus(2), make_truss({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}})}) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(stiffness(t, unit_springs(t)));
    const double top = es.eigenvalues().cwiseAbs().maxCoeff();
    int zeros = 0;
    for (double ev : es.eigenvalues()) zeros += std::abs(ev) < 1e-10 * top;
    EXPECT_EQ(zeros, analyze(t).nullity);
  }
}

TEST(Statics, SingleEdgeHooke) {
  Truss t = make_truss({{0, 0}, {1, 0}}, {{0, 1}});
  const double c = 2.5, f = 0.75;
  Eigen::VectorXd F(4);
  F << -f, 0, f, 0;
  EquilibriumSolution d = solve_displacement(t, {c}, F);
  EquilibriumSolution e = solve_elongation(t, {c}, F);
  ASSERT_EQ(d.lambda.size(), 1);
  EXPECT_DOUBLE_EQ(d.lambda(0), f / c);
  EXPECT_DOUBLE_EQ(e.lambda(0), f / c);
  EXPECT_NEAR(d.energy, 0.5 * f * f / c, 1e-15);
}

TEST(Statics, ZeroLoad) {
  Truss t = rhombus(2);
  EquilibriumSolution s = solve_displacement(t, unit_springs(t), Eigen::VectorXd::Zero(2 * t.num_vertices()));
  EXPECT_LT(s.U.norm(), 1e-14);
  EXPECT_LT(s.lambda.norm(), 1e-14);
  EXPECT_EQ(s.energy, 0.0);
}

TEST(Statics, EquilateralRadialPull) {
  const double h = std::sqrt(3.0) / 2;
  Truss t = make_truss({{0, 0}, {1, 0}, {0.5, h}}, {{0, 1}, {1, 2}, {2, 0}});
  Eigen::VectorXd F(6);
  const double cx = 0.5, cy = h / 3;
  for (int i = 0; i < 3; ++i) {
    Point p = t.vertices()[i];
    F(2 * i) = p.x - cx;
    F(2 * i + 1) = p.y - cy;
  }
  EquilibriumSolution s = solve_elongation(t, unit_springs(t), F);
  EXPECT_NEAR(s.lambda(0), s.lambda(1), 1e-12);
  EXPECT_NEAR(s.lambda(1), s.lambda(2), 1e-12);
  // Two unit links at 30 degrees to the pull give sqrt(3) lambda = |F_i|.
  EXPECT_NEAR(s.lambda(0), std::hypot(F(0), F(1)) / std::sqrt(3.0), 1e-12);
}

TEST(Statics, MethodsAgreeOnRandomRigidTrusses) {
  int tested = 0;
  for (unsigned seed = 1; tested < 30; ++seed) {
    Truss t = seed % 3 == 0 ? assemble(random_btp(seed, 2)).truss
                            : jiggle(seed % 3 == 1 ? hexstar() : rhombus(1 + seed % 3), 0.1, seed);
    if (!analyze(t).is_inf_rigid) continue;
    Springs c = random_springs(t, seed);
    Eigen::VectorXd F = random_balanced_load(t, seed);
    EquilibriumSolution d = solve_displacement(t, c, F), e = solve_elongation(t, c, F);
    EXPECT_LT(relative_gap(d.lambda, e.lambda), 1e-8) << seed;
    EXPECT_LT(d.compat_residual, 1e-8 * d.lambda.norm());
    EXPECT_LT(e.force_residual, 1e-8 * F.norm());
    EXPECT_LT(relative_gap(d.U, e.U), 1e-7) << seed;
    ++tested;
  }
}

TEST(Statics, EnergyIsStationary) {
  Truss t = jiggle(rhombus(2), 0.1, 9);
  Springs c = random_springs(t, 9);
  Eigen::VectorXd F = random_balanced_load(t, 9);
  EquilibriumSolution s = solve_displacement(t, c, F);
  Eigen::MatrixXd K = stiffness(t, c);
  auto potential = [&](const Eigen::VectorXd& U) { return 0.5 * U.dot(K * U) - F.dot(U); };
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int k = 0; k < 20; ++k) {
    Eigen::VectorXd V(F.size());
    for (Eigen::Index i = 0; i < V.size(); ++i) V(i) = g(rng);
    EXPECT_GE(potential(s.U + 1e-3 * V), potential(s.U) - 1e-14);
    // First-order term vanishes.
    EXPECT_LT(std::abs(V.dot(K * s.U - F)), 1e-8 * V.norm() * F.norm());
  }
}

TEST(Statics, InvariantUnderRigidMotion) {
  Truss t = jiggle(rhombus(2), 0.1, 4);
  Springs c = random_springs(t, 4);
  Eigen::VectorXd F = random_balanced_load(t, 4);
  const double th = 0.7, tx = 3.0, ty = -1.5;
  std::vector<Point> p = t.vertices();
  Eigen::VectorXd Fr(F.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    Point q = p[i];
    p[i] = {std::cos(th) * q.x - std::sin(th) * q.y + tx, std::sin(th) * q.x + std::cos(th) * q.y + ty};
    Fr(2 * i) = std::cos(th) * F(2 * i) - std::sin(th) * F(2 * i + 1);
    Fr(2 * i + 1) = std::sin(th) * F(2 * i) + std::cos(th) * F(2 * i + 1);
  }
  EquilibriumSolution a = solve_displacement(t, c, F), b = solve_displacement(t.with_positions(p), c, Fr);
  EXPECT_LT(relative_gap(a.lambda, b.lambda), 1e-9);
}

TEST(Statics, Errors) {
  Truss t = rhombus(1);
  Eigen::VectorXd F = Eigen::VectorXd::Zero(2 * t.num_vertices());
  F(0) = 1.0;
  EXPECT_THROW(solve_displacement(t, unit_springs(t), F), InputError);
  EXPECT_THROW(solve_elongation(t, unit_springs(t), F), InputError);
  Springs bad = unit_springs(t);
  bad[2] = 0.0;
  EXPECT_THROW(solve_displacement(t, bad, Eigen::VectorXd::Zero(F.size())), InputError);
  // A square shears under opposite horizontal pulls on its top and bottom.
  Truss sq = make_truss({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  Eigen::VectorXd S(8);
  S << -1, 0, -1, 0, 1, 0, 1, 0;
  S -= gauge_matrix(sq).transpose() * (gauge_matrix(sq) * gauge_matrix(sq).transpose()).ldlt().solve(gauge_matrix(sq) * S);
  EXPECT_THROW(solve_displacement(sq, unit_springs(sq), S), InfeasibleError);
  EXPECT_THROW(solve_elongation(sq, unit_springs(sq), S), InfeasibleError);
}
