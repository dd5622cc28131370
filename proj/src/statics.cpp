#include "trusskit/statics.hpp"

#include <cmath>
#include <random>
#include <string>

#include "trusskit/errors.hpp"
#include "trusskit/rigidity.hpp"

namespace trusskit {

namespace {

constexpr double kSolveTol = 1e-9;

Eigen::VectorXd spring_diagonal(const Truss& t, const Springs& s, const std::vector<int>& ids) {
  if (static_cast<int>(s.size()) != t.num_edges())
    throw InputError("expected " + std::to_string(t.num_edges()) + " spring constants, got " +
                     std::to_string(s.size()));
  Eigen::VectorXd c(ids.size());
  for (std::size_t r = 0; r < ids.size(); ++r) {
    const double k = s[ids[r]];
    if (!(k > 0.0) || !std::isfinite(k))
      throw InputError("spring constant of edge " + std::to_string(ids[r]) + " must be positive");
    c(r) = k;
  }
  return c;
}

double coordinate_scale(const Truss& t) {
  double s = 1.0;
  for (const Point& p : t.vertices()) s = std::max({s, std::abs(p.x), std::abs(p.y)});
  return s;
}

void check_load(const Truss& t, const Eigen::VectorXd& F) {
  if (F.size() != 2 * t.num_vertices())
    throw InputError("load vector must have " + std::to_string(2 * t.num_vertices()) + " entries");
  if (!F.allFinite()) throw InputError("load vector has non-finite entries");
  const Eigen::Vector3d net = net_load(t, F);
  const double tol = 1e-9 * std::max(1.0, F.norm()) * coordinate_scale(t) * std::sqrt(double(t.num_vertices()));
  if (net.head<2>().norm() > tol || std::abs(net(2)) > tol)
    throw InputError("load is unbalanced: net force/torque nonzero");
}

void finish(const Truss& t, const Eigen::MatrixXd& A, const Eigen::VectorXd& c, const Eigen::VectorXd& F,
            EquilibriumSolution& s) {
  s.energy = 0.5 * s.lambda.dot(c.asDiagonal() * s.lambda);
  s.force_residual = (A.transpose() * (c.asDiagonal() * s.lambda) - F).norm();
  CompatibilityBasis B = compatibility_basis(t);
  s.compat_residual = B.B.rows() ? (B.B * s.lambda).norm() : 0.0;
}

void require_balanced_solution(const EquilibriumSolution& s, const Eigen::VectorXd& F) {
  if (s.force_residual > 1e-8 * std::max(1.0, F.norm()))
    throw InfeasibleError("load excites a flex mode; no equilibrium exists");
}

}  // namespace

Springs unit_springs(const Truss& truss) { return Springs(truss.num_edges(), 1.0); }

Eigen::MatrixXd stiffness(const Truss& truss, const Springs& springs) {
  RigidityMatrix R = assemble_rigidity(truss);
  Eigen::VectorXd c = spring_diagonal(truss, springs, R.edge_ids);
  return R.A.transpose() * c.asDiagonal() * R.A;
}

Eigen::Vector3d net_load(const Truss& truss, const Eigen::VectorXd& F) { return gauge_matrix(truss) * F; }

Eigen::VectorXd random_balanced_load(const Truss& truss, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::VectorXd F(2 * truss.num_vertices());
  for (Eigen::Index i = 0; i < F.size(); ++i) F(i) = g(rng);
  const Eigen::MatrixXd G = gauge_matrix(truss);
  return F - G.transpose() * (G * G.transpose()).ldlt().solve(G * F);
}

EquilibriumSolution solve_displacement(const Truss& truss, const Springs& springs, const Eigen::VectorXd& F) {
  check_load(truss, F);
  RigidityMatrix R = assemble_rigidity(truss);
  Eigen::VectorXd c = spring_diagonal(truss, springs, R.edge_ids);
  const Eigen::MatrixXd K = R.A.transpose() * c.asDiagonal() * R.A;
  const Eigen::MatrixXd G = gauge_matrix(truss);
  const Eigen::Index n = K.rows();
  Eigen::MatrixXd M(n + 3, n);
  M << K, G;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 3);
  rhs.head(n) = F;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(M);
  cod.setThreshold(kSolveTol);
  EquilibriumSolution s;
  s.U = cod.solve(rhs);
  s.lambda = R.A * s.U;
  s.edge_ids = R.edge_ids;
  finish(truss, R.A, c, F, s);
  require_balanced_solution(s, F);
  return s;
}

EquilibriumSolution solve_elongation(const Truss& truss, const Springs& springs, const Eigen::VectorXd& F) {
  check_load(truss, F);
  RigidityMatrix R = assemble_rigidity(truss);
  Eigen::VectorXd c = spring_diagonal(truss, springs, R.edge_ids);
  CompatibilityBasis B = compatibility_basis(truss);
  const Eigen::Index n = R.A.cols(), e = R.A.rows(), k = B.B.rows();
  Eigen::MatrixXd M(n + k, e);
  M.topRows(n) = R.A.transpose() * c.asDiagonal();
  if (k) M.bottomRows(k) = B.B;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + k);
  rhs.head(n) = F;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(M);
  cod.setThreshold(kSolveTol);
  EquilibriumSolution s;
  s.lambda = cod.solve(rhs);
  s.edge_ids = R.edge_ids;
  finish(truss, R.A, c, F, s);
  require_balanced_solution(s, F);
  // Displacements that realize lambda, gauge-fixed.
  Eigen::MatrixXd At(e + 3, n);
  At << R.A, gauge_matrix(truss);
  Eigen::VectorXd rl = Eigen::VectorXd::Zero(e + 3);
  rl.head(e) = s.lambda;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cu(At);
  cu.setThreshold(kSolveTol);
  s.U = cu.solve(rl);
  return s;
}

}  // namespace trusskit
