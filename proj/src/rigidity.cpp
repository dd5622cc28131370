#include "trusskit/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trusskit/errors.hpp"

namespace trusskit {

namespace {

double coordinate_scale(const Truss& t) {
  double s = 0.0;
  for (const Point& p : t.vertices()) s = std::max({s, std::abs(p.x), std::abs(p.y)});
  return std::max(s, 1.0);
}

int rank_from(const Eigen::VectorXd& sv, double tol, Eigen::Index rows, Eigen::Index cols) {
  if (sv.size() == 0) return 0;
  const double thr = tol * sv(0) * static_cast<double>(std::max(rows, cols));
  int r = 0;
  while (r < sv.size() && sv(r) > thr) ++r;
  return r;
}

}  // namespace

RigidityMatrix assemble_rigidity(const Truss& t) {
  RigidityMatrix out;
  out.edge_ids = t.active_edges();
  const int v = t.num_vertices();
  out.A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(out.edge_ids.size()), 2 * v);
  const double tiny = 1e-12 * coordinate_scale(t);
  const auto& P = t.vertices();
  for (std::size_t r = 0; r < out.edge_ids.size(); ++r) {
    const Edge& e = t.edges()[out.edge_ids[r]];
    const double dx = P[e.a].x - P[e.b].x, dy = P[e.a].y - P[e.b].y;
    if (std::hypot(dx, dy) <= tiny && !t.flags().allow_coincident)
      throw InputError("edge " + std::to_string(out.edge_ids[r]) + " has coincident endpoints");
    out.A(r, 2 * e.a) = dx;
    out.A(r, 2 * e.a + 1) = dy;
    out.A(r, 2 * e.b) = -dx;
    out.A(r, 2 * e.b + 1) = -dy;
  }
  return out;
}

Eigen::MatrixXd gauge_matrix(const Truss& t) {
  const int v = t.num_vertices();
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(3, 2 * v);
  for (int i = 0; i < v; ++i) {
    G(0, 2 * i) = 1.0;
    G(1, 2 * i + 1) = 1.0;
    G(2, 2 * i) = -t.vertices()[i].y;
    G(2, 2 * i + 1) = t.vertices()[i].x;
  }
  return G;
}

int numerical_rank(const Eigen::MatrixXd& M, double tol) {
  if (M.size() == 0) return 0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(M);
  return rank_from(svd.singularValues(), tol, M.rows(), M.cols());
}

AnalysisReport analyze(const Truss& t, double tol) {
  RigidityMatrix rm = assemble_rigidity(t);
  AnalysisReport r;
  r.v = t.num_vertices();
  r.e = static_cast<int>(rm.edge_ids.size());
  r.tolerance = tol;
  const int n2 = 2 * r.v;
  Eigen::MatrixXd V;
  if (r.e > 0) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(rm.A, Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    r.rank = rank_from(sv, tol, rm.A.rows(), rm.A.cols());
    r.sigma_max = sv.size() ? sv(0) : 0.0;
    r.sigma_last_kept = r.rank > 0 ? sv(r.rank - 1) : 0.0;
    r.sigma_first_dropped = r.rank < sv.size() ? sv(r.rank) : 0.0;
    V = svd.matrixV();
  } else {
    V = Eigen::MatrixXd::Identity(n2, n2);
  }
  r.nullity = n2 - r.rank;
  r.c = r.e - r.rank;
  r.maxwell = r.e - n2 + 3;
  r.is_inf_rigid = r.nullity == 3;
  r.is_generic = r.c == r.maxwell;
  // Flexes: null space with the rigid motions projected out.
  Eigen::MatrixXd N = V.rightCols(r.nullity);
  Eigen::MatrixXd R = gauge_matrix(t).transpose();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(R);
  const int rr = static_cast<int>(qr.rank());
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n2, rr);
  Eigen::MatrixXd Np = N - Q * (Q.transpose() * N);
  const int nflex = std::max(0, r.nullity - rr);
  if (nflex > 0) {
    Eigen::BDCSVD<Eigen::MatrixXd> s2(Np, Eigen::ComputeThinU);
    r.flex_basis = s2.matrixU().leftCols(nflex);
  } else {
    r.flex_basis = Eigen::MatrixXd(n2, 0);
  }
  return r;
}

CompatibilityBasis compatibility_basis(const Truss& t, CompatMethod method, double tol) {
  RigidityMatrix rm = assemble_rigidity(t);
  CompatibilityBasis out;
  out.edge_ids = rm.edge_ids;
  out.method = method;
  const Eigen::Index e = rm.A.rows();
  if (e == 0) {
    out.B = Eigen::MatrixXd(0, 0);
    return out;
  }
  if (method == CompatMethod::LeftNull) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(rm.A, Eigen::ComputeFullU);
    const int rank = rank_from(svd.singularValues(), tol, rm.A.rows(), rm.A.cols());
    out.B = svd.matrixU().rightCols(e - rank).transpose();
    return out;
  }
  Eigen::MatrixXd At(e + 3, rm.A.cols());
  At << rm.A, gauge_matrix(t);
  const int rank = numerical_rank(At, tol);
  if (rank < At.cols()) throw InfeasibleError("augmented matrix singular: the truss is flexible");
  Eigen::MatrixXd M = At.transpose() * At;
  Eigen::MatrixXd X = M.llt().solve(At.transpose());
  Eigen::MatrixXd Bt = Eigen::MatrixXd::Identity(e + 3, e + 3) - At * X;
  Eigen::MatrixXd cols = Bt.leftCols(e);
  // Independent rows by column-pivoted QR of the transpose.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(cols.transpose());
  qr.setThreshold(tol * static_cast<double>(std::max(cols.rows(), cols.cols())));
  const Eigen::Index c = std::min<Eigen::Index>(qr.rank(), e + 3 - rank);
  std::vector<Eigen::Index> rows;
  for (Eigen::Index k = 0; k < c; ++k) rows.push_back(qr.colsPermutation().indices()(k));
  std::sort(rows.begin(), rows.end());
  out.B.resize(static_cast<Eigen::Index>(rows.size()), e);
  for (std::size_t k = 0; k < rows.size(); ++k) out.B.row(k) = cols.row(rows[k]);
  return out;
}

ElongationSolution solve_prescribed_elongations(const Truss& t, const Eigen::VectorXd& lambda,
                                                const Eigen::Vector3d& gauge, double tol) {
  RigidityMatrix rm = assemble_rigidity(t);
  const Eigen::Index e = rm.A.rows();
  if (lambda.size() != e)
    throw InputError("elongation vector has " + std::to_string(lambda.size()) +
                     " entries for " + std::to_string(e) + " active edges");
  Eigen::MatrixXd At(e + 3, rm.A.cols());
  At << rm.A, gauge_matrix(t);
  Eigen::VectorXd rhs(e + 3);
  rhs << lambda, gauge;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(At);
  qr.setThreshold(tol * static_cast<double>(std::max(At.rows(), At.cols())));
  if (qr.rank() < At.cols()) throw InfeasibleError("truss is flexible: elongations do not fix displacements");
  ElongationSolution s;
  s.U = qr.solve(rhs);
  s.residual = (rm.A * s.U - lambda).norm();
  s.compatible = s.residual <= tol * std::max(1.0, lambda.norm());
  return s;
}

Eigen::VectorXd elongations_from_rates(const Truss& t, const Eigen::VectorXd& L) {
  std::vector<int> ids = t.active_edges();
  if (L.size() != static_cast<Eigen::Index>(ids.size())) throw InputError("rate vector size mismatch");
  Eigen::VectorXd lam(L.size());
  for (std::size_t k = 0; k < ids.size(); ++k) lam(k) = t.geometric_length(ids[k]) * L(k);
  return lam;
}

Eigen::VectorXd rates_from_elongations(const Truss& t, const Eigen::VectorXd& lambda) {
  std::vector<int> ids = t.active_edges();
  if (lambda.size() != static_cast<Eigen::Index>(ids.size()))
    throw InputError("elongation vector size mismatch");
  Eigen::VectorXd L(lambda.size());
  for (std::size_t k = 0; k < ids.size(); ++k) L(k) = lambda(k) / t.geometric_length(ids[k]);
  return L;
}

}  // namespace trusskit
