#pragma once

#include <Eigen/Dense>
#include <vector>

#include "trusskit/truss.hpp"

namespace trusskit {

inline constexpr double kDefaultRankTol = 1e-9;

// Rows are the active edges in ascending id; row (i,j) holds V_i - V_j in the
// slot of i and V_j - V_i in the slot of j, so A U is the elongation vector
// lambda with lambda_ij = l_ij L_ij.
struct RigidityMatrix {
  Eigen::MatrixXd A;
  std::vector<int> edge_ids;
};

// Throws InputError on zero-length edges unless coincident vertices are allowed.
RigidityMatrix assemble_rigidity(const Truss& truss);

// 3 x 2v rows [1,0,...], [0,1,...], [-y_i, x_i, ...] spanning the rigid motions.
Eigen::MatrixXd gauge_matrix(const Truss& truss);

struct AnalysisReport {
  int v = 0;
  int e = 0;
  int rank = 0;
  int nullity = 0;  // 2v - rank
  int c = 0;        // e - rank
  int maxwell = 0;  // e - 2v + 3
  bool is_inf_rigid = false;
  bool is_generic = false;
  Eigen::MatrixXd flex_basis;  // 2v x (nullity - 3), orthonormal, orthogonal to rigid motions
  double tolerance = kDefaultRankTol;
  double sigma_max = 0.0;
  double sigma_last_kept = 0.0;     // smallest singular value counted in the rank
  double sigma_first_dropped = 0.0; // largest singular value below the threshold
};

AnalysisReport analyze(const Truss& truss, double tol = kDefaultRankTol);

enum class CompatMethod { LeftNull, Projector };

struct CompatibilityBasis {
  Eigen::MatrixXd B;  // c x e over active edges, B A = 0
  std::vector<int> edge_ids;
  CompatMethod method = CompatMethod::LeftNull;
};

// LeftNull: orthonormal rows from the SVD. Projector: rows of
// I - At (At^T At)^-1 At^T restricted to the first e columns, At = [A; G];
// throws InfeasibleError when At is singular (flexible truss).
CompatibilityBasis compatibility_basis(const Truss& truss, CompatMethod method = CompatMethod::LeftNull,
                                       double tol = kDefaultRankTol);

struct ElongationSolution {
  Eigen::VectorXd U;   // 2v displacements
  double residual = 0; // |A U - lambda|, the distance of lambda to range(A)
  bool compatible = false;
};

// Gauge-augmented least squares [A; G] U = [lambda; gauge]. Throws
// InfeasibleError on a flexible truss.
ElongationSolution solve_prescribed_elongations(const Truss& truss, const Eigen::VectorXd& lambda,
                                                const Eigen::Vector3d& gauge = Eigen::Vector3d::Zero(),
                                                double tol = kDefaultRankTol);

// lambda_ij = l_ij L_ij over active edges, l from positions.
Eigen::VectorXd elongations_from_rates(const Truss& truss, const Eigen::VectorXd& L);
Eigen::VectorXd rates_from_elongations(const Truss& truss, const Eigen::VectorXd& lambda);

// Numerical rank of M with threshold tol * sigma_max * max(rows, cols).
int numerical_rank(const Eigen::MatrixXd& M, double tol = kDefaultRankTol);

}  // namespace trusskit
