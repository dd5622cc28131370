#pragma once

#include <Eigen/Dense>
#include <vector>


#include "trusskit/truss.hpp"

namespace trusskit {

// Per-edge spring constants indexed by edge id; removed edges are ignored.
using Springs = std::vector<double>;

Springs unit_springs(const Truss& truss);

struct EquilibriumSolution {
  Eigen::VectorXd U;       // 2v displacements, orthogonal to the rigid motions
  Eigen::VectorXd lambda;  // active edges in ascending id
  std::vector<int> edge_ids;
  double energy = 0.0;     // 1/2 lambda^T C lambda
  double force_residual = 0.0;   // |A^T C lambda - F|
  double compat_residual = 0.0;  // |B lambda|
};

// K = A^T C A over the active edges.
Eigen::MatrixXd stiffness(const Truss& truss, const Springs& springs);

// Net force and torque of F about the origin.
Eigen::Vector3d net_load(const Truss& truss, const Eigen::VectorXd& F);

// Random load projected onto the balanced subspace.
Eigen::VectorXd random_balanced_load(const Truss& truss, unsigned seed);

// Solves K U = F with the gauge rows appended in a least-squares sense.
// Unbalanced loads throw InputError; loads that excite a flex throw InfeasibleError.
EquilibriumSolution solve_displacement(const Truss& truss, const Springs& springs, const Eigen::VectorXd& F);

// Solves the stacked system [A^T C; B] lambda = [F; 0] directly in lambda.
EquilibriumSolution solve_elongation(const Truss& truss, const Springs& springs, const Eigen::VectorXd& F);

}  // namespace trusskit
