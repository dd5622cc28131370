#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "trusskit/topology.hpp"
#include "trusskit/truss.hpp"

namespace trusskit {

// Wagon wheel condition at an interior vertex V0 with ring V1..Vn.
// On L: rim edge (i,i+1) gets 1/h_i, spoke i gets -(cos b_i / h_i + cos g_i / h_{i-1}),
// b_i = angle V0 Vi Vi+1, g_i = angle V0 Vi Vi-1, h_i = distance of V0 from line Vi Vi+1.
struct WagonRow {
  int center = -1;
  std::vector<int> edge_ids;  // spokes in ring order, then rim edges
  std::vector<double> coeff_L;
  std::vector<double> coeff_lambda;  // coeff_L / edge length
  bool regular = false;              // regular hexagon star
  double unit_scale = 1.0;           // coeff_L * unit_scale is +-1 when regular
};

// Throws InputError for non-interior vertices, InfeasibleError for a
// degenerate sector.
WagonRow wagon_row(const Truss& truss, const Complex& cx, int v);
WagonRow wagon_row(const Truss& truss, int v);

struct WagonCheck {
  std::vector<int> centers;  // interior vertices
  Eigen::MatrixXd rows;      // lambda form over active edges
  std::vector<int> edge_ids;
  int rank = 0;
  int c = 0;
  bool spans_leftnull = false;
  double annihilation_residual = 0.0;  // max |row . A| over rows
};

WagonCheck wagon_basis_check(const Truss& truss);

enum class EdgeClass {
  None,
  Boundary,
  UniqueIncoming,
  Isthmus,
  ExtremeIncoming,
  Spine,
  MiddleIncoming,
  Parallel,
  Interior,  // all four surrounding vertices in the region: coefficient 0
};

std::string to_string(EdgeClass c);

struct CurveSum {
  std::vector<int> region;
  std::vector<int> edge_ids;  // active edges
  Eigen::VectorXd sigma;      // sum of wagon rows on L
  Eigen::VectorXd closed_form;
  std::vector<EdgeClass> classes;
};

// Region: interior vertices whose wagon rows are summed. Throws InputError on
// empty regions or non-interior members.
CurveSum curve_sum(const Truss& truss, const std::vector<int>& region);

struct SignWitness {
  double sigma_value = 0.0;
  bool hypotheses_hold = false;  // L = 0 on boundary class, L > 0 on the rest of the support
  bool incompatible = false;
  std::string verdict;  // "incompatible" or "undetermined"
};

SignWitness sign_witness(const Truss& truss, const std::vector<int>& region,
                              const Eigen::VectorXd& L, double tol = 1e-9);

}  // namespace trusskit
