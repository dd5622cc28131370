#pragma once

#include <vector>

#include "trusskit/topology.hpp"
#include "trusskit/truss.hpp"

namespace trusskit {

inline constexpr double kDevelopTol = 1e-8;

// Prescribed length per edge id: the stored length, else the geometric one.
std::vector<double> edge_lengths(const Truss& truss);

struct CurvatureAtoms {
  std::vector<int> vertices;  // interior vertices
  std::vector<double> K;      // 2 pi minus the angle sum
};

// Angles come from lengths alone. Throws InfeasibleError on a triangle that
// violates the strict triangle inequality, naming the face.
CurvatureAtoms curvature_atoms(const Truss& truss, const std::vector<double>& lengths);
CurvatureAtoms curvature_atoms(const Truss& truss, const Complex& cx, const std::vector<double>& lengths);

// Face indices into cx.faces such that each face after the first shares one
// edge (third vertex new) or two edges with the union of its predecessors.
// Throws InputError when the complex is not a disk.
std::vector<int> peel_order(const Truss& truss, const Complex& cx);

struct Seed {
  int edge = -1;      // placed from the origin along +x; -1 picks the lowest face edge
  bool flip = false;  // mirror the result across the x axis
};

struct Development {
  std::vector<Point> positions;  // by vertex id; vertices in no face stay at the origin
  std::vector<int> order;
  double max_length_error = 0.0;
  double diameter = 0.0;
};

// Throws InfeasibleError when a curvature atom exceeds tol or placements from
// two shared edges disagree by more than tol * diameter.
Development develop(const Truss& truss, const std::vector<double>& lengths, Seed seed = {},
                    double tol = kDevelopTol);

// Sum over boundary vertices of (pi - angle sum). Throws InputError unless
// there is exactly one boundary loop.
double turning_angle_sum(const Truss& truss, const std::vector<double>& lengths);

// Squared spoke lengths p and squared rim lengths q of a 3-star.
struct ThreeStar {
  double p1 = 0, p2 = 0, p3 = 0;
  double q12 = 0, q23 = 0, q31 = 0;
};

// Zero when the three corner angles at the center close up in the plane.
double three_star_poly(const ThreeStar& s);

}  // namespace trusskit
