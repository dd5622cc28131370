#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "trusskit/lattice.hpp"
#include "trusskit/truss.hpp"

namespace trusskit {

struct DamageReport {
  std::vector<int> removed;       // edge ids, ascending
  std::vector<int> survivor_ids;  // active edges left, ascending
  bool recoverable = false;       // survivors infinitesimally rigid
  int original_c = 0;
  int reduced_c = 0;
  int flexes = 0;  // nullity - 3 of the survivors
  std::optional<Eigen::VectorXd> reconstructed;  // lambda on removed edges
  double residual = 0.0;                         // |A' U - lambda'|
};

// lambda_survivors, when given, holds elongations of the surviving edges in
// ascending id. Reconstruction needs a recoverable truss and compatible data;
// otherwise InfeasibleError.
DamageReport assess_damage(const Truss& truss, const std::vector<int>& removed,
                           const std::optional<Eigen::VectorXd>& lambda_survivors = std::nullopt);

struct HoleLoss {
  int c_filled = 0;
  int c_holed = 0;
  int loss = 0;  // c_filled - c_holed, by rank
  int v1 = 0;    // vertices strictly inside the hole
  int l1 = 0;    // links on the hole curve
  int formula_loss = 0;  // v1 + l1 - 3
  bool collared = false;
  std::vector<double> turning_deg;  // along the hole curve, hole on the left
  Truss holed;
};

// Removes the given faces (indices into the truss's active faces). The hole
// must be a disk bounded by one simple curve away from the outer boundary;
// otherwise InputError.
HoleLoss hole_loss(const Truss& filled, const std::vector<int>& hole_faces);
// Lattice form: the faces of a hole descriptor.
HoleLoss hole_loss(const Truss& filled, const Hole& hole);

struct Isoperimetric {
  int length = 0;
  int max_interior = 0;  // floor(l^2/12 - l/2 + 1)
  int loss_lower = 0;    // l - 3
  int loss_upper = 0;    // floor(l^2/12 + l/2 - 2)
  double loss_upper_real = 0.0;
};

// Throws InputError for l < 3.
Isoperimetric isoperimetric(int l);

// Largest number of lattice points strictly inside a simple closed lattice
// curve of length l. Exhaustive; l limited to 3..10.
int max_interior_bruteforce(int l);

// (k^2 - h (m - 3)) / ((sqrt(3)/2) k^2). Throws InputError unless k^2 > h m.
double ac_formula(int k, int h, int m);

struct ACSample {
  int n = 0;
  int c = 0;
  int predicted_c = 0;  // n^2 (k^2 - h m + 3 h)
  double area = 0.0;    // nk (nk + 1) sqrt(3)/2
  double value = 0.0;   // c / area
  double gap = 0.0;     // |value - formula| / formula
};

struct ACResult {
  int k = 0;
  int h = 0;
  int m = 0;
  double formula = 0.0;
  std::vector<ACSample> empirical;
};

// Formula from the cell's hole geometry, plus rank-based samples for
// n = 1..max_n periodic copies.
ACResult asymptotic_compatibility(const CellSpec& cell, int max_n = 0);

struct ThinningResult {
  Truss truss;
  std::vector<int> removed;  // north-east spoke of every hexagon
  int removable = 0;
  bool rigid = false;
  int c = -1;
  int checked = 0;  // further single-link removals tested
  bool all_flexible = false;  // each of them gave nullity >= 4
};

// Exhaustive further-removal check for n <= 2, otherwise a seeded sample.
ThinningResult ne_thinning(int n, int samples = 20, unsigned seed = 1);

}  // namespace trusskit
