#pragma once

#include <array>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "trusskit/truss.hpp"

namespace trusskit {

using LatticeTriangle = std::array<Lattice, 3>;

// Removed hexagons around the given centers.
struct HexagonHole {
  std::vector<Lattice> centers;
};
// p x q parallelogram of lattice cells spanned by e1 and e2 from corner.
// A 1 x 1 parallelogram removes a single link.
struct ParallelogramHole {
  Lattice corner;
  int p = 1;
  int q = 1;
};
// The two triangles on either side of each listed link.
struct EdgeHole {
  std::vector<std::pair<Lattice, Lattice>> edges;
};
using Hole = std::variant<HexagonHole, ParallelogramHole, EdgeHole>;

struct CellSpec {
  int k = 1;
  std::vector<Hole> holes;
};

// Unit directions d0..d5 counter-clockwise from e1.
const std::array<Lattice, 6>& lattice_directions();

std::vector<LatticeTriangle> hexagon_triangles(Lattice center);
std::vector<LatticeTriangle> hole_triangles(const Hole& hole);
// Lattice points of the closed hole region (the m of the asymptotic formula).
std::vector<Lattice> hole_vertices(const Hole& hole);

// Canonical truss from lattice triangles: vertices ordered by (b, a), edges by
// endpoint ids, faces counter-clockwise. Duplicate triangles merge.
Truss from_lattice_triangles(const std::vector<LatticeTriangle>& triangles);

Truss hexagon_union(const std::vector<Lattice>& centers);
// Hexagon of six triangles centred at the origin: v = 7, e = 12, f = 6.
Truss hexstar();
// Union of hexagons centred at k e1 + l e2, 1 <= k, l <= n.
Truss rhombus(int n);
// rhombus(k) with holes. Each hole must lie among the interior vertices of the
// cell, and holes may not touch. Throws InputError otherwise.
Truss cell(const CellSpec& spec);
// n x n copies of the cell shifted by multiples of k e1 and k e2, merged at
// coincident lattice points.
Truss periodic(const CellSpec& spec, int n);

struct PatchSpec {
  enum class Shape { Hexstar, Rhombus, Cell, Periodic };
  Shape shape = Shape::Hexstar;
  int n = 1;  // rhombus size or periodic copies
  CellSpec cell;
};
Truss gen_patch(const PatchSpec& spec);

// Hole list text: items separated by ';', each one of
//   para(a,b,p,q)  hex(a,b[,a,b...])  edge(a1,b1,a2,b2[,...])
std::vector<Hole> parse_holes(const std::string& text);
std::string format_holes(const std::vector<Hole>& holes);

}  // namespace trusskit
