#pragma once

#include <array>
#include <vector>

#include "trusskit/truss.hpp"

namespace trusskit {

// Triangles glued along active edges.
struct Complex {
  std::vector<Face> faces;                    // counter-clockwise when positions allow
  std::vector<std::array<int, 3>> face_edges;  // edge id of side (f[k], f[k+1])
  std::vector<std::vector<int>> edge_faces;    // by edge id
  std::vector<std::vector<int>> vertex_faces;
  std::vector<char> interior;  // link is one closed cycle
  std::vector<char> pinched;   // link has more than one component
};

// Explicit faces whose three sides are active, or faces inferred from the
// planar embedding when the truss carries none.
std::vector<Face> active_faces(const Truss& truss);
// Throws InputError on crossing or overlapping edges.
std::vector<Face> infer_faces(const Truss& truss);
// Throws InputError on an edge shared by more than two faces.
Complex build_complex(const Truss& truss, const std::vector<Face>& faces);
inline Complex build_complex(const Truss& truss) { return build_complex(truss, active_faces(truss)); }

struct TopologyReport {
  int v = 0;
  int e = 0;  // active edges
  int f = 0;
  int v_interior = 0;
  int v_boundary = 0;
  int e_interior = 0;
  int e_boundary = 0;
  int e_dangling = 0;  // active edges in no face
  int chi = 0;
  int genus = 0;  // number of holes
  int boundary_loops = 0;
  std::vector<int> interior_vertices;
  std::vector<std::vector<int>> loops;  // boundary vertex cycles, face on the left
};

// Throws InputError on non-manifold edges and pinched vertices.
TopologyReport topology_report(const Truss& truss);
TopologyReport topology_report(const Truss& truss, const Complex& cx);

struct Star {
  int center = -1;
  std::vector<int> ring;    // neighbours in cyclic order
  std::vector<int> spokes;  // edge center-ring[i]
  std::vector<int> rim;     // edge ring[i]-ring[i+1]
};

// Throws InputError when v is not an interior vertex.
Star star_of(const Truss& truss, const Complex& cx, int v);
Star star_of(const Truss& truss, int v);

}  // namespace trusskit

namespace trusskit {

struct SubTruss {
  Truss truss;
  std::vector<int> vertex_map;  // new id -> old id
  std::vector<int> edge_map;    // new id -> old id
};

// Truss made of the given faces, their sides and corners, renumbered in
// ascending old-id order. Edge attributes and lattice coordinates carry over.
SubTruss face_subtruss(const Truss& truss, const std::vector<Face>& faces);

}  // namespace trusskit
