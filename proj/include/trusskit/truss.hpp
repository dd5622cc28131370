#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace trusskit {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Triangular lattice point a*e1 + b*e2, e1 = (1,0), e2 = (1/2, sqrt(3)/2).
struct Lattice {
  int a = 0;
  int b = 0;
  friend bool operator==(const Lattice&, const Lattice&) = default;
  friend auto operator<=>(const Lattice& p, const Lattice& q) {
    if (p.b != q.b) return p.b <=> q.b;
    return p.a <=> q.a;
  }
};

Point to_point(Lattice p);

struct Edge {
  int a = 0;
  int b = 0;
  std::optional<double> length;  // prescribed length, used by the nonlinear problem
  bool removed = false;
  bool doubled = false;  // allows a second link between the same pair (bigons)
};

using Face = std::array<int, 3>;

struct TrussFlags {
  bool allow_coincident = false;  // pinned assemblies may stack vertices
};

class Truss {
 public:
  Truss() = default;
  // Validates indices, self loops, duplicate pairs, face edges and
  // connectivity of the full edge graph. Throws InputError.
  Truss(std::vector<Point> vertices, std::vector<Edge> edges, std::vector<Face> faces = {},
        TrussFlags flags = {});

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Face>& faces() const { return faces_; }
  const TrussFlags& flags() const { return flags_; }
  const std::vector<Lattice>& lattice() const { return lattice_; }
  bool is_lattice() const { return !lattice_.empty(); }

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_active_edges() const;
  std::vector<int> active_edges() const;

  // Euclidean length from positions.
  double geometric_length(int e) const;
  // Prescribed length when present, else geometric.
  double length(int e) const;
  // First edge joining u and v (any state), or -1.
  int find_edge(int u, int v) const;
  // First active edge joining u and v, or -1.
  int find_active_edge(int u, int v) const;

  bool active_connected() const;

  Truss with_removed(const std::vector<int>& ids, bool removed = true) const;
  Truss with_positions(std::vector<Point> positions) const;
  Truss with_lengths(const std::vector<double>& lengths) const;
  Truss with_lattice(std::vector<Lattice> lattice) const;

 private:
  static std::uint64_t key(int u, int v);

  std::vector<Point> vertices_;
  std::vector<Edge> edges_;
  std::vector<Face> faces_;
  TrussFlags flags_;
  std::vector<Lattice> lattice_;
  std::unordered_map<std::uint64_t, std::vector<int>> pair_index_;
};

}  // namespace trusskit

namespace trusskit {

struct RemovalResult {
  Truss truss;
  bool disconnected = false;
};

// Soft-removes edges. Unknown ids throw InputError.
RemovalResult remove_edges(const Truss& truss, const std::vector<int>& ids);

}  // namespace trusskit
