#include "trusskit/truss.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "trusskit/errors.hpp"

namespace trusskit {

Point to_point(Lattice p) {
  return {p.a + 0.5 * p.b, 0.5 * std::sqrt(3.0) * p.b};
}

std::uint64_t Truss::key(int u, int v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

Truss::Truss(std::vector<Point> vertices, std::vector<Edge> edges, std::vector<Face> faces,
             TrussFlags flags)
    : vertices_(std::move(vertices)),
      edges_(std::move(edges)),
      faces_(std::move(faces)),
      flags_(flags) {
  const int n = num_vertices();
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(vertices_[i].x) || !std::isfinite(vertices_[i].y))
      throw InputError("vertex " + std::to_string(i) + " has non-finite coordinates");
  }
  for (int id = 0; id < num_edges(); ++id) {
    const Edge& e = edges_[id];
    if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n)
      throw InputError("edge " + std::to_string(id) + " references missing vertex " +
                       std::to_string(e.a < 0 || e.a >= n ? e.a : e.b));
    if (e.a == e.b) throw InputError("edge " + std::to_string(id) + " is a self loop");
    if (e.length && !(*e.length > 0.0 && std::isfinite(*e.length)))
      throw InputError("edge " + std::to_string(id) + " has non-positive length");
    auto& slot = pair_index_[key(e.a, e.b)];
    if (!slot.empty() && !e.doubled)
      throw InputError("edge " + std::to_string(id) + " duplicates edge " +
                       std::to_string(slot.front()) + " without the doubled flag");
    slot.push_back(id);
  }
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    const Face& t = faces_[f];
    for (int k = 0; k < 3; ++k) {
      if (t[k] < 0 || t[k] >= n)
        throw InputError("face " + std::to_string(f) + " references missing vertex " +
                         std::to_string(t[k]));
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw InputError("face " + std::to_string(f) + " repeats a vertex");
    for (int k = 0; k < 3; ++k) {
      if (find_edge(t[k], t[(k + 1) % 3]) < 0)
        throw InputError("face " + std::to_string(f) + " side " + std::to_string(t[k]) + "-" +
                         std::to_string(t[(k + 1) % 3]) + " is not an edge");
    }
  }
  // Connectivity of the full graph; removal is tracked separately.
  if (n > 1) {
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int comps = n;
    for (const Edge& e : edges_) {
      int ra = find(e.a), rb = find(e.b);
      if (ra != rb) {
        parent[ra] = rb;
        --comps;
      }
    }
    if (comps != 1) throw InputError("truss graph is not connected");
  }
}

int Truss::num_active_edges() const {
  int c = 0;
  for (const Edge& e : edges_) c += e.removed ? 0 : 1;
  return c;
}

std::vector<int> Truss::active_edges() const {
  std::vector<int> out;
  for (int i = 0; i < num_edges(); ++i)
    if (!edges_[i].removed) out.push_back(i);
  return out;
}

double Truss::geometric_length(int e) const {
  const Point& p = vertices_[edges_[e].a];
  const Point& q = vertices_[edges_[e].b];
  return std::hypot(q.x - p.x, q.y - p.y);
}

double Truss::length(int e) const {
  return edges_[e].length ? *edges_[e].length : geometric_length(e);
}

int Truss::find_edge(int u, int v) const {
  auto it = pair_index_.find(key(u, v));
  return it == pair_index_.end() ? -1 : it->second.front();
}

int Truss::find_active_edge(int u, int v) const {
  auto it = pair_index_.find(key(u, v));
  if (it == pair_index_.end()) return -1;
  for (int id : it->second)
    if (!edges_[id].removed) return id;
  return -1;
}

bool Truss::active_connected() const {
  const int n = num_vertices();
  if (n <= 1) return true;
  std::vector<std::vector<int>> adj(n);
  for (const Edge& e : edges_) {
    if (e.removed) continue;
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int w : adj[u]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n;
}

Truss Truss::with_removed(const std::vector<int>& ids, bool removed) const {
  Truss t = *this;
  for (int id : ids) {
    if (id < 0 || id >= num_edges()) throw InputError("unknown edge id " + std::to_string(id));
    t.edges_[id].removed = removed;
  }
  return t;
}

Truss Truss::with_positions(std::vector<Point> positions) const {
  if (static_cast<int>(positions.size()) != num_vertices())
    throw InputError("position count does not match vertex count");
  Truss t = *this;
  t.vertices_ = std::move(positions);
  t.lattice_.clear();
  return t;
}

Truss Truss::with_lengths(const std::vector<double>& lengths) const {
  if (static_cast<int>(lengths.size()) != num_edges())
    throw InputError("length count does not match edge count");
  Truss t = *this;
  for (int i = 0; i < num_edges(); ++i) {
    if (!(lengths[i] > 0.0)) throw InputError("edge " + std::to_string(i) + " has non-positive length");
    t.edges_[i].length = lengths[i];
  }
  return t;
}

Truss Truss::with_lattice(std::vector<Lattice> lattice) const {
  if (static_cast<int>(lattice.size()) != num_vertices())
    throw InputError("lattice coordinate count does not match vertex count");
  Truss t = *this;
  t.lattice_ = std::move(lattice);
  return t;
}

RemovalResult remove_edges(const Truss& truss, const std::vector<int>& ids) {
  RemovalResult r{truss.with_removed(ids, true), false};
  r.disconnected = !r.truss.active_connected();
  return r;
}

}  // namespace trusskit
