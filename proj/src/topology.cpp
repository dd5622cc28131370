#include "trusskit/topology.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "trusskit/errors.hpp"

namespace trusskit {

namespace {

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool on_segment(const Point& p, const Point& q, const Point& r) {
  return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
         r.y <= std::max(p.y, q.y);
}

int sgn(double v, double eps) { return v > eps ? 1 : (v < -eps ? -1 : 0); }

void check_crossings(const Truss& t) {
  const auto& P = t.vertices();
  std::vector<int> ids = t.active_edges();
  double scale = 0.0;
  for (const Point& p : P) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
  const double eps = 1e-12 * std::max(1.0, scale * scale);
  struct Box {
    double x0, x1, y0, y1;
    int id;
  };
  std::vector<Box> boxes;
  for (int id : ids) {
    const Point& a = P[t.edges()[id].a];
    const Point& b = P[t.edges()[id].b];
    boxes.push_back({std::min(a.x, b.x), std::max(a.x, b.x), std::min(a.y, b.y),
                     std::max(a.y, b.y), id});
  }
  std::sort(boxes.begin(), boxes.end(), [](const Box& l, const Box& r) { return l.x0 < r.x0; });
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    for (std::size_t j = i + 1; j < boxes.size() && boxes[j].x0 <= boxes[i].x1; ++j) {
      if (boxes[j].y0 > boxes[i].y1 || boxes[j].y1 < boxes[i].y0) continue;
      const Edge& e1 = t.edges()[boxes[i].id];
      const Edge& e2 = t.edges()[boxes[j].id];
      const Point &p1 = P[e1.a], &p2 = P[e1.b], &p3 = P[e2.a], &p4 = P[e2.b];
      int shared = (e1.a == e2.a) + (e1.a == e2.b) + (e1.b == e2.a) + (e1.b == e2.b);
      if (shared == 2) continue;  // doubled link
      int d1 = sgn(cross(p3, p4, p1), eps), d2 = sgn(cross(p3, p4, p2), eps);
      int d3 = sgn(cross(p1, p2, p3), eps), d4 = sgn(cross(p1, p2, p4), eps);
      bool hit = false;
      if (shared == 1) {
        // Collinear and pointing the same way from the common vertex.
        int c = e1.a == e2.a || e1.a == e2.b ? e1.a : e1.b;
        int o1 = e1.a == c ? e1.b : e1.a;
        int o2 = e2.a == c ? e2.b : e2.a;
        const Point &pc = P[c], &q1 = P[o1], &q2 = P[o2];
        if (sgn(cross(pc, q1, q2), eps) == 0 &&
            (q1.x - pc.x) * (q2.x - pc.x) + (q1.y - pc.y) * (q2.y - pc.y) > 0)
          hit = true;
      } else if (d1 * d2 < 0 && d3 * d4 < 0) {
        hit = true;
      } else if ((d1 == 0 && on_segment(p3, p4, p1)) || (d2 == 0 && on_segment(p3, p4, p2)) ||
                 (d3 == 0 && on_segment(p1, p2, p3)) || (d4 == 0 && on_segment(p1, p2, p4))) {
        hit = true;
      }
      if (hit)
        throw InputError("edges " + std::to_string(boxes[i].id) + " and " +
                         std::to_string(boxes[j].id) + " cross");
    }
  }
}

}  // namespace

std::vector<Face> infer_faces(const Truss& t) {
  check_crossings(t);
  const auto& P = t.vertices();
  const int n = t.num_vertices();
  std::vector<std::vector<int>> nbr(n);
  for (int id : t.active_edges()) {
    const Edge& e = t.edges()[id];
    nbr[e.a].push_back(e.b);
    nbr[e.b].push_back(e.a);
  }
  std::map<std::array<int, 3>, int> votes;
  for (int i = 0; i < n; ++i) {
    auto& ring = nbr[i];
    std::sort(ring.begin(), ring.end());
    ring.erase(std::unique(ring.begin(), ring.end()), ring.end());
    if (ring.size() < 2) continue;
    std::sort(ring.begin(), ring.end(), [&](int a, int b) {
      return std::atan2(P[a].y - P[i].y, P[a].x - P[i].x) <
             std::atan2(P[b].y - P[i].y, P[b].x - P[i].x);
    });
    for (std::size_t k = 0; k < ring.size(); ++k) {
      int j = ring[k], l = ring[(k + 1) % ring.size()];
      if (cross(P[i], P[j], P[l]) <= 0.0) continue;  // gap of pi or more
      if (t.find_active_edge(j, l) < 0) continue;
      std::array<int, 3> key{i, j, l};
      std::sort(key.begin(), key.end());
      ++votes[key];
    }
  }
  std::vector<int> isolated;
  for (int i = 0; i < n; ++i)
    if (nbr[i].empty()) isolated.push_back(i);
  std::vector<Face> faces;
  for (const auto& [key, count] : votes) {
    if (count != 3) continue;
    Face f{key[0], key[1], key[2]};
    if (cross(P[f[0]], P[f[1]], P[f[2]]) < 0) std::swap(f[1], f[2]);
    bool empty = true;
    for (int v : isolated) {
      if (cross(P[f[0]], P[f[1]], P[v]) > 0 && cross(P[f[1]], P[f[2]], P[v]) > 0 &&
          cross(P[f[2]], P[f[0]], P[v]) > 0)
        empty = false;
    }
    if (empty) faces.push_back(f);
  }
  return faces;
}

std::vector<Face> active_faces(const Truss& t) {
  if (t.faces().empty()) return infer_faces(t);
  std::vector<Face> out;
  for (const Face& f : t.faces()) {
    bool ok = true;
    for (int k = 0; k < 3; ++k)
      if (t.find_active_edge(f[k], f[(k + 1) % 3]) < 0) ok = false;
    if (ok) out.push_back(f);
  }
  return out;
}

Complex build_complex(const Truss& t, const std::vector<Face>& faces) {
  Complex cx;
  const auto& P = t.vertices();
  const int n = t.num_vertices();
  cx.edge_faces.assign(t.num_edges(), {});
  cx.vertex_faces.assign(n, {});
  std::set<std::array<int, 3>> seen;
  for (Face f : faces) {
    std::array<int, 3> key = f;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) continue;
    std::array<int, 3> fe{};
    for (int k = 0; k < 3; ++k) {
      fe[k] = t.find_active_edge(f[k], f[(k + 1) % 3]);
      if (fe[k] < 0)
        throw InputError("face side " + std::to_string(f[k]) + "-" +
                         std::to_string(f[(k + 1) % 3]) + " is not an active edge");
    }
    const int id = static_cast<int>(cx.faces.size());
    cx.faces.push_back(f);
    cx.face_edges.push_back(fe);
    for (int k = 0; k < 3; ++k) {
      cx.edge_faces[fe[k]].push_back(id);
      cx.vertex_faces[f[k]].push_back(id);
    }
  }
  for (int e = 0; e < t.num_edges(); ++e)
    if (cx.edge_faces[e].size() > 2)
      throw InputError("non-manifold edge " + std::to_string(e) + " lies in " +
                       std::to_string(cx.edge_faces[e].size()) + " faces");
  // Coherent orientation by propagation across shared edges, then each
  // component is turned counter-clockwise by total signed area.
  const int nf = static_cast<int>(cx.faces.size());
  auto flip = [&](int f) {
    std::swap(cx.faces[f][1], cx.faces[f][2]);
    auto& fe = cx.face_edges[f];
    fe = {fe[2], fe[1], fe[0]};
  };
  auto directed = [&](int f, int a, int b) {
    const Face& tri = cx.faces[f];
    for (int k = 0; k < 3; ++k)
      if (tri[k] == a && tri[(k + 1) % 3] == b) return true;
    return false;
  };
  std::vector<int> comp(nf, -1);
  for (int root = 0; root < nf; ++root) {
    if (comp[root] >= 0) continue;
    std::vector<int> members{root};
    comp[root] = root;
    for (std::size_t q = 0; q < members.size(); ++q) {
      int f = members[q];
      for (int k = 0; k < 3; ++k) {
        int a = cx.faces[f][k], b = cx.faces[f][(k + 1) % 3];
        for (int g : cx.edge_faces[cx.face_edges[f][k]]) {
          if (g == f) continue;
          if (comp[g] < 0) {
            if (directed(g, a, b)) flip(g);
            comp[g] = root;
            members.push_back(g);
          } else if (directed(g, a, b)) {
            throw InputError("faces " + std::to_string(f) + " and " + std::to_string(g) +
                             " cannot be oriented coherently");
          }
        }
      }
    }
    double area = 0.0;
    for (int f : members) area += cross(P[cx.faces[f][0]], P[cx.faces[f][1]], P[cx.faces[f][2]]);
    if (area < 0)
      for (int f : members) flip(f);
  }
  cx.interior.assign(n, 0);
  cx.pinched.assign(n, 0);
  for (int v = 0; v < n; ++v) {
    const auto& fs = cx.vertex_faces[v];
    if (fs.empty()) continue;
    std::map<int, std::vector<int>> link;
    for (int f : fs) {
      const Face& tri = cx.faces[f];
      int k = static_cast<int>(std::find(tri.begin(), tri.end(), v) - tri.begin());
      int a = tri[(k + 1) % 3], b = tri[(k + 2) % 3];
      link[a].push_back(b);
      link[b].push_back(a);
    }
    // Components of the link graph.
    std::set<int> left;
    for (auto& [u, _] : link) left.insert(u);
    int comps = 0;
    bool all_deg2 = true;
    for (auto& [u, adj] : link) all_deg2 = all_deg2 && adj.size() == 2;
    while (!left.empty()) {
      ++comps;
      std::vector<int> stack{*left.begin()};
      left.erase(left.begin());
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : link[u])
          if (left.erase(w)) stack.push_back(w);
      }
    }
    if (comps > 1) cx.pinched[v] = 1;
    else if (all_deg2) cx.interior[v] = 1;
  }
  return cx;
}

TopologyReport topology_report(const Truss& t) { return topology_report(t, build_complex(t)); }

TopologyReport topology_report(const Truss& t, const Complex& cx) {
  TopologyReport r;
  r.v = t.num_vertices();
  r.f = static_cast<int>(cx.faces.size());
  for (int v = 0; v < r.v; ++v) {
    if (cx.pinched[v]) throw InputError("pinched vertex " + std::to_string(v));
    if (cx.interior[v]) r.interior_vertices.push_back(v);
  }
  r.v_interior = static_cast<int>(r.interior_vertices.size());
  r.v_boundary = r.v - r.v_interior;
  std::vector<std::vector<int>> bnd(r.v);  // boundary edge ids at each vertex
  for (int e : t.active_edges()) {
    ++r.e;
    const auto& fs = cx.edge_faces[e];
    if (fs.empty()) {
      ++r.e_dangling;
    } else if (fs.size() == 1) {
      ++r.e_boundary;
      bnd[t.edges()[e].a].push_back(e);
      bnd[t.edges()[e].b].push_back(e);
    } else {
      ++r.e_interior;
    }
  }
  r.chi = r.f - r.e + r.v;
  // Trace boundary loops with the adjacent face on the left.
  std::vector<char> used(t.num_edges(), 0);
  for (int e0 = 0; e0 < t.num_edges(); ++e0) {
    if (used[e0] || t.edges()[e0].removed || cx.edge_faces[e0].size() != 1) continue;
    const Face& f = cx.faces[cx.edge_faces[e0][0]];
    int start = -1, next = -1;
    for (int k = 0; k < 3; ++k) {
      int a = f[k], b = f[(k + 1) % 3];
      if (t.find_active_edge(a, b) == e0) {
        start = a;
        next = b;
      }
    }
    std::vector<int> loop{start};
    used[e0] = 1;
    int cur = next;
    while (cur != start) {
      loop.push_back(cur);
      int step = -1;
      for (int e : bnd[cur])
        if (!used[e]) {
          step = e;
          break;
        }
      if (step < 0) throw InputError("boundary loop through vertex " + std::to_string(cur) + " is not closed");
      used[step] = 1;
      cur = t.edges()[step].a == cur ? t.edges()[step].b : t.edges()[step].a;
    }
    r.loops.push_back(std::move(loop));
  }
  r.boundary_loops = static_cast<int>(r.loops.size());
  r.genus = std::max(0, r.boundary_loops - 1);
  return r;
}

Star star_of(const Truss& t, const Complex& cx, int v) {
  if (v < 0 || v >= t.num_vertices()) throw InputError("unknown vertex " + std::to_string(v));
  if (!cx.interior[v]) throw InputError("vertex " + std::to_string(v) + " is not interior");
  std::map<int, std::vector<int>> next;  // counter-clockwise successor around v
  for (int f : cx.vertex_faces[v]) {
    const Face& tri = cx.faces[f];
    int k = static_cast<int>(std::find(tri.begin(), tri.end(), v) - tri.begin());
    next[tri[(k + 1) % 3]].push_back(tri[(k + 2) % 3]);
  }
  Star s;
  s.center = v;
  int first = next.begin()->first;
  int cur = first;
  do {
    s.ring.push_back(cur);
    cur = next[cur].front();
  } while (cur != first && s.ring.size() <= next.size());
  const int m = static_cast<int>(s.ring.size());
  for (int i = 0; i < m; ++i) {
    s.spokes.push_back(t.find_active_edge(v, s.ring[i]));
    s.rim.push_back(t.find_active_edge(s.ring[i], s.ring[(i + 1) % m]));
  }
  return s;
}

Star star_of(const Truss& t, int v) { return star_of(t, build_complex(t), v); }

}  // namespace trusskit

namespace trusskit {

SubTruss face_subtruss(const Truss& t, const std::vector<Face>& faces) {
  std::set<int> vs;
  std::set<int> es;
  for (const Face& f : faces)
    for (int k = 0; k < 3; ++k) {
      vs.insert(f[k]);
      int e = t.find_active_edge(f[k], f[(k + 1) % 3]);
      if (e < 0) throw InputError("face side is not an active edge");
      es.insert(e);
    }
  SubTruss out;
  out.vertex_map.assign(vs.begin(), vs.end());
  out.edge_map.assign(es.begin(), es.end());
  std::vector<int> inv(t.num_vertices(), -1);
  for (std::size_t i = 0; i < out.vertex_map.size(); ++i) inv[out.vertex_map[i]] = static_cast<int>(i);
  std::vector<Point> P;
  std::vector<Lattice> lat;
  for (int v : out.vertex_map) {
    P.push_back(t.vertices()[v]);
    if (t.is_lattice()) lat.push_back(t.lattice()[v]);
  }
  std::vector<Edge> E;
  for (int e : out.edge_map) {
    Edge x = t.edges()[e];
    x.a = inv[x.a];
    x.b = inv[x.b];
    E.push_back(x);
  }
  std::vector<Face> F;
  for (const Face& f : faces) F.push_back({inv[f[0]], inv[f[1]], inv[f[2]]});
  out.truss = Truss(std::move(P), std::move(E), std::move(F), t.flags());
  if (t.is_lattice()) out.truss = out.truss.with_lattice(std::move(lat));
  return out;
}

}  // namespace trusskit
