#include "trusskit/lattice.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "trusskit/errors.hpp"
#include "trusskit/topology.hpp"

namespace trusskit {

namespace {

Lattice add(Lattice p, Lattice q) { return {p.a + q.a, p.b + q.b}; }

LatticeTriangle sorted(LatticeTriangle t) {
  std::sort(t.begin(), t.end());
  return t;
}

int orient(const LatticeTriangle& t) {
  // Sign of the cross product in lattice coordinates; the basis is positive.
  long long ax = t[1].a - t[0].a, ay = t[1].b - t[0].b;
  long long bx = t[2].a - t[0].a, by = t[2].b - t[0].b;
  long long c = ax * by - ay * bx;
  return c > 0 ? 1 : (c < 0 ? -1 : 0);
}

std::set<LatticeTriangle> triangle_set(const std::vector<LatticeTriangle>& ts) {
  std::set<LatticeTriangle> out;
  for (const auto& t : ts) out.insert(sorted(t));
  return out;
}

}  // namespace

const std::array<Lattice, 6>& lattice_directions() {
  static const std::array<Lattice, 6> d{{{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}};
  return d;
}

std::vector<LatticeTriangle> hexagon_triangles(Lattice c) {
  const auto& d = lattice_directions();
  std::vector<LatticeTriangle> out;
  for (int i = 0; i < 6; ++i) out.push_back({c, add(c, d[i]), add(c, d[(i + 1) % 6])});
  return out;
}

std::vector<LatticeTriangle> hole_triangles(const Hole& hole) {
  std::vector<LatticeTriangle> out;
  if (auto* h = std::get_if<HexagonHole>(&hole)) {
    if (h->centers.empty()) throw InputError("hexagon hole without centers");
    for (Lattice c : h->centers) {
      auto ts = hexagon_triangles(c);
      out.insert(out.end(), ts.begin(), ts.end());
    }
  } else if (auto* h = std::get_if<ParallelogramHole>(&hole)) {
    if (h->p < 1 || h->q < 1) throw InputError("parallelogram hole needs p, q >= 1");
    for (int i = 0; i < h->p; ++i)
      for (int j = 0; j < h->q; ++j) {
        Lattice v{h->corner.a + i, h->corner.b + j};
        out.push_back({v, add(v, {1, 0}), add(v, {0, 1})});
        out.push_back({add(v, {1, 0}), add(v, {1, 1}), add(v, {0, 1})});
      }
  } else if (auto* h = std::get_if<EdgeHole>(&hole)) {
    if (h->edges.empty()) throw InputError("edge hole without edges");
    const auto& d = lattice_directions();
    for (auto [u, w] : h->edges) {
      Lattice dir{w.a - u.a, w.b - u.b};
      auto it = std::find(d.begin(), d.end(), dir);
      if (it == d.end()) throw InputError("edge hole endpoints are not lattice neighbours");
      int i = static_cast<int>(it - d.begin());
      out.push_back({u, w, add(u, d[(i + 1) % 6])});
      out.push_back({u, add(u, d[(i + 5) % 6]), w});
    }
  }
  std::set<LatticeTriangle> uniq = triangle_set(out);
  return {uniq.begin(), uniq.end()};
}

std::vector<Lattice> hole_vertices(const Hole& hole) {
  std::set<Lattice> pts;
  for (const auto& t : hole_triangles(hole)) pts.insert(t.begin(), t.end());
  return {pts.begin(), pts.end()};
}

Truss from_lattice_triangles(const std::vector<LatticeTriangle>& triangles) {
  std::set<LatticeTriangle> uniq = triangle_set(triangles);
  std::set<Lattice> pts;
  for (const auto& t : uniq) pts.insert(t.begin(), t.end());
  std::vector<Lattice> lat(pts.begin(), pts.end());
  std::map<Lattice, int> id;
  for (std::size_t i = 0; i < lat.size(); ++i) id[lat[i]] = static_cast<int>(i);
  std::vector<Point> P;
  for (Lattice p : lat) P.push_back(to_point(p));
  std::set<std::pair<int, int>> pairs;
  std::vector<Face> faces;
  for (LatticeTriangle t : uniq) {
    if (orient(t) == 0) throw InputError("degenerate lattice triangle");
    if (orient(t) < 0) std::swap(t[1], t[2]);
    Face f{id[t[0]], id[t[1]], id[t[2]]};
    faces.push_back(f);
    for (int k = 0; k < 3; ++k)
      pairs.insert(std::minmax(f[k], f[(k + 1) % 3]));
  }
  std::vector<Edge> edges;
  for (auto [a, b] : pairs) edges.push_back(Edge{a, b, std::nullopt, false, false});
  return Truss(std::move(P), std::move(edges), std::move(faces)).with_lattice(std::move(lat));
}

Truss hexagon_union(const std::vector<Lattice>& centers) {
  std::vector<LatticeTriangle> ts;
  for (Lattice c : centers) {
    auto h = hexagon_triangles(c);
    ts.insert(ts.end(), h.begin(), h.end());
  }
  return from_lattice_triangles(ts);
}

Truss hexstar() { return hexagon_union({{0, 0}}); }

namespace {

std::vector<Lattice> rhombus_centers(int n) {
  std::vector<Lattice> c;
  for (int l = 1; l <= n; ++l)
    for (int k = 1; k <= n; ++k) c.push_back({k, l});
  return c;
}

std::vector<LatticeTriangle> cell_triangles(const CellSpec& spec) {
  if (spec.k < 1) throw InputError("cell size k must be at least 1");
  std::vector<LatticeTriangle> all;
  for (Lattice c : rhombus_centers(spec.k)) {
    auto h = hexagon_triangles(c);
    all.insert(all.end(), h.begin(), h.end());
  }
  std::set<LatticeTriangle> keep = triangle_set(all);
  std::set<Lattice> taken;
  for (std::size_t i = 0; i < spec.holes.size(); ++i) {
    const std::string tag = "hole " + std::to_string(i);
    for (Lattice p : hole_vertices(spec.holes[i])) {
      if (p.a < 1 || p.a > spec.k || p.b < 1 || p.b > spec.k)
        throw InputError(tag + " reaches the cell boundary or outside the cell");
      if (taken.count(p)) throw InputError(tag + " touches or overlaps another hole");
    }
    for (Lattice p : hole_vertices(spec.holes[i])) taken.insert(p);
    for (const auto& t : hole_triangles(spec.holes[i])) keep.erase(sorted(t));
  }
  return {keep.begin(), keep.end()};
}

void check_holes(const Truss& t, std::size_t holes) {
  TopologyReport r = topology_report(t);
  if (r.boundary_loops != static_cast<int>(holes) + 1 || r.e_dangling != 0)
    throw InputError("holes are not bounded by disjoint simple curves");
}

}  // namespace

Truss rhombus(int n) {
  if (n < 1) throw InputError("rhombus size must be at least 1");
  return hexagon_union(rhombus_centers(n));
}

Truss cell(const CellSpec& spec) {
  Truss t = from_lattice_triangles(cell_triangles(spec));
  check_holes(t, spec.holes.size());
  return t;
}

Truss periodic(const CellSpec& spec, int n) {
  if (n < 1) throw InputError("periodic copy count must be at least 1");
  auto base = cell_triangles(spec);
  std::vector<LatticeTriangle> all;
  all.reserve(base.size() * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Lattice s{i * spec.k, j * spec.k};
      for (const auto& t : base) all.push_back({add(t[0], s), add(t[1], s), add(t[2], s)});
    }
  Truss t = from_lattice_triangles(all);
  check_holes(t, spec.holes.size() * n * n);
  return t;
}

Truss gen_patch(const PatchSpec& spec) {
  switch (spec.shape) {
    case PatchSpec::Shape::Hexstar:
      return hexstar();
    case PatchSpec::Shape::Rhombus:
      return rhombus(spec.n);
    case PatchSpec::Shape::Cell:
      return cell(spec.cell);
    case PatchSpec::Shape::Periodic:
      return periodic(spec.cell, spec.n);
  }
  throw InputError("unknown shape");
}

std::vector<Hole> parse_holes(const std::string& text) {
  std::vector<Hole> out;
  std::stringstream all(text);
  std::string item;
  while (std::getline(all, item, ';')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty() || item == "none") continue;
    auto open = item.find('(');
    if (open == std::string::npos || item.back() != ')')
      throw InputError("bad hole descriptor '" + item + "'");
    std::string kind = item.substr(0, open);
    std::vector<int> nums;
    std::stringstream args(item.substr(open + 1, item.size() - open - 2));
    std::string tok;
    while (std::getline(args, tok, ',')) {
      try {
        std::size_t used = 0;
        nums.push_back(std::stoi(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw InputError("bad number '" + tok + "' in hole descriptor '" + item + "'");
      }
    }
    if (kind == "para" && nums.size() == 4) {
      out.push_back(ParallelogramHole{{nums[0], nums[1]}, nums[2], nums[3]});
    } else if (kind == "hex" && !nums.empty() && nums.size() % 2 == 0) {
      HexagonHole h;
      for (std::size_t i = 0; i < nums.size(); i += 2) h.centers.push_back({nums[i], nums[i + 1]});
      out.push_back(h);
    } else if (kind == "edge" && !nums.empty() && nums.size() % 4 == 0) {
      EdgeHole h;
      for (std::size_t i = 0; i < nums.size(); i += 4)
        h.edges.push_back({{nums[i], nums[i + 1]}, {nums[i + 2], nums[i + 3]}});
      out.push_back(h);
    } else {
      throw InputError("bad hole descriptor '" + item + "'");
    }
  }
  return out;
}

std::string format_holes(const std::vector<Hole>& holes) {
  std::ostringstream os;
  for (std::size_t i = 0; i < holes.size(); ++i) {
    if (i) os << ';';
    if (auto* h = std::get_if<ParallelogramHole>(&holes[i])) {
      os << "para(" << h->corner.a << ',' << h->corner.b << ',' << h->p << ',' << h->q << ')';
    } else if (auto* h = std::get_if<HexagonHole>(&holes[i])) {
      os << "hex(";
      for (std::size_t j = 0; j < h->centers.size(); ++j)
        os << (j ? "," : "") << h->centers[j].a << ',' << h->centers[j].b;
      os << ')';
    } else if (auto* h = std::get_if<EdgeHole>(&holes[i])) {
      os << "edge(";
      for (std::size_t j = 0; j < h->edges.size(); ++j)
        os << (j ? "," : "") << h->edges[j].first.a << ',' << h->edges[j].first.b << ','
           << h->edges[j].second.a << ',' << h->edges[j].second.b;
      os << ')';
    }
  }
  return os.str();
}

}  // namespace trusskit
