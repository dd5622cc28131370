#include "trusskit/btp.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <set>

#include "trusskit/errors.hpp"

namespace trusskit {

namespace {

struct Part {
  std::vector<Point> points;
  std::vector<Edge> edges;
  bool degenerate = false;
  std::vector<std::string> warnings;
};

double scale_of(const std::vector<Point>& pts) {
  double s = 1.0;
  for (const Point& p : pts) s = std::max({s, std::abs(p.x), std::abs(p.y)});
  return s;
}

std::size_t expected_children(BtpKind k) {
  switch (k) {
    case BtpKind::Segment: return 0;
    case BtpKind::Bigon: return 2;
    case BtpKind::Triangle: return 3;
    case BtpKind::Prism: return 5;
    case BtpKind::Pin: return 1;
  }
  return 0;
}

std::size_t expected_pins(BtpKind k) {
  switch (k) {
    case BtpKind::Segment: return 0;
    case BtpKind::Bigon: return 2;
    case BtpKind::Triangle: return 3;
    case BtpKind::Prism: return 6;
    case BtpKind::Pin: return 1;
  }
  return 0;
}

// Required (part, part) for each pin pair of a node.
std::vector<std::pair<int, int>> pin_pattern(BtpKind k) {
  switch (k) {
    case BtpKind::Bigon: return {{0, 1}, {0, 1}};
    case BtpKind::Triangle: return {{0, 1}, {1, 2}, {2, 0}};
    case BtpKind::Prism: return {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}};
    case BtpKind::Pin: return {{0, 0}};
    case BtpKind::Segment: return {};
  }
  return {};
}

int find(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

bool collinear(Point a, Point b, Point c, double scale) {
  double cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return std::abs(cross) <= kPinTol * scale * scale;
}

Part build(const BtpNode& node, const std::string& path) {
  if (node.children.size() != expected_children(node.kind))
    throw InputError(path + ": " + to_string(node.kind) + " needs " +
                     std::to_string(expected_children(node.kind)) + " children");
  if (node.pins.size() != expected_pins(node.kind))
    throw InputError(path + ": " + to_string(node.kind) + " needs " + std::to_string(expected_pins(node.kind)) +
                     " pin pairs");
  if (node.kind == BtpKind::Segment) {
    const Point a = node.segment[0], b = node.segment[1];
    if (std::hypot(a.x - b.x, a.y - b.y) <= kPinTol * scale_of({a, b}))
      throw InputError(path + ": segment endpoints coincide");
    return Part{{a, b}, {Edge{0, 1, std::nullopt, false, false}}, false, {}};
  }

  std::vector<Part> kids;
  std::vector<int> offset;
  int total = 0;
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    kids.push_back(build(node.children[i], path + "/" + std::to_string(i)));
    offset.push_back(total);
    total += static_cast<int>(kids.back().points.size());
  }

  Part out;
  for (const Part& k : kids) {
    out.points.insert(out.points.end(), k.points.begin(), k.points.end());
    out.degenerate = out.degenerate || k.degenerate;
    out.warnings.insert(out.warnings.end(), k.warnings.begin(), k.warnings.end());
  }
  const double scale = scale_of(out.points);

  auto global = [&](const PinRef& r, int want) {
    if (r.part != want) throw InputError(path + ": pin refers to part " + std::to_string(r.part) +
                                         ", expected part " + std::to_string(want));
    const int n = static_cast<int>(kids[want].points.size());
    if (r.vertex < 0 || r.vertex >= n)
      throw InputError(path + ": pin vertex " + std::to_string(r.vertex) + " out of range in part " +
                       std::to_string(want));
    return offset[want] + r.vertex;
  };

  const auto pattern = pin_pattern(node.kind);
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t k = 0; k < node.pins.size(); ++k) {
    int u = global(node.pins[k].first, pattern[k].first);
    int v = global(node.pins[k].second, pattern[k].second);
    if (u == v) throw InputError(path + ": pin joins a vertex to itself");
    const Point p = out.points[u], q = out.points[v];
    if (std::hypot(p.x - q.x, p.y - q.y) > kPinTol * scale)
      throw InputError(path + ": pinned points do not coincide (pin " + std::to_string(k) + ")");
    pairs.emplace_back(u, v);
  }

  // Anchors on each part must be distinct vertices.
  auto distinct = [&](std::vector<int> ids, const char* what) {
    std::set<int> s(ids.begin(), ids.end());
    if (s.size() != ids.size()) throw InputError(path + ": " + what + " anchors repeat a vertex");
  };
  if (node.kind == BtpKind::Bigon) {
    distinct({pairs[0].first, pairs[1].first}, "bigon");
    distinct({pairs[0].second, pairs[1].second}, "bigon");
  } else if (node.kind == BtpKind::Triangle) {
    distinct({pairs[2].second, pairs[0].first}, "triangle");
    distinct({pairs[0].second, pairs[1].first}, "triangle");
    distinct({pairs[1].second, pairs[2].first}, "triangle");
    if (collinear(out.points[pairs[0].first], out.points[pairs[1].first], out.points[pairs[2].first], scale))
      throw InputError(path + ": triangle anchors are collinear");
  } else if (node.kind == BtpKind::Prism) {
    distinct({pairs[0].first, pairs[1].first, pairs[2].first}, "prism");
    distinct({pairs[3].first, pairs[4].first, pairs[5].first}, "prism");
    for (int leg = 0; leg < 3; ++leg) distinct({pairs[leg].second, pairs[leg + 3].second}, "prism leg");
    PrismLegs legs;
    for (int i = 0; i < 6; ++i) legs.z[i] = out.points[pairs[i].first];
    const double det = prism_determinant(legs);
    if (std::abs(det) <= 1e-9 * std::pow(scale, 4)) {
      out.degenerate = true;
      out.warnings.push_back(path + ": prism determinant vanishes, assembly flexes");
    }
  }

  std::vector<int> parent(total);
  std::iota(parent.begin(), parent.end(), 0);
  for (auto [u, v] : pairs) {
    int a = find(parent, u), b = find(parent, v);
    if (a == b) throw InputError(path + ": pin pairs identify the same vertices twice");
    parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> id(total, -1);
  std::vector<Point> pts;
  for (int v = 0; v < total; ++v)
    if (find(parent, v) == v) {
      id[v] = static_cast<int>(pts.size());
      pts.push_back(out.points[v]);
    }
  for (int v = 0; v < total; ++v) id[v] = id[find(parent, v)];

  std::set<std::pair<int, int>> seen;
  for (std::size_t k = 0; k < kids.size(); ++k)
    for (const Edge& e : kids[k].edges) {
      Edge f = e;
      f.a = id[offset[k] + e.a];
      f.b = id[offset[k] + e.b];
      if (f.a == f.b) throw InputError(path + ": pinning collapses a link");
      if (!seen.insert({std::min(f.a, f.b), std::max(f.a, f.b)}).second) f.doubled = true;
      out.edges.push_back(f);
    }
  out.points = std::move(pts);
  return out;
}

}  // namespace

std::string to_string(BtpKind k) {
  switch (k) {
    case BtpKind::Segment: return "segment";
    case BtpKind::Bigon: return "bigon";
    case BtpKind::Triangle: return "triangle";
    case BtpKind::Prism: return "prism";
    case BtpKind::Pin: return "pin";
  }
  return "";
}

BtpNode btp_segment(Point a, Point b) {
  BtpNode n;
  n.segment = {a, b};
  return n;
}

BtpNode btp_bigon(BtpNode s, BtpNode t, std::array<PinPair, 2> pins) {
  return BtpNode{BtpKind::Bigon, {}, {std::move(s), std::move(t)}, {pins.begin(), pins.end()}};
}

BtpNode btp_triangle(BtpNode s, BtpNode t, BtpNode u, std::array<PinPair, 3> pins) {
  return BtpNode{BtpKind::Triangle, {}, {std::move(s), std::move(t), std::move(u)}, {pins.begin(), pins.end()}};
}

BtpNode btp_prism(std::array<BtpNode, 5> parts, std::array<PinPair, 6> pins) {
  BtpNode n{BtpKind::Prism, {}, {}, {pins.begin(), pins.end()}};
  for (BtpNode& p : parts) n.children.push_back(std::move(p));
  return n;
}

BtpNode btp_pin(BtpNode t, int v1, int v2) {
  return BtpNode{BtpKind::Pin, {}, {std::move(t)}, {PinPair{{0, v1}, {0, v2}}}};
}

double prism_determinant(const PrismLegs& legs) {
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i) {
    const Point p = legs.z[i], q = legs.z[i + 3];
    m.row(i) << p.x - q.x, p.y - q.y, p.x * q.y - q.x * p.y;
  }
  return m.determinant();
}

Assembly assemble(const BtpNode& node) {
  Part p = build(node, "root");
  TrussFlags flags;
  flags.allow_coincident = true;
  return Assembly{Truss(std::move(p.points), std::move(p.edges), {}, flags), p.degenerate, std::move(p.warnings)};
}

namespace {

using C = std::complex<double>;

C as_c(Point p) { return {p.x, p.y}; }
Point as_p(C z) { return {z.real(), z.imag()}; }

// Applies z -> a z + b to every segment in the tree.
void transform(BtpNode& n, C a, C b) {
  for (Point& p : n.segment) p = as_p(a * as_c(p) + b);
  for (BtpNode& c : n.children) transform(c, a, b);
}

// Similarity sending vertex u of n to p and vertex w to q.
void place(BtpNode& n, Point u, Point w, Point p, Point q) {
  C a = (as_c(q) - as_c(p)) / (as_c(w) - as_c(u));
  transform(n, a, as_c(p) - a * as_c(u));
}

struct Generator {
  std::mt19937_64 rng;
  std::uniform_real_distribution<double> u{-1.0, 1.0};

  Point point() { return {u(rng), u(rng)}; }

  BtpNode segment() {
    for (;;) {
      Point a = point(), b = point();
      if (std::hypot(a.x - b.x, a.y - b.y) > 0.2) return btp_segment(a, b);
    }
  }

  // Two vertices with well-separated coordinates.
  std::pair<int, int> pick2(const std::vector<Point>& pts) {
    std::uniform_int_distribution<int> d(0, static_cast<int>(pts.size()) - 1);
    for (;;) {
      int i = d(rng), j = d(rng);
      if (std::abs(as_c(pts[i]) - as_c(pts[j])) > 0.05) return {i, j};
    }
  }

  // Three vertices with a well-spread triangle, or false.
  bool pick3(const std::vector<Point>& pts, std::array<int, 3>& out) {
    std::uniform_int_distribution<int> d(0, static_cast<int>(pts.size()) - 1);
    for (int tries = 0; tries < 50; ++tries) {
      int i = d(rng), j = d(rng), k = d(rng);
      C a = as_c(pts[i]), b = as_c(pts[j]), c = as_c(pts[k]);
      if (std::abs(std::imag(std::conj(b - a) * (c - a))) > 0.05) {
        out = {i, j, k};
        return true;
      }
    }
    return false;
  }

  BtpNode tree(int depth) {
    if (depth == 0) return segment();
    switch (std::uniform_int_distribution<int>(0, 4)(rng)) {
      case 0: return segment();
      case 1: return bigon(depth);
      case 2: return triangle(depth);
      case 3: return prism(depth);
      default: return pinned(depth);
    }
  }

  BtpNode bigon(int depth) {
    BtpNode s = tree(depth - 1), t = tree(depth - 1);
    auto ps = assemble(s).truss.vertices(), pt = assemble(t).truss.vertices();
    auto [z1, z2] = pick2(ps);
    auto [z3, z4] = pick2(pt);
    place(t, pt[z3], pt[z4], ps[z1], ps[z2]);
    return btp_bigon(std::move(s), std::move(t), {PinPair{{0, z1}, {1, z3}}, PinPair{{0, z2}, {1, z4}}});
  }

  BtpNode triangle(int depth) {
    Point A, B, Cc;
    do {
      A = point(), B = point(), Cc = point();
    } while (std::abs(std::imag(std::conj(as_c(B) - as_c(A)) * (as_c(Cc) - as_c(A)))) < 0.2);
    BtpNode s = tree(depth - 1), t = tree(depth - 1), w = tree(depth - 1);
    auto ps = assemble(s).truss.vertices(), pt = assemble(t).truss.vertices(), pw = assemble(w).truss.vertices();
    auto [z1, z2] = pick2(ps);
    auto [z3, z4] = pick2(pt);
    auto [z5, z6] = pick2(pw);
    place(s, ps[z1], ps[z2], A, B);
    place(t, pt[z3], pt[z4], B, Cc);
    place(w, pw[z5], pw[z6], Cc, A);
    return btp_triangle(std::move(s), std::move(t), std::move(w),
                        {PinPair{{0, z2}, {1, z3}}, PinPair{{1, z4}, {2, z5}}, PinPair{{2, z6}, {0, z1}}});
  }

  BtpNode prism(int depth) {
    for (;;) {
      // End pieces need three vertices, which segments lack.
      BtpNode p = depth == 1 ? triangle(1) : tree(depth - 1), q = depth == 1 ? triangle(1) : tree(depth - 1);
      auto pp = assemble(p).truss.vertices(), pq = assemble(q).truss.vertices();
      std::array<int, 3> a, b;
      if (!pick3(pp, a) || !pick3(pq, b)) continue;
      place(q, pq[b[0]], pq[b[1]], point(), point());
      pq = assemble(q).truss.vertices();
      PrismLegs legs;
      for (int i = 0; i < 3; ++i) legs.z[i] = pp[a[i]], legs.z[i + 3] = pq[b[i]];
      bool short_leg = false;
      for (int i = 0; i < 3; ++i) short_leg |= std::abs(as_c(legs.z[i]) - as_c(legs.z[i + 3])) < 0.05;
      if (short_leg || std::abs(prism_determinant(legs)) < 1e-3) continue;
      std::array<BtpNode, 5> parts{std::move(p), std::move(q), {}, {}, {}};
      std::array<PinPair, 6> pins;
      for (int i = 0; i < 3; ++i) {
        BtpNode leg = tree(depth - 1);
        auto pl = assemble(leg).truss.vertices();
        auto [x, y] = pick2(pl);
        place(leg, pl[x], pl[y], legs.z[i], legs.z[i + 3]);
        parts[2 + i] = std::move(leg);
        pins[i] = {{0, a[i]}, {2 + i, x}};
        pins[3 + i] = {{1, b[i]}, {2 + i, y}};
      }
      return btp_prism(std::move(parts), pins);
    }
  }

  // Doubles a piece over itself and pins one stacked pair.
  BtpNode pinned(int depth) {
    for (;;) {
      // Depth one only reaches segments, so double a triangle instead.
      BtpNode s = depth == 1 ? triangle(1) : tree(depth - 1);
      auto ps = assemble(s).truss.vertices();
      if (ps.size() < 3) continue;
      auto [z1, z2] = pick2(ps);
      int third = -1;
      for (int v = 0; v < static_cast<int>(ps.size()) && third < 0; ++v)
        if (v != z1 && v != z2 && std::abs(as_c(ps[v]) - as_c(ps[z1])) > 1e-6 &&
            std::abs(as_c(ps[v]) - as_c(ps[z2])) > 1e-6)
          third = v;
      if (third < 0) continue;
      BtpNode copy = s;
      BtpNode b = btp_bigon(std::move(s), std::move(copy), {PinPair{{0, z1}, {1, z1}}, PinPair{{0, z2}, {1, z2}}});
      auto pb = assemble(b).truss.vertices();
      int a = -1, c = -1;
      for (int i = 0; i < static_cast<int>(pb.size()) && c < 0; ++i)
        for (int j = i + 1; j < static_cast<int>(pb.size()); ++j)
          if (std::abs(as_c(pb[i]) - as_c(pb[j])) < 1e-12) {
            a = i, c = j;
            break;
          }
      return btp_pin(std::move(b), a, c);
    }
  }
};

}  // namespace

BtpNode random_btp(std::uint64_t seed, int depth) {
  Generator g{std::mt19937_64(seed)};
  return g.tree(depth);
}

int predicted_compat(const BtpNode& node) {
  int sum = 0;
  for (const BtpNode& c : node.children) sum += predicted_compat(c);
  switch (node.kind) {
    case BtpKind::Segment: return 0;
    case BtpKind::Bigon: return sum + 1;
    case BtpKind::Pin: return sum + 2;
    default: return sum;
  }
}

}  // namespace trusskit
