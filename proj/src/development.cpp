#include "trusskit/development.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "trusskit/errors.hpp"

namespace trusskit {

namespace {

constexpr double kPi = std::numbers::pi;

struct FaceAngles {
  std::array<double, 3> angle;  // at faces[f][k]
};

double side(const Truss& t, const std::vector<double>& len, int u, int w) {
  return len[t.find_active_edge(u, w)];
}

FaceAngles face_angles(const Truss& t, const std::vector<double>& len, const Face& f, int id) {
  std::array<double, 3> opp{};
  for (int k = 0; k < 3; ++k) opp[k] = side(t, len, f[(k + 1) % 3], f[(k + 2) % 3]);
  for (int k = 0; k < 3; ++k) {
    if (!(opp[k] < opp[(k + 1) % 3] + opp[(k + 2) % 3]))
      throw InfeasibleError("face " + std::to_string(id) + " violates the strict triangle inequality");
  }
  FaceAngles out{};
  for (int k = 0; k < 3; ++k) {
    const double b = opp[(k + 1) % 3], c = opp[(k + 2) % 3], a = opp[k];
    double cs = (b * b + c * c - a * a) / (2.0 * b * c);
    if (cs > 1.0 + 1e-12 || cs < -1.0 - 1e-12)
      throw InfeasibleError("face " + std::to_string(id) + " has a cosine outside [-1, 1]");
    out.angle[k] = std::acos(std::clamp(cs, -1.0, 1.0));
  }
  return out;
}

std::vector<double> vertex_angle_sums(const Truss& t, const Complex& cx, const std::vector<double>& len) {
  std::vector<double> sum(t.num_vertices(), 0.0);
  for (std::size_t f = 0; f < cx.faces.size(); ++f) {
    FaceAngles fa = face_angles(t, len, cx.faces[f], static_cast<int>(f));
    for (int k = 0; k < 3; ++k) sum[cx.faces[f][k]] += fa.angle[k];
  }
  return sum;
}

void check_lengths(const Truss& t, const std::vector<double>& len) {
  if (static_cast<int>(len.size()) != t.num_edges())
    throw InputError("length vector has " + std::to_string(len.size()) + " entries for " +
                     std::to_string(t.num_edges()) + " edges");
  for (std::size_t i = 0; i < len.size(); ++i)
    if (!(len[i] > 0.0) || !std::isfinite(len[i]))
      throw InputError("edge " + std::to_string(i) + " has non-positive length");
}

}  // namespace

std::vector<double> edge_lengths(const Truss& t) {
  std::vector<double> out(t.num_edges());
  for (int i = 0; i < t.num_edges(); ++i) out[i] = t.length(i);
  return out;
}

CurvatureAtoms curvature_atoms(const Truss& t, const std::vector<double>& len) {
  return curvature_atoms(t, build_complex(t), len);
}

CurvatureAtoms curvature_atoms(const Truss& t, const Complex& cx, const std::vector<double>& len) {
  check_lengths(t, len);
  std::vector<double> sum = vertex_angle_sums(t, cx, len);
  CurvatureAtoms out;
  for (int v = 0; v < t.num_vertices(); ++v) {
    if (!cx.interior[v]) continue;
    out.vertices.push_back(v);
    out.K.push_back(2.0 * kPi - sum[v]);
  }
  return out;
}

std::vector<int> peel_order(const Truss& t, const Complex& cx) {
  TopologyReport rep = topology_report(t, cx);
  if (rep.f == 0) throw InputError("triangulation has no faces");
  if (rep.boundary_loops != 1 || rep.chi != 1 || rep.e_dangling != 0)
    throw InputError("triangulation is not a disk");
  const int nf = rep.f;
  std::vector<int> count(t.num_edges(), 0);  // faces of the current set on each edge
  for (int f = 0; f < nf; ++f)
    for (int e : cx.face_edges[f]) ++count[e];
  std::vector<int> bnd_at(t.num_vertices(), 0);  // boundary edges of the current set at each vertex
  auto bump = [&](int e, int d) {
    bnd_at[t.edges()[e].a] += d;
    bnd_at[t.edges()[e].b] += d;
  };
  for (int e = 0; e < t.num_edges(); ++e)
    if (count[e] == 1) bump(e, 1);
  std::vector<char> alive(nf, 1);
  std::vector<int> removed;
  for (int left = nf; left > 1; --left) {
    int pick = -1;
    for (int f = 0; f < nf && pick < 0; ++f) {
      if (!alive[f]) continue;
      int nb = 0;
      for (int e : cx.face_edges[f]) nb += count[e] == 1;
      if (nb >= 2) pick = f;
    }
    for (int f = 0; f < nf && pick < 0; ++f) {
      if (!alive[f]) continue;
      int nb = 0, opp = -1;
      for (int k = 0; k < 3; ++k) {
        if (count[cx.face_edges[f][k]] == 1) {
          ++nb;
          opp = cx.faces[f][(k + 2) % 3];  // side k joins faces[k], faces[k+1]
        }
      }
      if (nb == 1 && bnd_at[opp] == 0) pick = f;
    }
    if (pick < 0) throw InputError("no removable boundary triangle; triangulation is not a disk");
    alive[pick] = 0;
    removed.push_back(pick);
    for (int e : cx.face_edges[pick]) {
      if (count[e] == 1) bump(e, -1);
      --count[e];
      if (count[e] == 1) bump(e, 1);
    }
  }
  for (int f = 0; f < nf; ++f)
    if (alive[f]) removed.push_back(f);
  std::reverse(removed.begin(), removed.end());
  return removed;
}

namespace {

// Position of x from placed u, w with |ux| = a, |wx| = b, on side s (+1 left of u->w).
Point place(const Point& u, const Point& w, double a, double b, double s) {
  const double dx = w.x - u.x, dy = w.y - u.y;
  const double d = std::hypot(dx, dy);
  const double along = (a * a - b * b + d * d) / (2.0 * d);
  const double h = std::sqrt(std::max(0.0, a * a - along * along));
  const double ux = dx / d, uy = dy / d;
  return {u.x + along * ux - s * h * uy, u.y + along * uy + s * h * ux};
}

double side_of(const Point& u, const Point& w, const Point& p) {
  const double c = (w.x - u.x) * (p.y - u.y) - (w.y - u.y) * (p.x - u.x);
  return c >= 0 ? 1.0 : -1.0;
}

}  // namespace

Development develop(const Truss& t, const std::vector<double>& len, Seed seed, double tol) {
  check_lengths(t, len);
  Complex cx = build_complex(t);
  CurvatureAtoms atoms = curvature_atoms(t, cx, len);
  for (std::size_t i = 0; i < atoms.K.size(); ++i)
    if (std::abs(atoms.K[i]) > tol)
      throw InfeasibleError("curvature " + std::to_string(atoms.K[i]) + " at vertex " +
                            std::to_string(atoms.vertices[i]) + " exceeds tolerance");
  Development out;
  out.order = peel_order(t, cx);
  const int n = t.num_vertices();
  std::vector<Point> pos(n);
  std::vector<char> placed(n, 0);
  std::vector<int> edge_face(t.num_edges(), -1);  // a placed face on each edge
  double mismatch = 0.0;
  int mismatch_face = -1;
  auto L = [&](int u, int w) { return len[t.find_active_edge(u, w)]; };
  for (std::size_t step = 0; step < out.order.size(); ++step) {
    const int f = out.order[step];
    const Face& tri = cx.faces[f];
    if (step == 0) {
      pos[tri[0]] = {0.0, 0.0};
      pos[tri[1]] = {L(tri[0], tri[1]), 0.0};
      pos[tri[2]] = place(pos[tri[0]], pos[tri[1]], L(tri[0], tri[2]), L(tri[1], tri[2]), 1.0);
      for (int v : tri) placed[v] = 1;
    } else {
      int k_shared = -1;
      int shared = 0;
      for (int k = 0; k < 3; ++k)
        if (edge_face[cx.face_edges[f][k]] >= 0) {
          ++shared;
          if (k_shared < 0) k_shared = k;
        }
      if (shared == 0) throw std::logic_error("peel order step without a shared edge");
      const int u = tri[k_shared], w = tri[(k_shared + 1) % 3], x = tri[(k_shared + 2) % 3];
      const Face& ref = cx.faces[edge_face[cx.face_edges[f][k_shared]]];
      int r = ref[0] + ref[1] + ref[2] - u - w;
      const double s = -side_of(pos[u], pos[w], pos[r]);
      Point cand = place(pos[u], pos[w], L(u, x), L(w, x), s);
      if (placed[x]) {
        const double d = std::hypot(cand.x - pos[x].x, cand.y - pos[x].y);
        if (d > mismatch) {
          mismatch = d;
          mismatch_face = f;
        }
      } else {
        pos[x] = cand;
        placed[x] = 1;
      }
    }
    for (int e : cx.face_edges[f])
      if (edge_face[e] < 0) edge_face[e] = f;
  }
  // Seed placement.
  int se = seed.edge;
  if (se < 0) se = cx.face_edges[out.order.front()][0];
  if (se >= t.num_edges() || cx.edge_faces[se].empty())
    throw InputError("seed edge " + std::to_string(se) + " is not a face edge");
  const int a = t.edges()[se].a, b = t.edges()[se].b;
  const double th = std::atan2(pos[b].y - pos[a].y, pos[b].x - pos[a].x);
  const double c = std::cos(-th), sn = std::sin(-th);
  const Point o = pos[a];
  for (int v = 0; v < n; ++v) {
    if (!placed[v]) continue;
    const double dx = pos[v].x - o.x, dy = pos[v].y - o.y;
    pos[v] = {c * dx - sn * dy, sn * dx + c * dy};
  }
  const Face& sf = cx.faces[*std::min_element(cx.edge_faces[se].begin(), cx.edge_faces[se].end())];
  const int apex = sf[0] + sf[1] + sf[2] - a - b;
  const bool below = pos[apex].y < 0.0;
  if (below != seed.flip)
    for (Point& p : pos) p.y = -p.y;
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (int v = 0; v < n; ++v) {
    if (!placed[v]) continue;
    x0 = std::min(x0, pos[v].x);
    x1 = std::max(x1, pos[v].x);
    y0 = std::min(y0, pos[v].y);
    y1 = std::max(y1, pos[v].y);
  }
  out.diameter = std::hypot(x1 - x0, y1 - y0);
  if (mismatch > tol * out.diameter)
    throw InfeasibleError("placement mismatch " + std::to_string(mismatch) + " at face " +
                          std::to_string(mismatch_face));
  for (std::size_t f = 0; f < cx.faces.size(); ++f)
    for (int k = 0; k < 3; ++k) {
      const int u = cx.faces[f][k], w = cx.faces[f][(k + 1) % 3];
      const double d = std::hypot(pos[u].x - pos[w].x, pos[u].y - pos[w].y);
      out.max_length_error = std::max(out.max_length_error, std::abs(d - L(u, w)));
    }
  if (out.max_length_error > tol * out.diameter)
    throw InfeasibleError("developed lengths deviate by " + std::to_string(out.max_length_error));
  out.positions = std::move(pos);
  return out;
}

double turning_angle_sum(const Truss& t, const std::vector<double>& len) {
  check_lengths(t, len);
  Complex cx = build_complex(t);
  TopologyReport rep = topology_report(t, cx);
  if (rep.boundary_loops != 1)
    throw InputError("turning angle needs exactly one boundary loop, found " +
                     std::to_string(rep.boundary_loops));
  std::vector<double> sum = vertex_angle_sums(t, cx, len);
  double total = 0.0;
  for (int v : rep.loops.front()) total += kPi - sum[v];
  return total;
}

double three_star_poly(const ThreeStar& s) {
  const double a12 = s.p1 + s.p2 - s.q12;
  const double a23 = s.p2 + s.p3 - s.q23;
  const double a31 = s.p3 + s.p1 - s.q31;
  return 2.0 * s.p3 * a12 * a12 + 2.0 * s.p1 * a23 * a23 + 2.0 * s.p2 * a31 * a31 -
         2.0 * a12 * a23 * a31 - 8.0 * s.p1 * s.p2 * s.p3;
}

}  // namespace trusskit
