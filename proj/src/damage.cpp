#include "trusskit/damage.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <string>

#include "trusskit/errors.hpp"
#include "trusskit/rigidity.hpp"
#include "trusskit/topology.hpp"

namespace trusskit {

DamageReport assess_damage(const Truss& t, const std::vector<int>& removed,
                           const std::optional<Eigen::VectorXd>& lambda_survivors) {
  DamageReport r;
  std::set<int> rem(removed.begin(), removed.end());
  for (int id : rem) {
    if (id < 0 || id >= t.num_edges()) throw InputError("unknown edge id " + std::to_string(id));
    if (t.edges()[id].removed) throw InputError("edge " + std::to_string(id) + " is already removed");
  }
  r.removed.assign(rem.begin(), rem.end());
  Truss damaged = t.with_removed(r.removed);
  r.survivor_ids = damaged.active_edges();
  AnalysisReport before = analyze(t);
  AnalysisReport after = analyze(damaged);
  r.original_c = before.c;
  r.reduced_c = after.c;
  r.recoverable = after.is_inf_rigid;
  r.flexes = std::max(0, after.nullity - 3);
  if (!lambda_survivors) return r;
  if (!r.recoverable) throw InfeasibleError("damage is not recoverable: survivors are flexible");
  ElongationSolution s = solve_prescribed_elongations(damaged, *lambda_survivors);
  r.residual = s.residual;
  if (!s.compatible)
    throw InfeasibleError("survivor elongations are incompatible (residual " + std::to_string(s.residual) + ")");
  RigidityMatrix full = assemble_rigidity(t);
  std::map<int, int> row;
  for (std::size_t k = 0; k < full.edge_ids.size(); ++k) row[full.edge_ids[k]] = static_cast<int>(k);
  Eigen::VectorXd rec(static_cast<Eigen::Index>(r.removed.size()));
  for (std::size_t k = 0; k < r.removed.size(); ++k) rec(k) = full.A.row(row[r.removed[k]]).dot(s.U);
  r.reconstructed = rec;
  return r;
}

namespace {

double turning(const Point& a, const Point& b, const Point& c) {
  const double ux = b.x - a.x, uy = b.y - a.y, wx = c.x - b.x, wy = c.y - b.y;
  return std::atan2(ux * wy - uy * wx, ux * wx + uy * wy) * 180.0 / std::numbers::pi;
}

// Curvature window: the collar outside the hole needs turning >= -60 with no
// three consecutive -60; the collar inside needs turning <= 60 with no three
// consecutive 60.
bool collared(const std::vector<double>& deg) {
  const int n = static_cast<int>(deg.size());
  const double eps = 1e-6;
  for (int i = 0; i < n; ++i) {
    if (deg[i] < -60.0 - eps || deg[i] > 60.0 + eps) return false;
    bool run_pos = true, run_neg = true;
    for (int j = 0; j < 3; ++j) {
      const double d = deg[(i + j) % n];
      run_pos = run_pos && std::abs(d - 60.0) < eps;
      run_neg = run_neg && std::abs(d + 60.0) < eps;
    }
    if (run_pos || run_neg) return false;
  }
  return true;
}

}  // namespace

HoleLoss hole_loss(const Truss& filled, const std::vector<int>& hole_faces) {
  Complex cx = build_complex(filled);
  const int nf = static_cast<int>(cx.faces.size());
  std::set<int> Y(hole_faces.begin(), hole_faces.end());
  if (Y.empty()) throw InputError("hole has no faces");
  for (int f : Y)
    if (f < 0 || f >= nf) throw InputError("unknown face index " + std::to_string(f));
  std::vector<Face> inside, outside;
  for (int f = 0; f < nf; ++f) (Y.count(f) ? inside : outside).push_back(cx.faces[f]);
  SubTruss hole = face_subtruss(filled, inside);
  TopologyReport hr = topology_report(hole.truss);
  if (hr.boundary_loops != 1 || hr.chi != 1)
    throw InputError("hole is not a disk bounded by one simple curve");
  HoleLoss out;
  out.l1 = static_cast<int>(hr.loops.front().size());
  for (int v : hr.loops.front())
    if (!cx.interior[hole.vertex_map[v]]) throw InputError("hole touches the outer boundary");
  out.v1 = hr.v_interior;
  out.formula_loss = out.v1 + out.l1 - 3;
  const auto& loop = hr.loops.front();
  const auto& P = hole.truss.vertices();
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Point& a = P[loop[(i + loop.size() - 1) % loop.size()]];
    out.turning_deg.push_back(turning(a, P[loop[i]], P[loop[(i + 1) % loop.size()]]));
  }
  out.collared = collared(out.turning_deg);
  out.holed = face_subtruss(filled, outside).truss;
  out.c_filled = analyze(filled).c;
  out.c_holed = analyze(out.holed).c;
  out.loss = out.c_filled - out.c_holed;
  return out;
}

HoleLoss hole_loss(const Truss& filled, const Hole& hole) {
  if (!filled.is_lattice()) throw InputError("lattice hole on a truss without lattice coordinates");
  std::map<Lattice, int> id;
  for (int i = 0; i < filled.num_vertices(); ++i) id[filled.lattice()[i]] = i;
  Complex cx = build_complex(filled);
  std::map<std::array<int, 3>, int> face_id;
  for (std::size_t f = 0; f < cx.faces.size(); ++f) {
    std::array<int, 3> k = cx.faces[f];
    std::sort(k.begin(), k.end());
    face_id[k] = static_cast<int>(f);
  }
  std::vector<int> faces;
  for (const auto& tri : hole_triangles(hole)) {
    std::array<int, 3> k{};
    for (int j = 0; j < 3; ++j) {
      auto it = id.find(tri[j]);
      if (it == id.end()) throw InputError("hole reaches outside the truss");
      k[j] = it->second;
    }
    std::sort(k.begin(), k.end());
    auto it = face_id.find(k);
    if (it == face_id.end()) throw InputError("hole triangle is not a face of the truss");
    faces.push_back(it->second);
  }
  return hole_loss(filled, faces);
}

Isoperimetric isoperimetric(int l) {
  if (l < 3) throw InputError("a closed lattice curve has at least 3 links");
  Isoperimetric r;
  r.length = l;
  const double L = l;
  r.max_interior = static_cast<int>(std::floor(L * L / 12.0 - L / 2.0 + 1.0 + 1e-12));
  r.loss_lower = l - 3;
  r.loss_upper_real = L * L / 12.0 + L / 2.0 - 2.0;
  r.loss_upper = static_cast<int>(std::floor(r.loss_upper_real + 1e-12));
  return r;
}

namespace {

int lattice_dist(int a, int b) {
  // Hex distance in the (e1, e2) basis.
  if ((a >= 0) == (b >= 0)) return std::abs(a + b);
  return std::max(std::abs(a), std::abs(b));
}

struct Walker {
  int l;
  int best = 0;
  std::vector<Lattice> path;
  std::set<Lattice> on;

  void finish() {
    // Pick's theorem in lattice coordinates: area = I + B/2 - 1.
    long long twice = 0;
    for (std::size_t i = 0; i < path.size(); ++i) {
      const Lattice& p = path[i];
      const Lattice& q = path[(i + 1) % path.size()];
      twice += static_cast<long long>(p.a) * q.b - static_cast<long long>(q.a) * p.b;
    }
    const long long interior = (std::llabs(twice) - l + 2) / 2;
    best = std::max(best, static_cast<int>(interior));
  }

  void step(int depth) {
    const Lattice cur = path.back();
    for (const Lattice& d : lattice_directions()) {
      const Lattice nx{cur.a + d.a, cur.b + d.b};
      const int left = l - depth - 1;
      if (nx == Lattice{0, 0}) {
        if (left == 0 && depth + 1 >= 3) finish();
        continue;
      }
      if (left == 0 || on.count(nx) || lattice_dist(nx.a, nx.b) > left) continue;
      // The start is the smallest vertex in (b, a) order.
      if (nx < Lattice{0, 0}) continue;
      path.push_back(nx);
      on.insert(nx);
      step(depth + 1);
      on.erase(nx);
      path.pop_back();
    }
  }
};

}  // namespace

int max_interior_bruteforce(int l) {
  if (l < 3 || l > 10) throw InputError("brute-force curve search supports lengths 3..10");
  Walker w{l, 0, {{0, 0}}, {{0, 0}}};
  w.step(0);
  return w.best;
}

double ac_formula(int k, int h, int m) {
  if (k < 1 || h < 0 || m < 0) throw InputError("cell parameters must be non-negative");
  if (static_cast<long long>(k) * k <= static_cast<long long>(h) * m)
    throw InputError("holes take all interior vertices: need k^2 > h m");
  const double kk = static_cast<double>(k) * k;
  return (kk - static_cast<double>(h) * (m - 3)) / (0.5 * std::sqrt(3.0) * kk);
}

ACResult asymptotic_compatibility(const CellSpec& spec, int max_n) {
  ACResult r;
  r.k = spec.k;
  r.h = static_cast<int>(spec.holes.size());
  std::set<int> sizes;
  for (const Hole& h : spec.holes) sizes.insert(static_cast<int>(hole_vertices(h).size()));
  if (sizes.size() > 1) throw InputError("asymptotic formula needs holes of equal size");
  r.m = sizes.empty() ? 0 : *sizes.begin();
  r.formula = ac_formula(r.k, r.h, r.m);
  for (int n = 1; n <= max_n; ++n) {
    Truss t = periodic(spec, n);
    ACSample s;
    s.n = n;
    s.c = analyze(t).c;
    s.predicted_c = n * n * (r.k * r.k - r.h * r.m + 3 * r.h);
    const double nk = static_cast<double>(n) * r.k;
    s.area = nk * (nk + 1.0) * 0.5 * std::sqrt(3.0);
    s.value = s.c / s.area;
    s.gap = std::abs(s.value - r.formula) / r.formula;
    r.empirical.push_back(s);
  }
  return r;
}

ThinningResult ne_thinning(int n, int samples, unsigned seed) {
  Truss full = rhombus(n);
  std::map<Lattice, int> id;
  for (int i = 0; i < full.num_vertices(); ++i) id[full.lattice()[i]] = i;
  ThinningResult r;
  for (int l = 1; l <= n; ++l)
    for (int k = 1; k <= n; ++k) {
      int e = full.find_edge(id[{k, l}], id[{k, l + 1}]);
      r.removed.push_back(e);
    }
  std::sort(r.removed.begin(), r.removed.end());
  r.removable = static_cast<int>(r.removed.size());
  r.truss = full.with_removed(r.removed);
  AnalysisReport rep = analyze(r.truss);
  r.rigid = rep.is_inf_rigid;
  r.c = rep.c;
  std::vector<int> rest = r.truss.active_edges();
  std::vector<int> probe = rest;
  if (n > 2 && samples < static_cast<int>(rest.size())) {
    std::mt19937_64 rng(seed);
    std::shuffle(probe.begin(), probe.end(), rng);
    probe.resize(samples);
    std::sort(probe.begin(), probe.end());
  }
  r.all_flexible = true;
  for (int e : probe) {
    AnalysisReport a = analyze(r.truss.with_removed({e}));
    ++r.checked;
    r.all_flexible = r.all_flexible && a.nullity >= 4;
  }
  return r;
}

}  // namespace trusskit
