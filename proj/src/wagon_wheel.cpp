#include "trusskit/wagon_wheel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "trusskit/errors.hpp"
#include "trusskit/rigidity.hpp"

namespace trusskit {

namespace {

struct Vec {
  double x, y;
};
Vec sub(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
double dot(Vec a, Vec b) { return a.x * b.x + a.y * b.y; }
double crs(Vec a, Vec b) { return a.x * b.y - a.y * b.x; }
double norm(Vec a) { return std::hypot(a.x, a.y); }

// Angle at b in triangle a b c.
double cos_at(const Point& a, const Point& b, const Point& c) {
  Vec u = sub(a, b), w = sub(c, b);
  return dot(u, w) / (norm(u) * norm(w));
}

// Distance from p to the line through a and b.
double dist_line(const Point& p, const Point& a, const Point& b) {
  Vec d = sub(b, a);
  return std::abs(crs(d, sub(p, a))) / norm(d);
}

}  // namespace

WagonRow wagon_row(const Truss& t, const Complex& cx, int v) {
  Star s = star_of(t, cx, v);
  const auto& P = t.vertices();
  const int n = static_cast<int>(s.ring.size());
  const Point& c = P[v];
  std::vector<double> h(n), cb(n), cg(n);
  double scale = 0.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, norm(sub(P[s.ring[i]], c)));
  for (int i = 0; i < n; ++i) {
    const Point& a = P[s.ring[i]];
    const Point& b = P[s.ring[(i + 1) % n]];
    const Point& z = P[s.ring[(i + n - 1) % n]];
    h[i] = dist_line(c, a, b);
    if (h[i] <= 1e-12 * scale)
      throw InfeasibleError("degenerate sector " + std::to_string(i) + " at vertex " + std::to_string(v));
    cb[i] = cos_at(c, a, b);
    cg[i] = cos_at(c, a, z);
  }
  WagonRow row;
  row.center = v;
  for (int i = 0; i < n; ++i) {
    row.edge_ids.push_back(s.spokes[i]);
    row.coeff_L.push_back(-(cb[i] / h[i] + cg[i] / h[(i + n - 1) % n]));
  }
  for (int i = 0; i < n; ++i) {
    row.edge_ids.push_back(s.rim[i]);
    row.coeff_L.push_back(1.0 / h[i]);
  }
  for (std::size_t k = 0; k < row.edge_ids.size(); ++k)
    row.coeff_lambda.push_back(row.coeff_L[k] / t.geometric_length(row.edge_ids[k]));
  if (n == 6) {
    const double l0 = t.geometric_length(s.spokes[0]);
    bool reg = true;
    for (int i = 0; i < 6; ++i) {
      reg = reg && std::abs(t.geometric_length(s.spokes[i]) - l0) <= 1e-9 * l0 &&
            std::abs(t.geometric_length(s.rim[i]) - l0) <= 1e-9 * l0;
    }
    if (reg) {
      row.regular = true;
      row.unit_scale = 0.5 * std::sqrt(3.0) * l0;
    }
  }
  return row;
}

WagonRow wagon_row(const Truss& t, int v) { return wagon_row(t, build_complex(t), v); }

WagonCheck wagon_basis_check(const Truss& t) {
  Complex cx = build_complex(t);
  WagonCheck out;
  out.edge_ids = t.active_edges();
  std::map<int, int> col;
  for (std::size_t k = 0; k < out.edge_ids.size(); ++k) col[out.edge_ids[k]] = static_cast<int>(k);
  for (int v = 0; v < t.num_vertices(); ++v)
    if (cx.interior[v]) out.centers.push_back(v);
  out.rows = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(out.centers.size()),
                                   static_cast<Eigen::Index>(out.edge_ids.size()));
  for (std::size_t r = 0; r < out.centers.size(); ++r) {
    WagonRow w = wagon_row(t, cx, out.centers[r]);
    for (std::size_t k = 0; k < w.edge_ids.size(); ++k) out.rows(r, col[w.edge_ids[k]]) += w.coeff_lambda[k];
  }
  AnalysisReport rep = analyze(t);
  out.c = rep.c;
  out.rank = numerical_rank(out.rows);
  out.spans_leftnull = out.rank == out.c;
  if (out.rows.rows() > 0) {
    Eigen::MatrixXd A = assemble_rigidity(t).A;
    out.annihilation_residual = (out.rows * A).cwiseAbs().maxCoeff();
  }
  return out;
}

std::string to_string(EdgeClass c) {
  switch (c) {
    case EdgeClass::None: return "none";
    case EdgeClass::Boundary: return "boundary";
    case EdgeClass::UniqueIncoming: return "unique_incoming";
    case EdgeClass::Isthmus: return "isthmus";
    case EdgeClass::ExtremeIncoming: return "extreme_incoming";
    case EdgeClass::Spine: return "spine";
    case EdgeClass::MiddleIncoming: return "middle_incoming";
    case EdgeClass::Parallel: return "parallel";
    case EdgeClass::Interior: return "interior";
  }
  return "none";
}

namespace {

// Closed-form coefficient of an edge with endpoints p, q and opposite
// vertices opp (one or two), given region membership.
double closed_form(const Truss& t, int p, int q, const std::vector<int>& opp,
                   const std::set<int>& in, EdgeClass cls) {
  const auto& P = t.vertices();
  auto inr = [&](int x) { return in.count(x) > 0; };
  switch (cls) {
    case EdgeClass::None:
    case EdgeClass::Interior:
      return 0.0;
    case EdgeClass::Boundary: {
      int v1 = inr(opp[0]) ? opp[0] : opp[1];
      return 1.0 / dist_line(P[v1], P[p], P[q]);
    }
    case EdgeClass::UniqueIncoming: {
      int v0 = inr(p) ? p : q, v2 = v0 == p ? q : p;
      double s = 0.0;
      for (int x : opp) s -= cos_at(P[v0], P[v2], P[x]) / dist_line(P[v0], P[v2], P[x]);
      return s;
    }
    case EdgeClass::Isthmus:
    case EdgeClass::Spine: {
      double s = 0.0;
      for (int x : opp) s += 1.0 / dist_line(P[x], P[p], P[q]);
      return cls == EdgeClass::Isthmus ? s : -s;
    }
    case EdgeClass::ExtremeIncoming: {
      int v0 = inr(p) ? p : q, v2 = v0 == p ? q : p;
      int v1 = inr(opp[0]) ? opp[0] : opp[1], v3 = v1 == opp[0] ? opp[1] : opp[0];
      return cos_at(P[v1], P[v0], P[v2]) / dist_line(P[v2], P[v0], P[v1]) -
             cos_at(P[v0], P[v2], P[v3]) / dist_line(P[v0], P[v2], P[v3]);
    }
    case EdgeClass::MiddleIncoming: {
      int v0 = inr(p) ? p : q, v2 = v0 == p ? q : p;
      double s = 0.0;
      for (int x : opp) s += cos_at(P[x], P[v0], P[v2]) / dist_line(P[v2], P[v0], P[x]);
      return s;
    }
    case EdgeClass::Parallel: {
      int v3 = inr(opp[0]) ? opp[1] : opp[0];
      return -1.0 / dist_line(P[v3], P[p], P[q]);
    }
  }
  return 0.0;
}

EdgeClass classify(int ends_in, int opp_in) {
  static const EdgeClass table[3][3] = {
      {EdgeClass::None, EdgeClass::Boundary, EdgeClass::Isthmus},
      {EdgeClass::UniqueIncoming, EdgeClass::ExtremeIncoming, EdgeClass::MiddleIncoming},
      {EdgeClass::Spine, EdgeClass::Parallel, EdgeClass::Interior},
  };
  return table[ends_in][opp_in];
}

}  // namespace

CurveSum curve_sum(const Truss& t, const std::vector<int>& region) {
  if (region.empty()) throw InputError("curve sum region is empty");
  Complex cx = build_complex(t);
  std::set<int> in(region.begin(), region.end());
  for (int v : in)
    if (v < 0 || v >= t.num_vertices() || !cx.interior[v])
      throw InputError("region vertex " + std::to_string(v) + " is not an interior vertex");
  CurveSum out;
  out.region.assign(in.begin(), in.end());
  out.edge_ids = t.active_edges();
  const Eigen::Index m = static_cast<Eigen::Index>(out.edge_ids.size());
  std::map<int, int> col;
  for (Eigen::Index k = 0; k < m; ++k) col[out.edge_ids[k]] = static_cast<int>(k);
  out.sigma = Eigen::VectorXd::Zero(m);
  for (int v : out.region) {
    WagonRow w = wagon_row(t, cx, v);
    for (std::size_t k = 0; k < w.edge_ids.size(); ++k) out.sigma(col[w.edge_ids[k]]) += w.coeff_L[k];
  }
  out.closed_form = Eigen::VectorXd::Zero(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const int id = out.edge_ids[k];
    const Edge& e = t.edges()[id];
    std::vector<int> opp;
    for (int f : cx.edge_faces[id])
      for (int x : cx.faces[f])
        if (x != e.a && x != e.b) opp.push_back(x);
    int ends_in = static_cast<int>(in.count(e.a) + in.count(e.b));
    int opp_in = 0;
    for (int x : opp) opp_in += static_cast<int>(in.count(x));
    EdgeClass cls = classify(ends_in, opp_in);
    out.classes.push_back(cls);
    out.closed_form(k) = closed_form(t, e.a, e.b, opp, in, cls);
  }
  return out;
}

SignWitness sign_witness(const Truss& t, const std::vector<int>& region, const Eigen::VectorXd& L,
                              double tol) {
  CurveSum cs = curve_sum(t, region);
  if (L.size() != cs.sigma.size()) throw InputError("rate vector size does not match active edges");
  SignWitness out;
  out.sigma_value = cs.sigma.dot(L);
  bool hold = true;
  bool positive_somewhere = false;
  for (Eigen::Index k = 0; k < L.size(); ++k) {
    EdgeClass cls = cs.classes[k];
    if (cls == EdgeClass::Boundary) {
      hold = hold && std::abs(L(k)) <= tol;
    } else if (cls != EdgeClass::None && cls != EdgeClass::Interior) {
      hold = hold && L(k) > 0.0;
      positive_somewhere = true;
    }
  }
  out.hypotheses_hold = hold && positive_somewhere;
  const double scale = cs.sigma.cwiseAbs().maxCoeff() * std::max(1.0, L.cwiseAbs().maxCoeff());
  out.incompatible = std::abs(out.sigma_value) > tol * std::max(1.0, scale);
  out.verdict = out.incompatible ? "incompatible" : "undetermined";
  return out;
}

}  // namespace trusskit
