#include "trusskit/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "trusskit/errors.hpp"

namespace trusskit {

namespace {

[[noreturn]] void field_error(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

const Json& require(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) field_error(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) field_error(where, std::string("missing field \"") + key + "\"");
  return *it;
}

int as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) field_error(where, "expected an integer");
  return j.get<int>();
}

double as_double(const Json& j, const std::string& where) {
  if (!j.is_number()) field_error(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) field_error(where, "expected a finite number");
  return v;
}

bool as_bool(const Json& j, const std::string& where) {
  if (!j.is_boolean()) field_error(where, "expected true or false");
  return j.get<bool>();
}

const Json& require_array(const Json& obj, const char* key, const std::string& where) {
  const Json& a = require(obj, key, where);
  if (!a.is_array()) field_error(where + "." + key, "expected an array");
  return a;
}

}  // namespace

ParsedTruss truss_from_json(const Json& j) {
  if (!j.is_object()) field_error("truss", "expected an object");
  const int version = as_int(require(j, "version", "truss"), "version");
  if (version != kFileVersion) field_error("version", "unsupported version " + std::to_string(version));

  const Json& vs = require_array(j, "vertices", "truss");
  std::vector<Point> pts;
  std::vector<Lattice> lat;
  bool lattice = !vs.empty();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string where = "vertices[" + std::to_string(i) + "]";
    const Json& v = vs[i];
    const int id = as_int(require(v, "id", where), where + ".id");
    if (id != static_cast<int>(i)) field_error(where + ".id", "ids must be dense and sorted, expected " + std::to_string(i));
    pts.push_back({as_double(require(v, "x", where), where + ".x"), as_double(require(v, "y", where), where + ".y")});
    if (v.contains("a") != v.contains("b")) field_error(where, "lattice coordinates need both a and b");
    if (v.contains("a"))
      lat.push_back({as_int(v["a"], where + ".a"), as_int(v["b"], where + ".b")});
    else
      lattice = false;
  }
  if (!lattice && !lat.empty()) field_error("vertices", "lattice coordinates must be given on every vertex or none");

  const Json& es = require_array(j, "edges", "truss");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    const Json& e = es[i];
    const int id = as_int(require(e, "id", where), where + ".id");
    if (id != static_cast<int>(i)) field_error(where + ".id", "ids must be dense and sorted, expected " + std::to_string(i));
    Edge ed;
    ed.a = as_int(require(e, "a", where), where + ".a");
    ed.b = as_int(require(e, "b", where), where + ".b");
    for (int end : {ed.a, ed.b})
      if (end < 0 || end >= static_cast<int>(pts.size()))
        field_error(where, "edge " + std::to_string(i) + " references missing vertex " + std::to_string(end));
    if (e.contains("length")) {
      ed.length = as_double(e["length"], where + ".length");
      if (!(*ed.length > 0.0)) field_error(where + ".length", "must be positive");
    }
    if (e.contains("removed")) ed.removed = as_bool(e["removed"], where + ".removed");
    if (e.contains("doubled")) ed.doubled = as_bool(e["doubled"], where + ".doubled");
    edges.push_back(ed);
  }

  std::vector<Face> faces;
  if (j.contains("faces")) {
    const Json& fs = j["faces"];
    if (!fs.is_array()) field_error("faces", "expected an array");
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const std::string where = "faces[" + std::to_string(i) + "]";
      if (!fs[i].is_array() || fs[i].size() != 3) field_error(where, "expected three vertex ids");
      Face f;
      for (int k = 0; k < 3; ++k) f[k] = as_int(fs[i][k], where);
      faces.push_back(f);
    }
  }

  TrussFlags flags;
  if (j.contains("flags")) {
    const Json& fl = j["flags"];
    if (!fl.is_object()) field_error("flags", "expected an object");
    if (fl.contains("allow_coincident")) flags.allow_coincident = as_bool(fl["allow_coincident"], "flags.allow_coincident");
  }

  if (!flags.allow_coincident)
    for (std::size_t p = 0; p < pts.size(); ++p)
      for (std::size_t q = p + 1; q < pts.size(); ++q)
        if (std::hypot(pts[p].x - pts[q].x, pts[p].y - pts[q].y) <= 1e-9 * std::max({1.0, std::abs(pts[p].x), std::abs(pts[p].y)}))
          field_error("vertices", "vertices " + std::to_string(p) + " and " + std::to_string(q) +
                                      " coincide; set flags.allow_coincident for pinned assemblies");

  ParsedTruss out;
  out.truss = Truss(std::move(pts), std::move(edges), std::move(faces), flags);
  if (lattice) out.truss = out.truss.with_lattice(std::move(lat));
  for (int i = 0; i < out.truss.num_edges(); ++i) {
    const Edge& e = out.truss.edges()[i];
    if (!e.length) continue;
    const double g = out.truss.geometric_length(i);
    if (std::abs(*e.length - g) > 1e-6)
      out.warnings.push_back("edge " + std::to_string(i) + ": length " + Json(*e.length).dump() +
                             " differs from the position distance " + Json(g).dump() +
                             "; lengths are used for length problems, positions for elongation problems");
  }
  return out;
}

ParsedTruss parse_truss(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Translate the byte offset into a line number.
    const std::size_t at = std::min<std::size_t>(e.byte, text.size());
    const long line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(at), '\n');
    throw InputError("line " + std::to_string(line) + ": invalid JSON (" + e.what() + ")");
  }
  return truss_from_json(j);
}

Json truss_to_json(const Truss& t) {
  Json j;
  j["version"] = kFileVersion;
  if (t.flags().allow_coincident) j["flags"] = Json{{"allow_coincident", true}};
  Json vs = Json::array();
  for (int i = 0; i < t.num_vertices(); ++i) {
    Json v;
    v["id"] = i;
    v["x"] = t.vertices()[i].x;
    v["y"] = t.vertices()[i].y;
    if (t.is_lattice()) {
      v["a"] = t.lattice()[i].a;
      v["b"] = t.lattice()[i].b;
    }
    vs.push_back(std::move(v));
  }
  j["vertices"] = std::move(vs);
  Json es = Json::array();
  for (int i = 0; i < t.num_edges(); ++i) {
    const Edge& e = t.edges()[i];
    Json o;
    o["id"] = i;
    o["a"] = e.a;
    o["b"] = e.b;
    if (e.length) o["length"] = *e.length;
    o["removed"] = e.removed;
    if (e.doubled) o["doubled"] = true;
    es.push_back(std::move(o));
  }
  j["edges"] = std::move(es);
  if (!t.faces().empty()) {
    Json fs = Json::array();
    for (const Face& f : t.faces()) fs.push_back(Json::array({f[0], f[1], f[2]}));
    j["faces"] = std::move(fs);
  }
  return j;
}

std::string serialize_truss(const Truss& truss) { return truss_to_json(truss).dump(1) + "\n"; }

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

ParsedTruss load_truss(const std::string& path) {
  try {
    return parse_truss(read_text(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

namespace {

BtpKind kind_from(const std::string& s, const std::string& where) {
  for (BtpKind k : {BtpKind::Segment, BtpKind::Bigon, BtpKind::Triangle, BtpKind::Prism, BtpKind::Pin})
    if (to_string(k) == s) return k;
  field_error(where + ".kind", "unknown kind \"" + s + "\"");
}

Point point_from(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) field_error(where, "expected [x, y]");
  return {as_double(j[0], where), as_double(j[1], where)};
}

PinRef ref_from(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) field_error(where, "expected [part, vertex]");
  return {as_int(j[0], where), as_int(j[1], where)};
}

BtpNode btp_at(const Json& j, const std::string& where) {
  const Json& k = require(j, "kind", where);
  if (!k.is_string()) field_error(where + ".kind", "expected a string");
  BtpNode n;
  n.kind = kind_from(k.get<std::string>(), where);
  if (n.kind == BtpKind::Segment) {
    const Json& p = require_array(j, "points", where);
    if (p.size() != 2) field_error(where + ".points", "expected two points");
    n.segment = {point_from(p[0], where + ".points[0]"), point_from(p[1], where + ".points[1]")};
    return n;
  }
  const Json& ch = require_array(j, "children", where);
  for (std::size_t i = 0; i < ch.size(); ++i) n.children.push_back(btp_at(ch[i], where + ".children[" + std::to_string(i) + "]"));
  const Json& pins = require_array(j, "pins", where);
  for (std::size_t i = 0; i < pins.size(); ++i) {
    const std::string w = where + ".pins[" + std::to_string(i) + "]";
    if (!pins[i].is_array() || pins[i].size() != 2) field_error(w, "expected [[part, vertex], [part, vertex]]");
    n.pins.push_back({ref_from(pins[i][0], w), ref_from(pins[i][1], w)});
  }
  return n;
}

}  // namespace

BtpNode btp_from_json(const Json& j) { return btp_at(j, "btp"); }

Json btp_to_json(const BtpNode& n) {
  Json j;
  j["kind"] = to_string(n.kind);
  if (n.kind == BtpKind::Segment) {
    j["points"] = Json::array({Json::array({n.segment[0].x, n.segment[0].y}), Json::array({n.segment[1].x, n.segment[1].y})});
    return j;
  }
  Json ch = Json::array();
  for (const BtpNode& c : n.children) ch.push_back(btp_to_json(c));
  j["children"] = std::move(ch);
  Json pins = Json::array();
  for (const auto& [p, q] : n.pins)
    pins.push_back(Json::array({Json::array({p.part, p.vertex}), Json::array({q.part, q.vertex})}));
  j["pins"] = std::move(pins);
  return j;
}

Json vector_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Eigen::VectorXd vector_from_json(const Json& j, const std::string& what) {
  if (!j.is_array()) field_error(what, "expected an array of numbers");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = as_double(j[i], what + "[" + std::to_string(i) + "]");
  return v;
}

Json to_json(const AnalysisReport& r) {
  Json j;
  j["v"] = r.v;
  j["e"] = r.e;
  j["rank"] = r.rank;
  j["nullity"] = r.nullity;
  j["c"] = r.c;
  j["maxwell"] = r.maxwell;
  j["is_inf_rigid"] = r.is_inf_rigid;
  j["is_generic"] = r.is_generic;
  Json flex = Json::array();
  for (Eigen::Index k = 0; k < r.flex_basis.cols(); ++k) flex.push_back(vector_json(r.flex_basis.col(k)));
  j["flex_basis"] = std::move(flex);
  j["tolerance"] = r.tolerance;
  j["sigma_max"] = r.sigma_max;
  j["sigma_last_kept"] = r.sigma_last_kept;
  j["sigma_first_dropped"] = r.sigma_first_dropped;
  return j;
}

Json to_json(const DamageReport& r) {
  Json j;
  j["removed"] = r.removed;
  j["survivor_ids"] = r.survivor_ids;
  j["recoverable"] = r.recoverable;
  j["original_c"] = r.original_c;
  j["reduced_c"] = r.reduced_c;
  j["flexes"] = r.flexes;
  j["reconstructed"] = r.reconstructed ? vector_json(*r.reconstructed) : Json(nullptr);
  j["residual"] = r.residual;
  return j;
}

Json to_json(const EquilibriumSolution& s) {
  Json j;
  j["U"] = vector_json(s.U);
  j["lambda"] = vector_json(s.lambda);
  j["edge_ids"] = s.edge_ids;
  j["energy"] = s.energy;
  j["residuals"] = Json{{"force", s.force_residual}, {"compatibility", s.compat_residual}};
  return j;
}

Json to_json(const ACResult& r) {
  Json j;
  j["k"] = r.k;
  j["h"] = r.h;
  j["m"] = r.m;
  j["formula"] = r.formula;
  Json rows = Json::array();
  for (const ACSample& s : r.empirical) {
    rows.push_back(Json{{"n", s.n}, {"c", s.c}, {"predicted_c", s.predicted_c}, {"area", s.area},
                        {"value", s.value}, {"gap", s.gap}});
  }
  j["empirical"] = std::move(rows);
  return j;
}

Json to_json(const HexLimitProbe& p) {
  Json j;
  j["center"] = Json::array({p.center.x, p.center.y});
  j["deltas"] = p.deltas;
  j["W"] = p.W;
  j["W_over_d2"] = p.W_over_d2;
  j["W_over_d3"] = p.W_over_d3;
  j["ink"] = p.ink;
  j["predicted_coefficient"] = p.predicted_coefficient;
  j["literal_limit"] = p.literal_limit;
  j["strain_limit"] = p.strain_limit;
  j["power"] = p.power;
  j["strain_error_order"] = p.strain_error_order;
  return j;
}

Json to_json(const BoundaryProbe& p) {
  Json j;
  j["kappa"] = p.kappa;
  j["b"] = p.b;
  j["rs"] = p.rs;
  j["S"] = p.S;
  j["S_over_r"] = p.S_over_r;
  j["expected"] = p.expected;
  j["limit"] = p.limit;
  j["raw_limit"] = p.raw_limit;
  j["power"] = p.power;
  j["normalization"] = p.normalization;
  return j;
}

std::string compat_csv(const Eigen::MatrixXd& B, const std::vector<int>& edge_ids) {
  std::string out;
  for (std::size_t k = 0; k < edge_ids.size(); ++k) out += (k ? ",edge_" : "edge_") + std::to_string(edge_ids[k]);
  out += "\n";
  char buf[40];
  for (Eigen::Index r = 0; r < B.rows(); ++r) {
    for (Eigen::Index c = 0; c < B.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", B(r, c));
      out += (c ? "," : "") + std::string(buf);
    }
    out += "\n";
  }
  return out;
}

namespace {

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const std::string& s : split_commas(text)) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) throw InputError("\"" + s + "\" is not an integer");
    out.push_back(v);
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const std::string& s : split_commas(text)) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) throw InputError("\"" + s + "\" is not a number");
    out.push_back(v);
  }
  return out;
}

}  // namespace trusskit
