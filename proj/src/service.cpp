#include "trusskit/service.hpp"

#include <regex>

#include "trusskit/damage.hpp"
#include "trusskit/errors.hpp"
#include "trusskit/lattice.hpp"
#include "trusskit/rigidity.hpp"
#include "trusskit/topology.hpp"
#include "trusskit/wagon_wheel.hpp"

// after Eigen: resolv.h defines a res macro
#include "httplib.h"

namespace trusskit {

namespace {

Json error_body(const std::string& message) { return Json{{"error", message}}; }

Json parse_body(const std::string& body) {
  if (body.empty()) return Json::object();
  try {
    return Json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("request body is not JSON: ") + e.what());
  }
}

std::vector<int> removed_ids(const Truss& t) {
  std::vector<int> ids;
  for (int i = 0; i < t.num_edges(); ++i)
    if (t.edges()[i].removed) ids.push_back(i);
  return ids;
}

Json with_snapshot(Json body, std::uint64_t id) {
  body["snapshot"] = id;
  return body;
}

}  // namespace

ApiHandler::ApiHandler(Truss base) { replace_base(std::move(base)); }

std::shared_ptr<const Snapshot> ApiHandler::snapshot() const {
  std::shared_lock lock(mutex_);
  return state_;
}

void ApiHandler::replace_base(Truss t) {
  auto s = std::make_shared<Snapshot>();
  s->id = state_ ? state_->id + 1 : 1;
  s->base = t;
  s->current = std::move(t);
  s->analysis = to_json(analyze(s->current));
  std::unique_lock lock(mutex_);
  state_ = std::move(s);
}

bool ApiHandler::stale(const Json& body, const std::string& if_match, std::uint64_t current) const {
  if (!if_match.empty()) {
    std::string tag = if_match;
    tag.erase(std::remove(tag.begin(), tag.end(), '"'), tag.end());
    return tag != std::to_string(current);
  }
  if (body.is_object() && body.contains("snapshot")) {
    const Json& s = body["snapshot"];
    if (!s.is_number_unsigned() && !s.is_number_integer()) throw InputError("snapshot must be an integer");
    return s.get<std::uint64_t>() != current;
  }
  return false;
}

ApiResponse ApiHandler::handle(const std::string& method, const std::string& path, const std::string& body,
                               const std::string& if_match) {
  static const std::regex toggle_re(R"(^/api/edges/(-?\d+)/toggle$)");
  try {
    std::smatch m;
    if (path == "/api/truss") {
      if (method == "GET") return get_truss();
      if (method == "PUT") return put_truss(parse_body(body));
    } else if (path == "/api/generate") {
      if (method == "POST") return generate(parse_body(body));
    } else if (std::regex_match(path, m, toggle_re)) {
      if (method == "POST") return toggle(std::stoi(m[1].str()), parse_body(body), if_match);
    } else if (path == "/api/analysis") {
      if (method == "GET") return analysis();
    } else if (path == "/api/flexes") {
      if (method == "GET") return flexes();
    } else if (path == "/api/wagonwheels") {
      if (method == "GET") return wagonwheels();
    } else if (path == "/api/history") {
      if (method == "GET") return history();
    } else if (path == "/api/reset") {
      if (method == "POST") return reset(parse_body(body), if_match);
    } else {
      return {404, error_body("no route " + path)};
    }
    return {405, error_body(method + " not allowed on " + path)};
  } catch (const InputError& e) {
    return {400, error_body(e.what())};
  } catch (const InfeasibleError& e) {
    return {422, error_body(e.what())};
  } catch (const std::exception& e) {
    return {500, error_body(e.what())};
  }
}

ApiResponse ApiHandler::get_truss() const {
  auto s = snapshot();
  return {200, with_snapshot(Json{{"truss", truss_to_json(s->current)}}, s->id)};
}

ApiResponse ApiHandler::put_truss(const Json& body) {
  ParsedTruss p = truss_from_json(body.contains("truss") ? body["truss"] : body);
  std::lock_guard w(writer_);
  replace_base(std::move(p.truss));
  auto s = snapshot();
  Json out{{"analysis", s->analysis}, {"warnings", p.warnings}};
  return {200, with_snapshot(std::move(out), s->id)};
}

ApiResponse ApiHandler::generate(const Json& body) {
  if (!body.contains("shape") || !body["shape"].is_string()) throw InputError("generate needs a \"shape\" string");
  const std::string shape = body["shape"].get<std::string>();
  auto int_field = [&](const char* key, int fallback) {
    if (!body.contains(key)) return fallback;
    if (!body[key].is_number_integer()) throw InputError(std::string(key) + " must be an integer");
    return body[key].get<int>();
  };
  PatchSpec spec;
  spec.n = int_field("n", 1);
  spec.cell.k = int_field("k", 1);
  if (body.contains("holes")) {
    if (!body["holes"].is_string()) throw InputError("holes must be a string");
    spec.cell.holes = parse_holes(body["holes"].get<std::string>());
  }
  if (shape == "hexstar") spec.shape = PatchSpec::Shape::Hexstar;
  else if (shape == "rhombus") spec.shape = PatchSpec::Shape::Rhombus;
  else if (shape == "cell") spec.shape = PatchSpec::Shape::Cell;
  else if (shape == "periodic") spec.shape = PatchSpec::Shape::Periodic;
  else throw InputError("unknown shape \"" + shape + "\"");
  Truss t = gen_patch(spec);
  std::lock_guard w(writer_);
  replace_base(std::move(t));
  auto s = snapshot();
  return {200, with_snapshot(Json{{"truss", truss_to_json(s->current)}, {"analysis", s->analysis}}, s->id)};
}

ApiResponse ApiHandler::toggle(int edge, const Json& body, const std::string& if_match) {
  std::lock_guard w(writer_);
  auto s = snapshot();
  if (stale(body, if_match, s->id))
    return {409, with_snapshot(error_body("snapshot is out of date"), s->id)};
  if (edge < 0 || edge >= s->current.num_edges()) return {404, error_body("no edge " + std::to_string(edge))};
  const bool now_removed = !s->current.edges()[edge].removed;
  auto next = std::make_shared<Snapshot>(*s);
  next->id = s->id + 1;
  next->current = s->current.with_removed({edge}, now_removed);
  const AnalysisReport r = analyze(next->current);
  next->analysis = to_json(r);
  // Recoverability of the whole removal set relative to the base truss.
  std::vector<int> gone;
  for (int id : removed_ids(next->current))
    if (!next->base.edges()[id].removed) gone.push_back(id);
  Json damage = nullptr;
  if (!gone.empty()) {
    try {
      damage = to_json(assess_damage(next->current.with_removed(gone, false), gone));
    } catch (const std::exception& e) {
      damage = error_body(e.what());
    }
  }
  next->history.push_back({edge, now_removed, r.c, r.nullity, r.is_inf_rigid});
  {
    std::unique_lock lock(mutex_);
    state_ = next;
  }
  Json out{{"edge", edge}, {"removed", now_removed}, {"analysis", next->analysis}, {"damage", damage}};
  return {200, with_snapshot(std::move(out), next->id)};
}

ApiResponse ApiHandler::analysis() const {
  auto s = snapshot();
  return {200, with_snapshot(s->analysis, s->id)};
}

ApiResponse ApiHandler::flexes() const {
  auto s = snapshot();
  return {200, with_snapshot(Json{{"flexes", s->analysis["flex_basis"]}}, s->id)};
}

ApiResponse ApiHandler::wagonwheels() const {
  auto s = snapshot();
  Json rows = Json::array();
  Json note = nullptr;
  try {
    Complex cx = build_complex(s->current);
    for (int v = 0; v < s->current.num_vertices(); ++v) {
      if (!cx.interior[v]) continue;
      WagonRow row = wagon_row(s->current, cx, v);
      rows.push_back(Json{{"center", row.center},
                          {"edge_ids", row.edge_ids},
                          {"coeff_L", row.coeff_L},
                          {"coeff_lambda", row.coeff_lambda},
                          {"regular", row.regular}});
    }
  } catch (const std::exception& e) {
    note = e.what();
  }
  return {200, with_snapshot(Json{{"rows", rows}, {"note", note}}, s->id)};
}

ApiResponse ApiHandler::history() const {
  auto s = snapshot();
  Json h = Json::array();
  for (const HistoryEntry& e : s->history)
    h.push_back(Json{{"edge", e.edge}, {"removed", e.removed}, {"c", e.c}, {"nullity", e.nullity},
                     {"is_inf_rigid", e.recoverable}});
  return {200, with_snapshot(Json{{"history", h}}, s->id)};
}

ApiResponse ApiHandler::reset(const Json& body, const std::string& if_match) {
  std::lock_guard w(writer_);
  auto s = snapshot();
  if (stale(body, if_match, s->id))
    return {409, with_snapshot(error_body("snapshot is out of date"), s->id)};
  replace_base(s->base);
  auto n = snapshot();
  return {200, with_snapshot(Json{{"analysis", n->analysis}}, n->id)};
}

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(ApiHandler& handler) : impl_(std::make_unique<Impl>()) {
  auto route = [&handler](const httplib::Request& req, httplib::Response& res) {
    ApiResponse r = handler.handle(req.method, req.path, req.body, req.get_header_value("If-Match"));
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  impl_->server.Get(R"(/api/.*)", route);
  impl_->server.Put(R"(/api/.*)", route);
  impl_->server.Post(R"(/api/.*)", route);
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int got = impl_->server.bind_to_any_port(host);
    if (got < 0) throw InputError("cannot bind " + host);
    return got;
  }
  if (!impl_->server.bind_to_port(host, port)) throw InputError("cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void HttpServer::run() { impl_->server.listen_after_bind(); }
void HttpServer::stop() { impl_->server.stop(); }

void serve(ApiHandler& handler, const std::string& host, int port) {
  HttpServer server(handler);
  server.bind(host, port);
  server.run();
}

}  // namespace trusskit
