// trusskit command line: a thin shell over the library.
// Exit codes: 0 ok, 1 input error, 2 infeasible, 3 internal.

#include <charconv>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "trusskit/btp.hpp"
#include "trusskit/continuum.hpp"
#include "trusskit/damage.hpp"
#include "trusskit/development.hpp"
#include "trusskit/errors.hpp"
#include "trusskit/io.hpp"
#include "trusskit/lattice.hpp"
#include "trusskit/rigidity.hpp"
#include "trusskit/service.hpp"
#include "trusskit/statics.hpp"
#include "trusskit/svg.hpp"
#include "trusskit/wagon_wheel.hpp"

using namespace trusskit;

namespace {

// Shortest representation that parses back to the same double.
std::string num(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, end);
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    save_text(out, text);
  }
}

void emit_json(const Json& j, const std::string& out) { emit(j.dump(2) + "\n", out); }

Truss load(const std::string& path) {
  ParsedTruss p = path == "-" ? parse_truss(std::string(std::istreambuf_iterator<char>(std::cin), {}))
                              : load_truss(path);
  for (const std::string& w : p.warnings) std::cerr << "warning: " << w << "\n";
  return p.truss;
}

Json load_json(const std::string& path) {
  const std::string text = read_text(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

PatchSpec patch_spec(const std::string& shape, int n, int k, const std::string& holes) {
  PatchSpec spec;
  if (shape == "hexstar") spec.shape = PatchSpec::Shape::Hexstar;
  else if (shape == "rhombus") spec.shape = PatchSpec::Shape::Rhombus;
  else if (shape == "cell") spec.shape = PatchSpec::Shape::Cell;
  else if (shape == "periodic") spec.shape = PatchSpec::Shape::Periodic;
  else throw InputError("unknown shape \"" + shape + "\" (hexstar, rhombus, cell, periodic)");
  spec.n = n;
  spec.cell.k = k;
  spec.cell.holes = parse_holes(holes);
  return spec;
}

// A load file is either a flat array of 2v numbers or {"F": [...]}.
Eigen::VectorXd load_vector(const std::string& path, const char* key) {
  Json j = load_json(path);
  if (j.is_object()) {
    if (!j.contains(key)) throw InputError(path + ": expected field \"" + key + "\"");
    j = j[key];
  }
  return vector_from_json(j, path);
}

Springs load_springs(const Truss& t, const std::string& path) {
  if (path.empty()) return unit_springs(t);
  Eigen::VectorXd v = load_vector(path, "springs");
  if (v.size() != t.num_edges())
    throw InputError("springs need one value per edge id (" + std::to_string(t.num_edges()) + "), got " +
                     std::to_string(v.size()));
  return Springs(v.data(), v.data() + v.size());
}

Point parse_point(const std::string& text) {
  std::vector<double> xy = parse_double_list(text);
  if (xy.size() != 2) throw InputError("expected a point \"x,y\", got \"" + text + "\"");
  return {xy[0], xy[1]};
}

std::vector<int> interior_vertices(const Truss& t) { return topology_report(t).interior_vertices; }

int run(int argc, char** argv) {
  CLI::App app{"Compatibility conditions of planar bar-and-node structures"};
  app.require_subcommand(1);

  // gen
  std::string shape = "hexstar", holes, out;
  int n = 1, k = 1;
  auto* gen = app.add_subcommand("gen", "Generate a triangular-lattice truss");
  gen->add_option("--shape", shape, "hexstar, rhombus, cell or periodic");
  gen->add_option("-n,--n", n, "rhombus size or periodic copies");
  gen->add_option("-k,--k", k, "cell side");
  gen->add_option("--holes", holes, "holes, e.g. \"para(1,1,9,4)\" or \"hex(2,2);edge(0,0,1,0)\"");
  gen->add_option("-o,--out", out, "output file (default stdout)");

  // analyze
  std::string file;
  bool btp = false;
  double tol = kDefaultRankTol;
  auto* analyze_cmd = app.add_subcommand("analyze", "Rank, nullity, c, Maxwell number and flexes");
  analyze_cmd->add_option("file", file, "truss JSON, or a BTP tree with --btp")->required();
  analyze_cmd->add_flag("--btp", btp, "input is a BTP tree");
  analyze_cmd->add_option("--tol", tol, "relative rank tolerance");
  analyze_cmd->add_option("-o,--out", out);

  // compat
  std::string method = "leftnull";
  auto* compat = app.add_subcommand("compat", "Compatibility basis as CSV");
  compat->add_option("file", file)->required();
  compat->add_option("--method", method, "leftnull or projector");
  compat->add_option("--tol", tol);
  compat->add_option("-o,--out", out);

  // wagon
  std::vector<int> centers;
  auto* wagon = app.add_subcommand("wagon", "Wagon wheel rows on L");
  wagon->add_option("file", file)->required();
  wagon->add_option("--vertex", centers, "centers (default: every interior vertex)")->delimiter(',');

  // curvesum
  std::string region;
  auto* curvesum = app.add_subcommand("curvesum", "Summed wagon rows over a region with edge classes");
  curvesum->add_option("file", file)->required();
  curvesum->add_option("--region", region, "interior vertex ids, e.g. 3,4,7 (default: all interior)");

  // develop
  int seed_edge = -1;
  bool flip = false;
  auto* develop_cmd = app.add_subcommand("develop", "Lay out a flat disk from its edge lengths");
  develop_cmd->add_option("file", file)->required();
  develop_cmd->add_option("-o,--out", out, "output truss file (default stdout)");
  develop_cmd->add_option("--seed-edge", seed_edge, "edge placed on the +x axis from the origin");
  develop_cmd->add_flag("--flip", flip, "mirror across the x axis");

  // damage
  std::string remove, lambda_file;
  bool as_json = false;
  auto* damage = app.add_subcommand("damage", "Recoverability after removing links");
  damage->add_option("file", file)->required();
  damage->add_option("--remove", remove, "edge ids, e.g. 3,8")->required();
  damage->add_option("--lambda", lambda_file, "elongations on the survivors, JSON array");
  damage->add_flag("--json", as_json, "emit the full report as JSON");

  // ac
  int empirical = 0;
  auto* ac = app.add_subcommand("ac", "Asymptotic compatibility of a periodic cell");
  ac->add_option("--k", k, "cell side")->required();
  ac->add_option("--holes", holes, "hole spec");
  ac->add_option("--empirical", empirical, "also measure c on n x n tilings for n = 1..N");
  ac->add_flag("--json", as_json);

  // statics
  std::string loads, springs, solve_method = "displacement";
  auto* statics = app.add_subcommand("statics", "Linear elastic equilibrium");
  statics->add_option("file", file)->required();
  statics->add_option("--loads", loads, "JSON array of 2v nodal forces, or {\"F\": [...]}")->required();
  statics->add_option("--springs", springs, "JSON array of spring constants per edge id (default 1)");
  statics->add_option("--method", solve_method, "displacement or elongation");

  // limit
  auto* limit = app.add_subcommand("limit", "Discrete to continuum probes");
  limit->require_subcommand(1);
  std::string field = "e11=y^2; e12=0; e22=0", deltas = "0.2,0.1,0.05,0.025", center = "0,0";
  auto* hexagon = limit->add_subcommand("hexagon", "Rim minus spoke sum on shrinking hexagons");
  hexagon->add_option("--ink-field", field, "strain field \"e11=..; e12=..; e22=..\"");
  hexagon->add_option("--deltas", deltas);
  hexagon->add_option("--center", center, "x,y");
  double kappa = 0.0, b = 0.0;
  std::string rs = "0.04,0.02,0.01,0.005";
  auto* boundary = limit->add_subcommand("boundary", "Girder sum at a curved boundary");
  boundary->add_option("--kappa", kappa);
  boundary->add_option("--b", b);
  boundary->add_option("--eps", field, "strain field \"e11=..; e12=..; e22=..\"");
  boundary->add_option("--rs", rs);

  // svg
  std::string color = "none", values_file;
  int mode = 0;
  auto* svg = app.add_subcommand("svg", "Render a truss as SVG");
  svg->add_option("file", file)->required();
  svg->add_option("--color", color, "none, sigma, elongation or flex");
  svg->add_option("--region", region, "sigma: interior vertex ids (default all interior)");
  svg->add_option("--values", values_file, "elongation: JSON array per edge id");
  svg->add_option("--mode", mode, "flex: column of the flex basis");
  svg->add_option("-o,--out", out);

  // serve
  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve_cmd = app.add_subcommand("serve", "HTTP JSON API for the damage explorer");
  serve_cmd->add_option("file", file, "base truss (default: generated from --shape)");
  serve_cmd->add_option("--shape", shape);
  serve_cmd->add_option("-n,--n", n);
  serve_cmd->add_option("-k,--k", k);
  serve_cmd->add_option("--holes", holes);
  serve_cmd->add_option("--host", host);
  serve_cmd->add_option("--port", port, "0 picks a free port");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (*gen) {
    emit(serialize_truss(gen_patch(patch_spec(shape, n, k, holes))), out);
  } else if (*analyze_cmd) {
    if (btp) {
      const BtpNode tree = btp_from_json(load_json(file));
      const Assembly a = assemble(tree);
      for (const std::string& w : a.warnings) std::cerr << "warning: " << w << "\n";
      Json j = to_json(analyze(a.truss, tol));
      j["predicted_c"] = predicted_compat(tree);
      j["degenerate"] = a.degenerate;
      j["warnings"] = a.warnings;
      j["truss"] = truss_to_json(a.truss);
      emit_json(j, out);
    } else {
      emit_json(to_json(analyze(load(file), tol)), out);
    }
  } else if (*compat) {
    CompatMethod m;
    if (method == "leftnull") m = CompatMethod::LeftNull;
    else if (method == "projector") m = CompatMethod::Projector;
    else throw InputError("unknown method \"" + method + "\" (leftnull, projector)");
    const CompatibilityBasis basis = compatibility_basis(load(file), m, tol);
    emit(compat_csv(basis.B, basis.edge_ids), out);
  } else if (*wagon) {
    const Truss t = load(file);
    if (centers.empty()) centers = interior_vertices(t);
    const Complex cx = build_complex(t);
    for (int v : centers) {
      const WagonRow row = wagon_row(t, cx, v);
      std::cout << row.center << ":";
      for (std::size_t i = 0; i < row.edge_ids.size(); ++i)
        std::cout << (i ? "," : " ") << row.edge_ids[i] << "=" << num(row.coeff_L[i]);
      std::cout << "\n";
    }
  } else if (*curvesum) {
    const Truss t = load(file);
    const std::vector<int> reg = region.empty() ? interior_vertices(t) : parse_int_list(region);
    const CurveSum s = curve_sum(t, reg);
    for (std::size_t i = 0; i < s.edge_ids.size(); ++i) {
      if (s.classes[i] == EdgeClass::None) continue;
      const auto k_i = static_cast<Eigen::Index>(i);
      std::cout << "edge " << s.edge_ids[i] << " " << to_string(s.classes[i]) << " sigma=" << num(s.sigma(k_i))
                << " closed_form=" << num(s.closed_form(k_i)) << "\n";
    }
  } else if (*develop_cmd) {
    const Truss t = load(file);
    const Development d = develop(t, edge_lengths(t), Seed{seed_edge, flip});
    std::cerr << "max length error " << num(d.max_length_error) << "\n";
    emit(serialize_truss(t.with_positions(d.positions)), out);
  } else if (*damage) {
    const Truss t = load(file);
    std::optional<Eigen::VectorXd> lambda;
    if (!lambda_file.empty()) lambda = load_vector(lambda_file, "lambda");
    const DamageReport r = assess_damage(t, parse_int_list(remove), lambda);
    if (as_json) {
      emit_json(to_json(r), "");
    } else {
      std::cout << (r.recoverable ? "recoverable" : "unrecoverable") << ": c " << r.original_c << " -> "
                << r.reduced_c << ", flexes " << r.flexes << "\n";
      if (r.reconstructed) {
        for (std::size_t i = 0; i < r.removed.size(); ++i)
          std::cout << "edge " << r.removed[i] << " lambda=" << num((*r.reconstructed)(static_cast<Eigen::Index>(i)))
                    << "\n";
      }
    }
  } else if (*ac) {
    CellSpec cell;
    cell.k = k;
    cell.holes = parse_holes(holes);
    const ACResult r = asymptotic_compatibility(cell, empirical);
    if (as_json) {
      emit_json(to_json(r), "");
    } else {
      std::cout << "k=" << r.k << " h=" << r.h << " m=" << r.m << " formula=" << num(r.formula) << "\n";
      if (!r.empirical.empty()) std::cout << "n c predicted_c area value gap\n";
      for (const ACSample& s : r.empirical)
        std::cout << s.n << " " << s.c << " " << s.predicted_c << " " << num(s.area) << " " << num(s.value) << " "
                  << num(s.gap) << "\n";
    }
  } else if (*statics) {
    const Truss t = load(file);
    const Springs c = load_springs(t, springs);
    const Eigen::VectorXd F = load_vector(loads, "F");
    EquilibriumSolution s;
    if (solve_method == "displacement") s = solve_displacement(t, c, F);
    else if (solve_method == "elongation") s = solve_elongation(t, c, F);
    else throw InputError("unknown method \"" + solve_method + "\" (displacement, elongation)");
    emit_json(to_json(s), "");
  } else if (*hexagon) {
    emit_json(to_json(hexagon_limit_check(parse_strain(field), parse_point(center), parse_double_list(deltas))), "");
  } else if (*boundary) {
    emit_json(to_json(boundary_limit_check(kappa, b, parse_strain(field), parse_double_list(rs))), "");
  } else if (*svg) {
    const Truss t = load(file);
    const Coloring c = parse_coloring(color);
    std::vector<double> values;
    if (c == Coloring::Sigma) {
      const std::vector<int> reg = region.empty() ? interior_vertices(t) : parse_int_list(region);
      const CurveSum s = curve_sum(t, reg);
      values.assign(static_cast<std::size_t>(t.num_edges()), 0.0);
      for (std::size_t i = 0; i < s.edge_ids.size(); ++i)
        values[static_cast<std::size_t>(s.edge_ids[i])] = s.sigma(static_cast<Eigen::Index>(i));
    } else if (c == Coloring::Elongation) {
      if (values_file.empty()) throw InputError("elongation coloring needs --values");
      const Eigen::VectorXd v = load_vector(values_file, "lambda");
      values.assign(v.data(), v.data() + v.size());
    } else if (c == Coloring::Flex) {
      const AnalysisReport r = analyze(t);
      if (mode < 0 || mode >= r.flex_basis.cols())
        throw InfeasibleError("flex mode " + std::to_string(mode) + " not available, the truss has " +
                              std::to_string(r.flex_basis.cols()) + " flexes");
      const Eigen::VectorXd u = r.flex_basis.col(mode);
      values.assign(u.data(), u.data() + u.size());
    }
    emit(render_svg(t, c, values), out);
  } else if (*serve_cmd) {
    ApiHandler handler(file.empty() ? gen_patch(patch_spec(shape, n, k, holes)) : load(file));
    HttpServer server(handler);
    const int bound = server.bind(host, port);
    std::cerr << "listening on http://" << host << ":" << bound << "/api\n";
    server.run();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
