#include "trusskit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "trusskit/errors.hpp"

namespace trusskit {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", std::abs(v) < 5e-4 ? 0.0 : v);
  return buf;
}

// Diverging blue-grey-red scale on t in [-1, 1].
std::string diverging(double t) {
  t = std::clamp(t, -1.0, 1.0);
  const int grey = 200;
  int r, g, b;
  if (t >= 0) {
    r = grey + static_cast<int>(std::lround((178 - grey) * t));
    g = grey + static_cast<int>(std::lround((24 - grey) * t));
    b = grey + static_cast<int>(std::lround((43 - grey) * t));
  } else {
    r = grey + static_cast<int>(std::lround((33 - grey) * -t));
    g = grey + static_cast<int>(std::lround((102 - grey) * -t));
    b = grey + static_cast<int>(std::lround((172 - grey) * -t));
  }
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace

Coloring parse_coloring(const std::string& name) {
  if (name == "none") return Coloring::None;
  if (name == "sigma") return Coloring::Sigma;
  if (name == "elongation") return Coloring::Elongation;
  if (name == "flex") return Coloring::Flex;
  throw InputError("unknown coloring \"" + name + "\" (none, sigma, elongation, flex)");
}

std::string render_svg(const Truss& t, Coloring coloring, const std::vector<double>& values) {
  const bool per_edge = coloring == Coloring::Sigma || coloring == Coloring::Elongation;
  if (per_edge && static_cast<int>(values.size()) != t.num_edges())
    throw InputError("coloring needs " + std::to_string(t.num_edges()) + " edge values, got " +
                     std::to_string(values.size()));
  if (coloring == Coloring::Flex && static_cast<int>(values.size()) != 2 * t.num_vertices())
    throw InputError("flex coloring needs " + std::to_string(2 * t.num_vertices()) + " displacement values, got " +
                     std::to_string(values.size()));

  double minx = 0, maxx = 0, miny = 0, maxy = 0;
  for (int i = 0; i < t.num_vertices(); ++i) {
    const Point p = t.vertices()[i];
    if (i == 0) minx = maxx = p.x, miny = maxy = p.y;
    minx = std::min(minx, p.x), maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y), maxy = std::max(maxy, p.y);
  }
  const double span = std::max({maxx - minx, maxy - miny, 1e-9});
  const double scale = 400.0 / span, pad = 40.0;
  const double width = (maxx - minx) * scale + 2 * pad, height = (maxy - miny) * scale + 2 * pad;
  const double legend = coloring == Coloring::None ? 0.0 : 40.0;
  auto X = [&](double x) { return pad + (x - minx) * scale; };
  auto Y = [&](double y) { return pad + (maxy - y) * scale; };  // y up

  double vmax = 0.0;
  for (double v : values) vmax = std::max(vmax, std::abs(v));

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" + num(height + legend) +
       "\" viewBox=\"0 0 " + num(width) + " " + num(height + legend) + "\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + num(width) + "\" height=\"" + num(height + legend) + "\" fill=\"white\"/>\n";
  s += "<g id=\"edges\" stroke-linecap=\"round\">\n";
  for (int i = 0; i < t.num_edges(); ++i) {
    const Edge& e = t.edges()[i];
    const Point a = t.vertices()[e.a], b = t.vertices()[e.b];
    std::string color = "#333333";
    if (per_edge && !e.removed) color = diverging(vmax > 0 ? values[i] / vmax : 0.0);
    s += "<line data-edge=\"" + std::to_string(i) + "\" x1=\"" + num(X(a.x)) + "\" y1=\"" + num(Y(a.y)) + "\" x2=\"" +
         num(X(b.x)) + "\" y2=\"" + num(Y(b.y)) + "\" stroke=\"" + (e.removed ? "#aaaaaa" : color) +
         "\" stroke-width=\"" + (per_edge ? "4" : "2") + "\"" +
         (e.removed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
  }
  s += "</g>\n<g id=\"vertices\">\n";
  for (int i = 0; i < t.num_vertices(); ++i) {
    const Point p = t.vertices()[i];
    s += "<circle data-vertex=\"" + std::to_string(i) + "\" cx=\"" + num(X(p.x)) + "\" cy=\"" + num(Y(p.y)) +
         "\" r=\"4\" fill=\"#111111\"/>\n";
  }
  s += "</g>\n";
  if (coloring == Coloring::Flex) {
    // Arrows scaled so the longest is a fifth of the drawing.
    const double k = vmax > 0 ? 0.2 * span / vmax : 0.0;
    s += "<defs><marker id=\"head\" markerWidth=\"6\" markerHeight=\"6\" refX=\"5\" refY=\"3\" orient=\"auto\">"
         "<path d=\"M0,0 L6,3 L0,6 z\" fill=\"#b2182b\"/></marker></defs>\n<g id=\"flex\">\n";
    for (int i = 0; i < t.num_vertices(); ++i) {
      const Point p = t.vertices()[i];
      const double ux = values[2 * i] * k, uy = values[2 * i + 1] * k;
      if (std::hypot(ux, uy) * scale < 0.5) continue;
      s += "<path d=\"M" + num(X(p.x)) + "," + num(Y(p.y)) + " L" + num(X(p.x + ux)) + "," + num(Y(p.y + uy)) +
           "\" stroke=\"#b2182b\" stroke-width=\"2\" fill=\"none\" marker-end=\"url(#head)\"/>\n";
    }
    s += "</g>\n";
  } else if (per_edge) {
    s += "<defs><linearGradient id=\"scale\">";
    for (int k = 0; k <= 4; ++k)
      s += "<stop offset=\"" + num(k / 4.0) + "\" stop-color=\"" + diverging(-1.0 + k / 2.0) + "\"/>";
    s += "</linearGradient></defs>\n<g id=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s += "<rect x=\"" + num(pad) + "\" y=\"" + num(height + 5) + "\" width=\"200\" height=\"12\" fill=\"url(#scale)\"/>\n";
    s += "<text x=\"" + num(pad) + "\" y=\"" + num(height + 32) + "\">" + num(-vmax) + "</text>\n";
    s += "<text x=\"" + num(pad + 200) + "\" y=\"" + num(height + 32) + "\" text-anchor=\"end\">" + num(vmax) + "</text>\n";
    s += "<text x=\"" + num(pad + 210) + "\" y=\"" + num(height + 15) + "\">" +
         (coloring == Coloring::Sigma ? "sigma" : "elongation") + "</text>\n</g>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace trusskit
