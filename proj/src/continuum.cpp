#include "trusskit/continuum.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "trusskit/errors.hpp"

namespace trusskit {

Poly2::Poly2(double c) {
  if (c != 0.0) c_[{0, 0}] = c;
}

Poly2 Poly2::monomial(double c, int i, int j) {
  Poly2 p;
  if (c != 0.0) p.c_[{i, j}] = c;
  return p;
}

void Poly2::trim() {
  for (auto it = c_.begin(); it != c_.end();) it = it->second == 0.0 ? c_.erase(it) : std::next(it);
}

double Poly2::operator()(double x, double y) const {
  double s = 0.0;
  for (const auto& [k, c] : c_) s += c * std::pow(x, k.first) * std::pow(y, k.second);
  return s;
}

Poly2 Poly2::dx() const {
  Poly2 p;
  for (const auto& [k, c] : c_)
    if (k.first > 0) p.c_[{k.first - 1, k.second}] += c * k.first;
  p.trim();
  return p;
}

Poly2 Poly2::dy() const {
  Poly2 p;
  for (const auto& [k, c] : c_)
    if (k.second > 0) p.c_[{k.first, k.second - 1}] += c * k.second;
  p.trim();
  return p;
}

int Poly2::degree() const {
  int d = -1;
  for (const auto& [k, c] : c_) d = std::max(d, k.first + k.second);
  return d;
}

Poly2 operator+(const Poly2& a, const Poly2& b) {
  Poly2 p = a;
  for (const auto& [k, c] : b.c_) p.c_[k] += c;
  p.trim();
  return p;
}

Poly2 operator-(const Poly2& a, const Poly2& b) { return a + Poly2(-1.0) * b; }

Poly2 operator*(const Poly2& a, const Poly2& b) {
  Poly2 p;
  for (const auto& [ka, ca] : a.c_)
    for (const auto& [kb, cb] : b.c_) p.c_[{ka.first + kb.first, ka.second + kb.second}] += ca * cb;
  p.trim();
  return p;
}

namespace {

struct PolyParser {
  const std::string& s;
  std::size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("polynomial \"" + s + "\": " + what + " at position " + std::to_string(i));
  }
  int exponent() {
    skip();
    if (i < s.size() && s[i] == '^') {
      ++i;
      skip();
      std::size_t used = 0;
      int e = 0;
      try {
        e = std::stoi(s.substr(i), &used);
      } catch (const std::exception&) {
        fail("expected an exponent");
      }
      if (e < 0) fail("negative exponent");
      i += used;
      return e;
    }
    return 1;
  }
  Poly2 factor() {
    skip();
    if (i >= s.size()) fail("unexpected end");
    const char ch = s[i];
    if (ch == 'x' || ch == 'y') {
      ++i;
      const int e = exponent();
      return ch == 'x' ? Poly2::monomial(1.0, e, 0) : Poly2::monomial(1.0, 0, e);
    }
    if (ch == '(') {
      ++i;
      Poly2 p = sum();
      skip();
      if (i >= s.size() || s[i] != ')') fail("expected ')'");
      ++i;
      const int e = exponent();
      Poly2 out(1.0);
      for (int k = 0; k < e; ++k) out = out * p;
      return out;
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s.substr(i), &used);
    } catch (const std::exception&) {
      fail("expected a number, x or y");
    }
    i += used;
    return Poly2(v);
  }
  Poly2 term() {
    Poly2 p = factor();
    for (;;) {
      skip();
      if (i < s.size() && s[i] == '*') {
        ++i;
        p = p * factor();
      } else if (i < s.size() && (s[i] == 'x' || s[i] == 'y' || s[i] == '(')) {
        p = p * factor();
      } else {
        return p;
      }
    }
  }
  Poly2 sum() {
    skip();
    Poly2 p;
    bool first = true;
    for (;;) {
      skip();
      double sign = 1.0;
      if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        sign = s[i] == '-' ? -1.0 : 1.0;
        ++i;
      } else if (!first) {
        return p;
      }
      p = p + Poly2(sign) * term();
      first = false;
    }
  }
};

}  // namespace

Poly2 parse_poly(const std::string& text) {
  PolyParser p{text};
  Poly2 out = p.sum();
  p.skip();
  if (p.i != text.size()) p.fail("unexpected character");
  return out;
}

std::string format_poly(const Poly2& p) {
  if (p.terms().empty()) return "0";
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& [k, c] : p.terms()) {
    double v = c;
    if (!first) {
      os << (v < 0 ? " - " : " + ");
      v = std::abs(v);
    }
    first = false;
    os << v;
    if (k.first) os << "*x^" << k.first;
    if (k.second) os << "*y^" << k.second;
  }
  return os.str();
}

StrainField parse_strain(const std::string& text) {
  StrainField eps;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("strain component \"" + item + "\" needs name=poly");
    std::string name = item.substr(0, eq);
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    const Poly2 p = parse_poly(item.substr(eq + 1));
    if (name == "e11") eps.e11 = p;
    else if (name == "e12" || name == "e21") eps.e12 = p;
    else if (name == "e22") eps.e22 = p;
    else throw InputError("unknown strain component \"" + name + "\"");
  }
  return eps;
}

std::string format_strain(const StrainField& eps) {
  return "e11=" + format_poly(eps.e11) + "; e12=" + format_poly(eps.e12) + "; e22=" + format_poly(eps.e22);
}

StrainField strain_of(const Poly2& u1, const Poly2& u2) {
  return {u1.dx(), Poly2(0.5) * (u1.dy() + u2.dx()), u2.dy()};
}

double ink(const StrainField& eps, Point p) {
  return eps.e11.dy().dy()(p) - 2.0 * eps.e12.dx().dy()(p) + eps.e22.dx().dx()(p);
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre01(int n) {
  std::vector<double> x(n), w(n);
  for (int k = 0; k < n; ++k) {
    // Chebyshev guess then Newton on P_n.
    double t = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      const double pn = std::legendre(n, t), pm = n > 1 ? std::legendre(n - 1, t) : 1.0;
      dp = n * (t * pn - pm) / (t * t - 1.0);
      const double step = pn / dp;
      t -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double pn = std::legendre(n, t), pm = n > 1 ? std::legendre(n - 1, t) : 1.0;
    dp = n * (t * pn - pm) / (t * t - 1.0);
    x[k] = 0.5 * (1.0 + t);
    w[k] = 1.0 / ((1.0 - t * t) * dp * dp);  // 2 / ((1-t^2) P'^2), halved for [0, 1]
  }
  return {x, w};
}

double induced_rate(const StrainField& eps, Point a, Point b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  const double len = std::hypot(dx, dy);
  if (len == 0.0) throw InputError("induced rate of a zero-length link");
  const int deg = std::max({eps.e11.degree(), eps.e12.degree(), eps.e22.degree(), 0});
  const auto [xs, ws] = gauss_legendre01((deg + 3) / 2);
  double s = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const Point g{a.x + xs[k] * (b.x - a.x), a.y + xs[k] * (b.y - a.y)};
    s += ws[k] * (dx * dx * eps.e11(g) + 2.0 * dx * dy * eps.e12(g) + dy * dy * eps.e22(g));
  }
  return s / len;
}

std::vector<double> induced_elongations(const Truss& truss, const StrainField& eps) {
  std::vector<double> L;
  for (int id : truss.active_edges()) {
    const Edge& e = truss.edges()[id];
    L.push_back(induced_rate(eps, truss.vertices()[e.a], truss.vertices()[e.b]));
  }
  return L;
}

double extrapolate_to_zero(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.empty() || xs.size() != ys.size()) throw InputError("extrapolation needs matching nonempty samples");
  // Neville's scheme evaluated at 0.
  std::vector<double> p = ys;
  const std::size_t n = xs.size();
  for (std::size_t m = 1; m < n; ++m)
    for (std::size_t i = 0; i + m < n; ++i)
      p[i] = (xs[i + m] * p[i] - xs[i] * p[i + 1]) / (xs[i + m] - xs[i]);
  return p[0];
}

namespace {

void check_steps(const std::vector<double>& h, const char* name) {
  if (h.size() < 2) throw InputError(std::string("need at least two ") + name + " values");
  for (std::size_t k = 0; k < h.size(); ++k) {
    if (!(h[k] > 0.0)) throw InputError(std::string(name) + " values must be positive");
    if (k && !(h[k] < h[k - 1])) throw InputError(std::string(name) + " values must be strictly decreasing");
  }
}

double slope(double h0, double v0, double h1, double v1) {
  return std::log(std::abs(v1) / std::abs(v0)) / std::log(h1 / h0);
}

}  // namespace

HexLimitProbe hexagon_limit_check(const StrainField& eps, Point center, const std::vector<double>& deltas) {
  check_steps(deltas, "delta");
  HexLimitProbe out;
  out.center = center;
  out.deltas = deltas;
  out.ink = ink(eps, center);
  out.predicted_coefficient = -0.75 * out.ink;
  for (double d : deltas) {
    std::array<Point, 6> v;
    for (int k = 0; k < 6; ++k)
      v[k] = {center.x + d * std::cos(k * std::numbers::pi / 3), center.y + d * std::sin(k * std::numbers::pi / 3)};
    double W = 0.0;
    for (int k = 0; k < 6; ++k) W += induced_rate(eps, v[k], v[(k + 1) % 6]) - induced_rate(eps, center, v[k]);
    out.W.push_back(W);
    out.W_over_d2.push_back(W / (d * d));
    out.W_over_d3.push_back(W / (d * d * d));
  }
  std::vector<double> h2;
  for (double d : deltas) h2.push_back(d * d);
  out.literal_limit = extrapolate_to_zero(deltas, out.W_over_d2);
  out.strain_limit = extrapolate_to_zero(h2, out.W_over_d3);
  const std::size_t n = deltas.size();
  out.power = slope(deltas[n - 2], out.W[n - 2], deltas[n - 1], out.W[n - 1]);
  const double target = 0.75 * out.ink;
  const double e0 = out.W_over_d3[n - 2] - target, e1 = out.W_over_d3[n - 1] - target;
  // Errors at round-off carry no order: the expansion is exact there.
  const double noise = 64 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(target));
  out.strain_error_order = std::max(std::abs(e0), std::abs(e1)) <= noise
                               ? std::numeric_limits<double>::infinity()
                               : slope(deltas[n - 2], e0, deltas[n - 1], e1);
  return out;
}

namespace {

struct Girder {
  Point v0, v1, v2, v3, v4;
};

Point rotate(Point p, double a) {
  return {std::cos(a) * p.x - std::sin(a) * p.y, std::sin(a) * p.x + std::cos(a) * p.y};
}

// Boundary point at chord distance r (negative r on the other side).
Point curve_point(double kappa, double b, double r) {
  const double s = kappa / 2 * r + b / 6 * r * r;
  if (std::abs(s) >= 1.0) throw InputError("r too large for the boundary curvature");
  return {r * std::sqrt(1.0 - s * s), r * s};
}

Girder girder(double kappa, double b, double r) {
  Girder g;
  g.v1 = curve_point(kappa, b, r);
  g.v4 = curve_point(kappa, b, -r);
  g.v2 = rotate(g.v1, std::numbers::pi / 3);
  g.v3 = rotate(g.v4, -std::numbers::pi / 3);
  return g;
}

double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

}  // namespace

BoundaryProbe boundary_limit_check(double kappa, double b, const StrainField& eps, const std::vector<double>& rs) {
  check_steps(rs, "r");
  BoundaryProbe out;
  out.kappa = kappa;
  out.b = b;
  out.rs = rs;
  const Point o{0.0, 0.0};
  out.expected = -eps.e11.dy()(o) + (eps.e11(o) - eps.e22(o)) * kappa;
  out.normalization = "S/r";
  for (double r : rs) {
    const Girder g = girder(kappa, b, r);
    const double l23 = dist(g.v2, g.v3);
    const double h1 = std::sqrt(3.0) / 2 * dist(g.v0, g.v1);
    const Point mid{0.5 * (g.v2.x + g.v3.x), 0.5 * (g.v2.y + g.v3.y)};
    const double h2 = dist(g.v0, mid);
    const double cos_beta = l23 / (2.0 * dist(g.v0, g.v2));
    auto L = [&](Point p, Point q) { return induced_rate(eps, p, q); };
    const double S = (L(g.v0, g.v1) + L(g.v4, g.v0)) / (2.0 * h1) - L(g.v2, g.v3) / h2 +
                     (cos_beta / h2 - 0.5 / h1) * (L(g.v0, g.v2) + L(g.v0, g.v3));
    out.S.push_back(S);
    out.S_over_r.push_back(S / r);
  }
  out.limit = extrapolate_to_zero(rs, out.S_over_r);
  out.raw_limit = extrapolate_to_zero(rs, out.S);
  const std::size_t n = rs.size();
  out.power = slope(rs[n - 2], out.S[n - 2], rs[n - 1], out.S[n - 1]);
  return out;
}

}  // namespace trusskit
