#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "trusskit/continuum.hpp"
#include "trusskit/errors.hpp"
#include "trusskit/lattice.hpp"

using namespace trusskit;

namespace {

const std::vector<double> kDeltas{0.2, 0.1, 0.05, 0.025};
const std::vector<double> kRs{0.04, 0.02, 0.01, 0.005};

// Exact integral of x^i y^j along a -> b via the binomial expansion.
double exact_line_integral(int i, int j, Point a, Point b) {
  // Integrand (a.x + s dx)^i (a.y + s dy)^j, integrated in s over [0, 1].
  const double dx = b.x - a.x, dy = b.y - a.y;
  auto binom = [](int n, int k) {
    double r = 1.0;
    for (int t = 1; t <= k; ++t) r = r * (n - k + t) / t;
    return r;
  };
  double s = 0.0;
  for (int p = 0; p <= i; ++p)
    for (int q = 0; q <= j; ++q)
      s += binom(i, p) * binom(j, q) * std::pow(a.x, i - p) * std::pow(dx, p) * std::pow(a.y, j - q) *
           std::pow(dy, q) / (p + q + 1);
  return s;
}

}  // namespace

TEST(Poly, ParseFormatAndDerivatives) {
  Poly2 p = parse_poly("3*x^2*y - 0.5y + 1");
  EXPECT_DOUBLE_EQ(p(2.0, 3.0), 3 * 4 * 3 - 1.5 + 1);
  EXPECT_DOUBLE_EQ(p.dx()(2.0, 3.0), 36.0);
  EXPECT_DOUBLE_EQ(p.dy()(2.0, 3.0), 12 - 0.5);
  EXPECT_EQ(p.degree(), 3);
  Poly2 q = parse_poly(format_poly(p));
  EXPECT_EQ(q.terms(), p.terms());
  EXPECT_EQ(parse_poly("(x+y)^1*(x-y)").terms(), parse_poly("x^2 - y^2").terms());
  EXPECT_THROW(parse_poly("x^"), InputError);
  EXPECT_THROW(parse_poly("3 z"), InputError);
  EXPECT_THROW(parse_strain("e13=x"), InputError);
}

TEST(Strain, RigidMotionAndInk) {
  const double a = 0.3, b = -1.2, c = 0.7;
  StrainField rigid = strain_of(Poly2(a) + Poly2(c) * Poly2::y(), Poly2(b) - Poly2(c) * Poly2::x());
  EXPECT_TRUE(rigid.e11.terms().empty());
  EXPECT_TRUE(rigid.e12.terms().empty());
  EXPECT_TRUE(rigid.e22.terms().empty());
  StrainField d = parse_strain("e11=y^2");
  EXPECT_DOUBLE_EQ(ink(d, {0.3, -2.0}), 2.0);
  StrainField u = strain_of(parse_poly("x*y^2"), parse_poly("-x^2*y"));
  EXPECT_EQ(u.e11.terms(), parse_poly("y^2").terms());
  EXPECT_EQ(u.e22.terms(), parse_poly("-x^2").terms());
  EXPECT_TRUE(u.e12.terms().empty());
  EXPECT_DOUBLE_EQ(ink(u, {1.0, 2.0}), 0.0);
}

TEST(Induced, QuadratureIsExact) {
  auto [x, w] = gauss_legendre01(4);
  double sum = 0;
  for (double v : w) sum += v;
  EXPECT_NEAR(sum, 1.0, 1e-15);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int deg = 0; deg <= 6; ++deg)
    for (int i = 0; i <= deg; ++i) {
      const int j = deg - i;
      Point a{u(rng), u(rng)}, b{u(rng), u(rng)};
      StrainField eps{Poly2::monomial(1.0, i, j), Poly2::monomial(0.5, i, j), Poly2::monomial(-2.0, i, j)};
      const double dx = a.x - b.x, dy = a.y - b.y, len = std::hypot(dx, dy);
      const double exact = (dx * dx + dx * dy - 2.0 * dy * dy) * exact_line_integral(i, j, a, b) / len;
      EXPECT_NEAR(induced_rate(eps, a, b), exact, 1e-12 * std::max(1.0, std::abs(exact))) << i << "," << j;
    }
}

TEST(Induced, SimpleFields) {
  Truss t = hexstar();
  StrainField id{Poly2(1.0), Poly2(0.0), Poly2(1.0)};
  for (double L : induced_elongations(t, id)) EXPECT_NEAR(L, 1.0, 1e-14);
  StrainField lin = parse_strain("e11=1+2x; e12=y; e22=x-y");
  Point a{0.2, 0.1}, b{1.1, -0.7}, m{0.65, -0.3};
  const double dx = a.x - b.x, dy = a.y - b.y;
  EXPECT_NEAR(induced_rate(lin, a, b),
              (dx * dx * lin.e11(m) + 2 * dx * dy * lin.e12(m) + dy * dy * lin.e22(m)) / std::hypot(dx, dy), 1e-14);
}

TEST(Induced, EndpointDifferenceIdentity) {
  Poly2 u1 = parse_poly("x^3 - 2x*y + y^2 + 0.3"), u2 = parse_poly("x*y^2 - x + 4y^3");
  StrainField eps = strain_of(u1, u2);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    Point a{u(rng), u(rng)}, b{u(rng), u(rng)};
    const double dx = a.x - b.x, dy = a.y - b.y;
    const double want = (dx * (u1(a) - u1(b)) + dy * (u2(a) - u2(b))) / std::hypot(dx, dy);
    EXPECT_NEAR(induced_rate(eps, a, b), want, 1e-12);
  }
}

TEST(HexLimit, ConstantStrainCancels) {
  HexLimitProbe p = hexagon_limit_check(parse_strain("e11=0.3; e12=-0.2; e22=1.1"), {0, 0}, kDeltas);
  for (double W : p.W) EXPECT_NEAR(W, 0.0, 1e-14);
}

TEST(HexLimit, CompatibleFieldVanishes) {
  StrainField eps = strain_of(parse_poly("x^3*y - y^4 + x^2"), parse_poly("x^4 + x*y^3"));
  HexLimitProbe p = hexagon_limit_check(eps, {0.1, -0.05}, kDeltas);
  EXPECT_NEAR(p.ink, 0.0, 1e-12);
  // Rates induced by an actual displacement satisfy the wagon wheel exactly.
  for (double W : p.W) EXPECT_NEAR(W, 0.0, 1e-14);
}

// The rates sum to +(3/4) Ink delta^3, odd powers of the field drop out.
TEST(HexLimit, ExpansionHasDeltaCubedLead) {
  HexLimitProbe p = hexagon_limit_check(parse_strain("e11=y^2"), {0, 0}, kDeltas);
  EXPECT_DOUBLE_EQ(p.ink, 2.0);
  EXPECT_DOUBLE_EQ(p.predicted_coefficient, -1.5);
  EXPECT_NEAR(p.W[0], 1.5 * 0.008, 1e-14);  // exact for a quadratic field
  EXPECT_NEAR(p.power, 3.0, 1e-9);
  EXPECT_NEAR(p.strain_limit, 1.5, 1e-9);
  EXPECT_NEAR(p.literal_limit, 0.0, 1e-9);
}

TEST(HexLimit, RichardsonOnQuarticField) {
  StrainField eps = parse_strain("e11=y^2 + x^2*y^2 + x^3; e12=x*y^3; e22=x^2 - y^4");
  HexLimitProbe p = hexagon_limit_check(eps, {0, 0}, kDeltas);
  EXPECT_NEAR(p.strain_limit, 0.75 * p.ink, 1e-6 * std::abs(p.ink));
  EXPECT_NEAR(p.strain_error_order, 2.0, 0.05);
}

TEST(HexLimit, ShiftedCenters) {
  StrainField eps = parse_strain("e11=x*y^2 + y^3; e12=x^2*y; e22=x^3 + y^2");
  for (Point c : {Point{0.3, -0.2}, Point{-1.0, 0.5}, Point{2.0, 2.0}}) {
    HexLimitProbe p = hexagon_limit_check(eps, c, kDeltas);
    EXPECT_NEAR(p.strain_limit, 0.75 * ink(eps, c), 1e-6 * std::max(1.0, std::abs(ink(eps, c))));
  }
}

TEST(BoundaryLimit, ProbeCases) {
  BoundaryProbe flat = boundary_limit_check(0.0, 0.0, parse_strain("e11=0.4; e12=0.1; e22=-0.3"), kRs);
  EXPECT_NEAR(flat.expected, 0.0, 1e-15);
  EXPECT_NEAR(flat.limit, 0.0, 1e-9);
  BoundaryProbe grad = boundary_limit_check(0.0, 0.0, parse_strain("e11=y"), kRs);
  EXPECT_DOUBLE_EQ(grad.expected, -1.0);
  EXPECT_NEAR(grad.limit, -1.0, 1e-3);
  EXPECT_NEAR(grad.power, 1.0, 0.05);
  BoundaryProbe bent = boundary_limit_check(0.1, 0.0, parse_strain("e11=1"), kRs);
  EXPECT_DOUBLE_EQ(bent.expected, 0.1);
  EXPECT_NEAR(bent.limit, 0.1, 1e-4);
  EXPECT_NEAR(bent.raw_limit, 0.0, 1e-6);
}

TEST(BoundaryLimit, FirstOrderCoefficient) {
  // On a flat boundary the spoke weight vanishes and only horizontal links
  // remain, so eps22 cannot enter; the slope is sqrt(3)/12 eps11,11.
  StrainField eps = parse_strain("e11=x^2; e22=0.5*y^2");
  BoundaryProbe p = boundary_limit_check(0.0, 0.0, eps, kRs);
  const double want = std::sqrt(3.0) / 12 * 2.0;
  const std::size_t n = kRs.size();
  const double fd = (p.S_over_r[n - 2] - p.S_over_r[n - 1]) / (kRs[n - 2] - kRs[n - 1]);
  EXPECT_NEAR(fd, want, 1e-2);
}

TEST(Limits, InvalidSteps) {
  EXPECT_THROW(hexagon_limit_check(StrainField{}, {0, 0}, {0.1}), InputError);
  EXPECT_THROW(hexagon_limit_check(StrainField{}, {0, 0}, {0.1, 0.2}), InputError);
  EXPECT_THROW(boundary_limit_check(0, 0, StrainField{}, {0.1, -0.05}), InputError);
}
