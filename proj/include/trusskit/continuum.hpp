#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "trusskit/truss.hpp"

namespace trusskit {

// Bivariate polynomial, coefficient of x^i y^j keyed by (i, j).
class Poly2 {
 public:
  Poly2() = default;
  Poly2(double c);  // NOLINT: constants convert implicitly
  static Poly2 monomial(double c, int i, int j);
  static Poly2 x() { return monomial(1.0, 1, 0); }
  static Poly2 y() { return monomial(1.0, 0, 1); }

  double operator()(double x, double y) const;
  double operator()(Point p) const { return (*this)(p.x, p.y); }
  Poly2 dx() const;
  Poly2 dy() const;
  int degree() const;  // -1 for the zero polynomial
  const std::map<std::pair<int, int>, double>& terms() const { return c_; }

  friend Poly2 operator+(const Poly2& a, const Poly2& b);
  friend Poly2 operator-(const Poly2& a, const Poly2& b);
  friend Poly2 operator*(const Poly2& a, const Poly2& b);

 private:
  void trim();
  std::map<std::pair<int, int>, double> c_;
};

// Sums of monomials such as "3*x^2*y - 0.5*y + 1". Throws InputError.
Poly2 parse_poly(const std::string& text);
std::string format_poly(const Poly2& p);

struct StrainField {
  Poly2 e11, e12, e22;
};

// "e11=y^2; e12=0; e22=0", missing components are zero. Throws InputError.
StrainField parse_strain(const std::string& text);
std::string format_strain(const StrainField& eps);

StrainField strain_of(const Poly2& u1, const Poly2& u2);
double ink(const StrainField& eps, Point p);

// Rate of change of |a - b| induced by eps, exact Gauss-Legendre quadrature.
double induced_rate(const StrainField& eps, Point a, Point b);
// Rates L over the active edges in ascending id.
std::vector<double> induced_elongations(const Truss& truss, const StrainField& eps);

// Nodes and weights on [0, 1], exact for degree 2n - 1.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre01(int n);

// Value at zero of the interpolating polynomial through (x_k, y_k).
double extrapolate_to_zero(const std::vector<double>& xs, const std::vector<double>& ys);

struct HexLimitProbe {
  Point center;
  std::vector<double> deltas;
  std::vector<double> W;              // rim minus spoke rate sums
  std::vector<double> W_over_d2;      // the literal normalization
  std::vector<double> W_over_d3;      // rates divided by link length, then over delta^2
  double ink = 0.0;                   // at the center
  double predicted_coefficient = 0.0;     // -3/4 Ink
  double literal_limit = 0.0;         // extrapolated W / delta^2
  double strain_limit = 0.0;          // extrapolated W / delta^3
  double power = 0.0;                 // log-log slope of |W| over the two smallest deltas
  double strain_error_order = 0.0;    // convergence order of W / delta^3 toward 3/4 Ink, inf when exact
};

// Regular hexagon of side delta centered at center, first vertex along +x.
HexLimitProbe hexagon_limit_check(const StrainField& eps, Point center, const std::vector<double>& deltas);

struct BoundaryProbe {
  double kappa = 0.0;
  double b = 0.0;
  std::vector<double> rs;
  std::vector<double> S;        // girder sum with rim half weights
  std::vector<double> S_over_r; // the normalization with a finite limit
  double expected = 0.0;        // -eps11,2 + (eps11 - eps22) kappa at the origin
  double limit = 0.0;           // extrapolated S / r
  double raw_limit = 0.0;       // extrapolated S
  double power = 0.0;           // log-log slope of |S|, 1 when the limit is nonzero
  std::string normalization;    // "S/r"
};

BoundaryProbe boundary_limit_check(double kappa, double b, const StrainField& eps, const std::vector<double>& rs);

}  // namespace trusskit
