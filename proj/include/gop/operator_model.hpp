#pragma once

// Canonical representation of conical G-operators: cone geometry, group
// action, weights, and the two concrete operator families (first-order
// family on the sphere, zero-order shift family on the half-line) plus a
// generic banded escape hatch.

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gop/errors.hpp"

namespace gop {

using Complex = std::complex<double>;

enum class BaseKind { Circle, Point };

struct ConicalPoint {
  std::string label;
  double weight = 0.0;  // gamma at this point
};

struct ConeGeometry {
  int base_dim = 0;
  BaseKind base_kind = BaseKind::Point;
  std::vector<ConicalPoint> conical_points;  // one or two
};

enum class GroupKind { Z, Z2 };

struct GroupGenerator {
  double beta = 0.0;                 // radial exponent: g(r,w) = (r e^beta, g(w))
  std::optional<double> base_angle;  // rotation angle on the circle base
};

struct GroupAction {
  GroupKind group = GroupKind::Z;
  std::vector<GroupGenerator> generators;
};

enum class FamilyKind { SphereFirstOrder, HalflineZeroOrder, GenericBanded };

// Symbol data of one banded term: contribution (c0 + c_eta*eta + c_tau*(i tau))
// attached to a shift index.  Used by the GenericBanded family.
struct BandTerm {
  Complex c0{0.0, 0.0};
  Complex c_eta{0.0, 0.0};
  Complex c_tau{0.0, 0.0};
};

struct SphereParams {
  Complex a, b, c, d;
  double beta = 1.0;
  double phi0 = 0.0;
};

struct HalflineParams {
  Complex a, b;
  double alpha = 1.0;
  double beta = 1.0;
  bool commensurable_warning = false;
};

struct ConicalGOperator {
  ConeGeometry geometry;
  GroupAction action;
  int order = 0;
  FamilyKind family = FamilyKind::GenericBanded;
  SphereParams sphere;      // valid when family == SphereFirstOrder
  HalflineParams halfline;  // valid when family == HalflineZeroOrder
  std::map<int, BandTerm> banded_terms;  // shift index -> coefficient data
  double gamma_plus = 0.0;   // weight at r = 0
  double gamma_minus = 0.0;  // weight at r = infinity

  // Distinct shift indices with a nonzero coefficient.
  std::vector<int> shift_indices() const;
};

// D = -r d/dr + (a + b T)(-i d/dphi) + (c + d T) on the sphere, order 1.
ConicalGOperator make_sphere_operator(Complex a, Complex b, Complex c,
                                      Complex d, double beta, double phi0,
                                      double gamma_plus, double gamma_minus);

// A = 1 + a T_alpha + b T_beta on the half-line, order 0.  Sets the
// commensurability warning when alpha/beta is within 1e-12 of p/q, p,q <= 64.
ConicalGOperator make_halfline_operator(Complex a, Complex b, double alpha,
                                        double beta, double gamma_plus,
                                        double gamma_minus);

// Banded constant-coefficient operator on the sphere cylinder; escape hatch
// for symbols that are not of the two closed-form families.
ConicalGOperator make_generic_banded(const std::map<int, BandTerm>& terms,
                                     int order, double beta, double phi0,
                                     double gamma_plus, double gamma_minus);

// True when x/y is within tol of a rational p/q with p, q <= max_den
// (continued-fraction expansion).
bool commensurable(double x, double y, int max_den = 64, double tol = 1e-12);

}  // namespace gop
