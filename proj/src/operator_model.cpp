#include "gop/operator_model.hpp"

#include <cmath>

namespace gop {

namespace {

void require_finite(Complex z, const char* name) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw Error(ErrorCode::InvalidInput,
                std::string(name) + " must be finite");
}

void require_finite(double x, const char* name) {
  if (!std::isfinite(x))
    throw Error(ErrorCode::InvalidInput,
                std::string(name) + " must be finite");
}

}  // namespace

std::vector<int> ConicalGOperator::shift_indices() const {
  std::vector<int> out;
  switch (family) {
    case FamilyKind::SphereFirstOrder:
      out.push_back(0);  // -r d/dr is always present
      if (sphere.b != Complex(0, 0) || sphere.d != Complex(0, 0))
        out.push_back(1);
      break;
    case FamilyKind::HalflineZeroOrder:
      // shifts indexed by word (j,k) acting as exp(j*alpha + k*beta);
      // report the flat indices {0, 1, 2} for (1, T_alpha, T_beta)
      out.push_back(0);
      if (halfline.a != Complex(0, 0)) out.push_back(1);
      if (halfline.b != Complex(0, 0)) out.push_back(2);
      break;
    case FamilyKind::GenericBanded:
      for (const auto& [l, t] : banded_terms)
        if (t.c0 != Complex(0, 0) || t.c_eta != Complex(0, 0) ||
            t.c_tau != Complex(0, 0))
          out.push_back(l);
      break;
  }
  return out;
}

bool commensurable(double x, double y, int max_den, double tol) {
  if (y == 0.0) return true;
  double ratio = x / y;
  // continued-fraction convergents p/q with q <= max_den
  double v = ratio;
  long long p0 = 1, q0 = 0, p1 = 0, q1 = 1;  // convergents p0/q0, p1/q1
  for (int depth = 0; depth < 64; ++depth) {
    double fl = std::floor(v);
    long long ai = static_cast<long long>(fl);
    long long p = ai * p0 + p1;
    long long q = ai * q0 + q1;
    if (q > max_den || p > max_den || p < -max_den) break;
    if (q > 0 && std::abs(ratio - double(p) / double(q)) <= tol) return true;
    p1 = p0; q1 = q0; p0 = p; q0 = q;
    double frac = v - fl;
    if (frac < 1e-15) break;
    v = 1.0 / frac;
  }
  return false;
}

ConicalGOperator make_sphere_operator(Complex a, Complex b, Complex c,
                                      Complex d, double beta, double phi0,
                                      double gamma_plus, double gamma_minus) {
  require_finite(a, "a");
  require_finite(b, "b");
  require_finite(c, "c");
  require_finite(d, "d");
  require_finite(beta, "beta");
  require_finite(phi0, "phi0");
  require_finite(gamma_plus, "gamma_plus");
  require_finite(gamma_minus, "gamma_minus");
  if (beta <= 0.0)
    throw Error(ErrorCode::NonpositiveBeta, "beta must be positive");

  ConicalGOperator op;
  op.geometry.base_dim = 1;
  op.geometry.base_kind = BaseKind::Circle;
  op.geometry.conical_points = {{"S", gamma_plus}, {"N", gamma_minus}};
  op.action.group = GroupKind::Z;
  op.action.generators = {{beta, phi0}};
  op.order = 1;
  op.family = FamilyKind::SphereFirstOrder;
  op.sphere = {a, b, c, d, beta, phi0};
  op.gamma_plus = gamma_plus;
  op.gamma_minus = gamma_minus;
  return op;
}

ConicalGOperator make_halfline_operator(Complex a, Complex b, double alpha,
                                        double beta, double gamma_plus,
                                        double gamma_minus) {
  require_finite(a, "a");
  require_finite(b, "b");
  require_finite(alpha, "alpha");
  require_finite(beta, "beta");
  require_finite(gamma_plus, "gamma_plus");
  require_finite(gamma_minus, "gamma_minus");
  if (alpha <= 0.0 || beta <= 0.0)
    throw Error(ErrorCode::NonpositiveExponent,
                "alpha and beta must be positive");

  ConicalGOperator op;
  op.geometry.base_dim = 0;
  op.geometry.base_kind = BaseKind::Point;
  op.geometry.conical_points = {{"0", gamma_plus}, {"inf", gamma_minus}};
  op.action.group = GroupKind::Z2;
  op.action.generators = {{alpha, std::nullopt}, {beta, std::nullopt}};
  op.order = 0;
  op.family = FamilyKind::HalflineZeroOrder;
  op.halfline = {a, b, alpha, beta, commensurable(alpha, beta)};
  op.gamma_plus = gamma_plus;
  op.gamma_minus = gamma_minus;
  return op;
}

ConicalGOperator make_generic_banded(const std::map<int, BandTerm>& terms,
                                     int order, double beta, double phi0,
                                     double gamma_plus, double gamma_minus) {
  if (beta <= 0.0)
    throw Error(ErrorCode::NonpositiveBeta, "beta must be positive");
  ConicalGOperator op;
  op.geometry.base_dim = 1;
  op.geometry.base_kind = BaseKind::Circle;
  op.geometry.conical_points = {{"S", gamma_plus}, {"N", gamma_minus}};
  op.action.group = GroupKind::Z;
  op.action.generators = {{beta, phi0}};
  op.order = order;
  op.family = FamilyKind::GenericBanded;
  op.banded_terms = terms;
  op.gamma_plus = gamma_plus;
  op.gamma_minus = gamma_minus;
  return op;
}

}  // namespace gop
