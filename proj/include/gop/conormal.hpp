#pragma once

// Conormal symbol families with exponential parameter dependence, the
// composition shift rule, and singular-weight location by argument-principle
// contour counting with Newton polishing.

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gop/operator_model.hpp"

namespace gop {

// Finite sum of terms e^{rate * p} * poly(p).  Entire in p; closed under
// products and argument shifts, which is exactly what the conormal symbol
// calculus needs.
struct ExpTerm {
  Complex rate;
  std::vector<Complex> coeffs;  // poly coefficients, ascending powers
};

class ExpPoly {
public:
  ExpPoly() = default;
  explicit ExpPoly(std::vector<ExpTerm> terms) : terms_(std::move(terms)) {
    normalize();
  }

  static ExpPoly constant(Complex c);

  Complex eval(Complex p) const;
  ExpPoly derivative() const;
  ExpPoly shifted(double m) const;  // p -> p + m
  friend ExpPoly operator*(const ExpPoly& f, const ExpPoly& g);

  const std::vector<ExpTerm>& terms() const { return terms_; }

private:
  void normalize();
  std::vector<ExpTerm> terms_;
};

struct ConormalFamily {
  enum class Kind { SphereModes, HalflineScalar };
  Kind kind = Kind::SphereModes;
  int order = 0;
  std::function<ExpPoly(int)> mode;  // f_n; the mode is ignored for half-line
};

// Scalar value of the conormal symbol: sphere operators give
// p + (a + b e^{-beta p - i n phi0}) n + (c + d e^{-beta p - i n phi0});
// half-line operators give 1 + a e^{p alpha} + b e^{p beta}.
Complex conormal_eval(const ConicalGOperator& op, Complex p, int n);

ConormalFamily conormal_family(const ConicalGOperator& op);

// sigma_c(D2 D1)(p) = sigma_c(D2)(p + m1) sigma_c(D1)(p); f1 has order m1.
ConormalFamily conormal_compose(const ConormalFamily& f1,
                                const ConormalFamily& f2);

struct StripSearchConfig {
  double sigma1 = -2.0;  // Re p in [sigma1, sigma2]
  double sigma2 = 2.0;
  double height = 20.0;  // |Im p| <= height
  double initial_cell = 2.0;          // first subdivision size
  int contour_points_per_edge = 32;   // before adaptive densification
  double newton_tol = 1e-12;
  int max_newton_iter = 50;
  std::optional<int> manual_modes;    // overrides mode_truncation_bound
  double dedup_tol = 1e-8;
};

struct ModeBound {
  int modes = 0;           // retain |n| <= modes
  std::string certificate;
};

// N such that f_n has no zero in the strip for |n| > N, with the estimate
// that fired recorded in the certificate.  Throws NoBoundAvailable when the
// coefficient of n can vanish inside the strip.
ModeBound mode_truncation_bound(const ConicalGOperator& op, double sigma1,
                                double sigma2, double height);

// Upper bound on |Im p| over all zeros of f_n in the strip; roots above it
// are ruled out by the imaginary-part growth estimate.
double mode_height_bound(const ConicalGOperator& op, int n, double sigma1);

struct RootRecord {
  std::optional<int> mode;
  Complex root;
  double residual = 0.0;
  int multiplicity = 1;
  bool contour_checked = false;  // big-contour count matched the root list
};

// All zeros of the retained conormal modes in the strip, argument-principle
// counted, Newton polished, deduplicated, sorted by (mode, Re, Im).
std::vector<RootRecord> find_singular_weights(const ConicalGOperator& op,
                                              const StripSearchConfig& cfg);

// Zeros of a single entire function in a rectangle; exposed for oracles and
// generic families.
std::vector<RootRecord> find_roots_in_rect(const ExpPoly& f, double re_lo,
                                           double re_hi, double im_lo,
                                           double im_hi,
                                           const StripSearchConfig& cfg);

// Winding number of f along the rectangle boundary (adaptive phase tracking).
int contour_winding(const ExpPoly& f, double re_lo, double re_hi, double im_lo,
                    double im_hi, int points_per_edge = 32);

struct LineCheck {
  bool verdict = false;
  double min_modulus = 0.0;
  double nearest_root_distance = 0.0;  // in Re p
  std::vector<RootRecord> roots;       // roots of the enclosing strip search
};

// Invertibility of the conormal symbol on the weight line Re p = gamma.
LineCheck check_conormal_on_line(const ConicalGOperator& op, double gamma,
                                 const StripSearchConfig& cfg);

}  // namespace gop
