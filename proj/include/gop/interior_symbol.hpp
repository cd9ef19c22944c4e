#pragma once

// Interior (trajectory) symbol on a truncated orbit window: weight function
// on the orbit, banded matrix of the symbol conjugated to plain l^2, the
// annulus reduction for the sphere family, and the interior ellipticity
// checks (analytic for the sphere, finite-section heuristic otherwise).

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "gop/operator_model.hpp"

namespace gop {

struct InteriorPointContext {
  double t0 = 0.0;  // cylinder coordinate of the base point
};

struct BoundaryPointContext {
  bool at_infinity = false;  // false: r = 0, true: r = inf
  double tau = 0.0;
  double eta = 1.0;
};

struct SymbolContext {
  enum class Kind { Interior, Boundary } kind = Kind::Interior;
  InteriorPointContext interior;
  BoundaryPointContext boundary;

  static SymbolContext interior_point(double t0 = 0.0) {
    SymbolContext c;
    c.kind = Kind::Interior;
    c.interior = {t0};
    return c;
  }
  static SymbolContext boundary_point(bool at_infinity, double tau = 0.0,
                                      double eta = 1.0) {
    SymbolContext c;
    c.kind = Kind::Boundary;
    c.boundary = {at_infinity, tau, eta};
    return c;
  }
};

// m_{s,gamma}(n) on the orbit of the given context.  Interior points follow
// the sphere computation (e^{2 gamma_- beta n} for n >= 0, e^{2 gamma_+ beta n}
// for n < 0, s dropped up to equivalence); boundary points carry
// e^{2 gamma_+- beta n} times the (tau^2 + eta^2)^s ratio along the orbit.
double weight_function(const ConicalGOperator& op, const SymbolContext& ctx,
                       double s, int n);

// Transport-of-measure definition of the weight at a boundary point: the
// density of the pulled-back measure (d g^{-1})^* mu_gamma against mu_gamma
// on the cylinder, computed by finite differences.  Independent oracle for
// weight_function; beta_g is the radial exponent of the group element.
double transport_weight_oracle(double beta_g, double gamma, double base_angle,
                               double fd_step = 1e-6);

struct OrbitWindow {
  int radius = 0;                 // indices |n| <= radius
  int bandwidth = 0;              // max |shift index|
  std::vector<std::vector<Complex>> matrix;  // dense (2W+1)^2, weighted basis
  std::vector<double> weights;    // m(n) samples, index n + radius
};

// Truncated matrix of sigma_0(op) at covector (eta, tau), conjugated by
// diag(sqrt m) so it acts on unweighted l^2 over the window.
OrbitWindow interior_symbol_matrix(const ConicalGOperator& op,
                                   const SymbolContext& ctx, double eta,
                                   double tau, int window_radius, double s);

// Smallest singular value of the window matrix.
double window_sigma_min(const OrbitWindow& w);

// Matrix dump, columns row, col, re, im (nonzero entries only).
void write_window_csv(const OrbitWindow& w, const std::string& path);

struct Annulus {
  double inner = 0.0;  // min(e^{-gamma_+ beta}, e^{-gamma_- beta})
  double outer = 0.0;
  bool swapped = false;  // gamma_- > gamma_+ (dual-space orientation)
};

Annulus annulus_radii(double beta, double gamma_plus, double gamma_minus);

struct InteriorVerdict {
  bool elliptic = false;
  double margin = 0.0;                 // |Re a| - |b| / inner radius
  std::optional<Complex> witness;      // zeta in the closed annulus where
                                       // Re(a + b/zeta) = 0, when degenerate
};

// Analytic criterion |Re a| > |b| / r for the sphere family.
InteriorVerdict check_interior_elliptic_sphere(const ConicalGOperator& op);

struct WindowTracePoint {
  int window = 0;
  double sigma_min = 0.0;
};

struct GenericInteriorReport {
  bool likely_elliptic = false;
  double min_sigma = 0.0;
  std::vector<WindowTracePoint> trace;  // min over contexts, per window
  std::string note;                     // numerical certificate, not a proof
};

struct CovectorSample {
  double eta = 0.0;
  double tau = 0.0;
};

// Finite-section certificate: sigma_min of the conjugated truncation across
// an increasing window schedule and a set of covector samples.
GenericInteriorReport check_interior_elliptic_generic(
    const ConicalGOperator& op, const std::vector<CovectorSample>& contexts,
    const std::vector<int>& window_schedule, double tol);

// min over the unit circle (grid points) of |i tau + (a + b e^{-i theta}) eta|;
// the multiplier limit of the sphere symbol at gamma_+ = gamma_- = 0.
double circle_multiplier_min(Complex a, Complex b, double eta, double tau,
                             int grid = 4096);

}  // namespace gop
