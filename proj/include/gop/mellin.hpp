#pragma once

// Numerical Mellin transform on a geometric grid, weighted Sobolev norms
// on weight lines, and the Plancherel residual used to certify both.

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "gop/errors.hpp"

namespace gop {

using Complex = std::complex<double>;

// Decay of a radial function at one end of (0, inf).  `rapid` means faster
// than any power; otherwise u ~ r^power at r -> 0 (resp. r^-power-ish decay
// encoded as u = O(r^power) with power typically negative or zero at
// infinity).
struct DecayFlag {
  bool rapid = false;
  double power = 0.0;  // u = O(r^power) at the end in question
};

// Samples u(r_j) with r_j = exp(-t_j), t_j uniform on [-T, T].
// Index j = 0 corresponds to t = -T (large r); j = n-1 to t = +T (small r).
struct RadialFunction {
  double T = 0.0;
  std::vector<Complex> values;     // u(exp(-t_j))
  DecayFlag at_origin;             // behavior as r -> 0  (t -> +inf)
  DecayFlag at_infinity;           // behavior as r -> inf (t -> -inf)

  int size() const { return static_cast<int>(values.size()); }
  double step() const { return 2.0 * T / (size() - 1); }
  double t_at(int j) const { return -T + j * step(); }
  double r_at(int j) const { return std::exp(-t_at(j)); }
};

RadialFunction sample_radial(const std::function<Complex(double)>& u, double T,
                             int n, DecayFlag at_origin, DecayFlag at_infinity);

struct WeightLine {
  double gamma = 0.0;
  std::vector<double> offsets;  // Im p sample points, sorted
};

// Uniform offsets on [-height, height].
WeightLine make_weight_line(double gamma, double height, int count);

// (1/sqrt(2*pi*i)) * integral_0^inf r^p u(r) dr/r, principal branch of the
// constant (arg = pi/4).  Throws DivergentTail when the decay flags rule out
// convergence at Re p.
Complex mellin_transform(const RadialFunction& u, Complex p);

// Squared norm in H^{s,gamma}: line integral over Re p = gamma of
// |(1 - p^2 + mode^2)^s ~u(p)|^2.  `mode` is the base Fourier mode (0 for the
// point base).  For s = 0 this is the squared L^2(mu_gamma) norm.
double weighted_norm(const RadialFunction& u, double s, double gamma,
                     int mode = 0, const WeightLine* line = nullptr);

// | int_{Re p = gamma} |~u|^2 dp  -  int_0^inf r^{2 gamma} |u|^2 dr/r |.
double plancherel_residual(const RadialFunction& u, double gamma,
                           const WeightLine* line = nullptr);

// Direct r-space quadrature of int_0^inf r^{2 gamma} |u|^2 dr/r on the grid.
// Oracle side of the Plancherel identity; also used for the s = 0 norm.
double radial_l2_norm_sq(const RadialFunction& u, double gamma);

// CSV round-trip, columns t, Re u, Im u.
void write_radial_csv(const RadialFunction& u, const std::string& path);
RadialFunction read_radial_csv(const std::string& path, DecayFlag at_origin,
                               DecayFlag at_infinity);

}  // namespace gop
