#pragma once

// Half-line region logic: the triangle-inequality classification of
// 1 + a T_alpha + b T_beta over a weight interval, the torus min-modulus
// oracle, and the (|a|, |b|) region grid.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "gop/errors.hpp"

namespace gop {

using Complex = std::complex<double>;

enum class DominantTerm { Identity, TermA, TermB };

const char* dominant_name(DominantTerm t);

struct HalflineVerdict {
  bool elliptic = false;
  std::optional<DominantTerm> dominant;
  // subinterval of [gamma_minus, gamma_plus] where all three triangle
  // inequalities hold (circles intersect), present when not elliptic
  std::optional<std::pair<double, double>> failing_interval;
};

// Elliptic iff for every gamma in [gamma_minus, gamma_plus] at least one of
//   |a| e^{alpha g} <= 1 + |b| e^{beta g},
//   |b| e^{beta g}  <= 1 + |a| e^{alpha g},
//   1 <= |a| e^{alpha g} + |b| e^{beta g}
// fails.  Only |a|, |b| matter (phases are absorbed by the torus closure).
HalflineVerdict halfline_region_classify(double abs_a, double abs_b,
                                         double alpha, double beta,
                                         double gamma_minus,
                                         double gamma_plus);

// Brute-force min over the (gamma, phi, psi) grid of
// |1 + |a| e^{gamma alpha} e^{i phi} + |b| e^{gamma beta} e^{i psi}|.
double halfline_min_modulus_oracle(Complex a, Complex b, double alpha,
                                   double beta, double gamma_lo,
                                   double gamma_hi, int gamma_grid,
                                   int phase_grid);

// Exact min over phases for fixed gamma: dist(B, [|1 - A|, 1 + A]) with
// A = |a| e^{alpha gamma}, B = |b| e^{beta gamma}.
double halfline_min_modulus_exact(double abs_a, double abs_b, double alpha,
                                  double beta, double gamma);

struct RegionCell {
  double abs_a = 0.0;
  double abs_b = 0.0;
  bool elliptic = false;
  std::optional<DominantTerm> dominant;
};

struct RegionGrid {
  int na = 0, nb = 0;
  double amax = 0.0, bmax = 0.0;
  std::vector<RegionCell> cells;  // row-major, a fastest
};

RegionGrid halfline_region_plot(double alpha, double beta, double gamma_minus,
                                double gamma_plus, int na, int nb, double amax,
                                double bmax);

// CSV columns abs_a, abs_b, elliptic, dominant.
void write_region_csv(const RegionGrid& grid, const std::string& path);

// Connected elliptic components of the grid under 4-connectivity.
int count_elliptic_components(const RegionGrid& grid);

}  // namespace gop
