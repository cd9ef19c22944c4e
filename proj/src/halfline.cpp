#include "gop/halfline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <vector>

namespace gop {

const char* dominant_name(DominantTerm t) {
  switch (t) {
    case DominantTerm::Identity: return "identity";
    case DominantTerm::TermA: return "term_a";
    case DominantTerm::TermB: return "term_b";
  }
  return "?";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Interval {
  double lo = kInf, hi = -kInf;  // empty by default
  bool empty() const { return !(lo < hi); }
  bool contains(double x) const { return lo < x && x < hi; }
};

using Fn = std::function<double(double)>;

double bisect(const Fn& f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Root of f starting from `anchor` in direction `dir` (+1/-1), expanding the
// bracket geometrically.  Returns +-inf when no sign change is found.
double expand_root(const Fn& f, double anchor, double dir) {
  double fa = f(anchor);
  double prev = anchor;
  double step = 0.5;
  for (int it = 0; it < 120; ++it) {
    double next = anchor + dir * step;
    double fn = f(next);
    if ((fn > 0) != (fa > 0) || fn == 0.0)
      return dir > 0 ? bisect(f, prev, next) : bisect(f, next, prev);
    prev = next;
    step *= 2.0;
  }
  return dir * kInf;
}

// Gamma-set where u e^{ug g} > 1 + v e^{vg g} (strict); always an interval.
// In log form phi(g) = log u + ug g - log(1 + v e^{vg g}), concave when
// vg > ug and strictly increasing otherwise.
Interval domination_interval(double u, double ug, double v, double vg) {
  Interval out;
  if (u == 0.0) return out;
  auto phi = [&](double g) {
    return std::log(u) + ug * g - std::log1p(v * std::exp(vg * g));
  };
  if (v == 0.0 || ug >= vg) {
    // increasing; phi -> -inf as g -> -inf, so at most one crossing
    double cross;
    if (phi(0.0) > 0.0)
      cross = expand_root(phi, 0.0, -1.0);
    else
      cross = expand_root(phi, 0.0, +1.0);
    if (cross == kInf) return out;  // never positive (ug == vg, u <= v)
    out.lo = cross;
    out.hi = kInf;
    return out;
  }
  // concave with interior maximum where v e^{vg g*} = ug / (vg - ug)
  double gstar = std::log(ug / ((vg - ug) * v)) / vg;
  if (!(phi(gstar) > 0.0)) return out;
  out.lo = expand_root(phi, gstar, -1.0);
  out.hi = expand_root(phi, gstar, +1.0);
  return out;
}

// Gamma-set where u e^{ug g} + v e^{vg g} < 1 (identity dominates).
Interval identity_interval(double u, double ug, double v, double vg) {
  Interval out;
  if (u == 0.0 && v == 0.0) {
    out.lo = -kInf;
    out.hi = kInf;
    return out;
  }
  auto h = [&](double g) {
    return u * std::exp(ug * g) + v * std::exp(vg * g) - 1.0;
  };
  // strictly increasing, h -> -1 at -inf, +inf at +inf
  double cross = expand_root(h, 0.0, h(0.0) > 0.0 ? -1.0 : +1.0);
  out.lo = -kInf;
  out.hi = cross;
  return out;
}

// All three triangle inequalities (non-strict): the two circles intersect.
bool circles_intersect(double u, double ug, double v, double vg, double g) {
  double A = u * std::exp(ug * g);
  double B = v * std::exp(vg * g);
  return A <= 1.0 + B && B <= 1.0 + A && 1.0 <= A + B;
}

}  // namespace

HalflineVerdict halfline_region_classify(double abs_a, double abs_b,
                                         double alpha, double beta,
                                         double gamma_minus,
                                         double gamma_plus) {
  if (abs_a < 0.0 || abs_b < 0.0)
    throw Error(ErrorCode::InvalidInput, "moduli must be nonnegative");
  if (alpha <= 0.0 || beta <= 0.0)
    throw Error(ErrorCode::NonpositiveExponent,
                "alpha and beta must be positive");
  if (gamma_minus > gamma_plus)
    throw Error(ErrorCode::InvalidInput, "gamma_minus must be <= gamma_plus");

  Interval fail_a = domination_interval(abs_a, alpha, abs_b, beta);
  Interval fail_b = domination_interval(abs_b, beta, abs_a, alpha);
  Interval fail_id = identity_interval(abs_a, alpha, abs_b, beta);

  // uncovered = [gamma_-, gamma_+] minus the three open fail intervals
  std::vector<Interval> fails;
  for (const auto& iv : {fail_id, fail_a, fail_b})
    if (!iv.empty()) fails.push_back(iv);
  std::sort(fails.begin(), fails.end(),
            [](const Interval& x, const Interval& y) { return x.lo < y.lo; });

  std::vector<std::pair<double, double>> uncovered;
  double cursor = gamma_minus;
  for (const auto& iv : fails) {
    if (iv.hi <= cursor) continue;
    if (iv.lo > cursor) {
      uncovered.push_back({cursor, std::min(iv.lo, gamma_plus)});
    }
    cursor = std::max(cursor, iv.hi);
    if (cursor > gamma_plus) break;
  }
  if (cursor <= gamma_plus) uncovered.push_back({cursor, gamma_plus});

  // confirm candidates by direct evaluation (open vs closed boundaries)
  std::optional<std::pair<double, double>> failing;
  for (const auto& [u, v] : uncovered) {
    double mid = 0.5 * (u + v);
    if (circles_intersect(abs_a, alpha, abs_b, beta, mid)) {
      if (!failing)
        failing = {u, v};
      else
        failing = {std::min(failing->first, u), std::max(failing->second, v)};
    }
  }

  HalflineVerdict out;
  out.elliptic = !failing.has_value();
  out.failing_interval = failing;
  if (out.elliptic) {
    // a single dominating term on the whole interval, if any; the fail sets
    // are intervals, so endpoint membership is enough
    auto covers_closed = [&](const Interval& iv) {
      return !iv.empty() && iv.contains(gamma_minus) && iv.contains(gamma_plus);
    };
    if (covers_closed(fail_id))
      out.dominant = DominantTerm::Identity;
    else if (covers_closed(fail_a))
      out.dominant = DominantTerm::TermA;
    else if (covers_closed(fail_b))
      out.dominant = DominantTerm::TermB;
  }
  return out;
}

double halfline_min_modulus_oracle(Complex a, Complex b, double alpha,
                                   double beta, double gamma_lo,
                                   double gamma_hi, int gamma_grid,
                                   int phase_grid) {
  const double aa = std::abs(a), bb = std::abs(b);
  std::vector<double> cosv(phase_grid), sinv(phase_grid);
  for (int k = 0; k < phase_grid; ++k) {
    double th = 2.0 * M_PI * k / phase_grid;
    cosv[k] = std::cos(th);
    sinv[k] = std::sin(th);
  }
  double best = kInf;
  const int ng = std::max(1, gamma_grid);
  for (int ig = 0; ig < ng; ++ig) {
    double g = (ng == 1) ? gamma_lo
                         : gamma_lo + (gamma_hi - gamma_lo) * ig / (ng - 1);
    double A = aa * std::exp(alpha * g);
    double B = bb * std::exp(beta * g);
    double B2 = B * B;
    for (int i = 0; i < phase_grid; ++i) {
      double x = 1.0 + A * cosv[i];
      double y = A * sinv[i];
      double z2 = x * x + y * y;
      for (int j = 0; j < phase_grid; ++j) {
        double m2 = z2 + B2 + 2.0 * B * (x * cosv[j] - y * sinv[j]);
        if (m2 < best) best = m2;
      }
    }
  }
  return std::sqrt(std::max(best, 0.0));
}

double halfline_min_modulus_exact(double abs_a, double abs_b, double alpha,
                                  double beta, double gamma) {
  double A = abs_a * std::exp(alpha * gamma);
  double B = abs_b * std::exp(beta * gamma);
  // |1 + A e^{i phi}| sweeps [|1 - A|, 1 + A]; the second phase then reaches
  // every distance dist(B, that interval)
  double lo = std::abs(1.0 - A), hi = 1.0 + A;
  if (B < lo) return lo - B;
  if (B > hi) return B - hi;
  return 0.0;
}

RegionGrid halfline_region_plot(double alpha, double beta, double gamma_minus,
                                double gamma_plus, int na, int nb, double amax,
                                double bmax) {
  if (amax <= 0.0 || bmax <= 0.0)
    throw Error(ErrorCode::InvalidInput, "grid bounds must be positive");
  RegionGrid grid;
  grid.na = na;
  grid.nb = nb;
  grid.amax = amax;
  grid.bmax = bmax;
  grid.cells.resize(static_cast<size_t>(na) * nb);
  for (int jb = 0; jb < nb; ++jb) {
    double bb = (jb + 0.5) * bmax / nb;
    for (int ia = 0; ia < na; ++ia) {
      double aa = (ia + 0.5) * amax / na;
      auto verdict = halfline_region_classify(aa, bb, alpha, beta, gamma_minus,
                                              gamma_plus);
      RegionCell& cell = grid.cells[static_cast<size_t>(jb) * na + ia];
      cell.abs_a = aa;
      cell.abs_b = bb;
      cell.elliptic = verdict.elliptic;
      cell.dominant = verdict.dominant;
    }
  }
  return grid;
}

void write_region_csv(const RegionGrid& grid, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ConfigError, "cannot open " + path);
  out << "abs_a,abs_b,elliptic,dominant\n";
  out.precision(12);
  for (const auto& c : grid.cells)
    out << c.abs_a << "," << c.abs_b << "," << (c.elliptic ? 1 : 0) << ","
        << (c.dominant ? dominant_name(*c.dominant) : "none") << "\n";
}

int count_elliptic_components(const RegionGrid& grid) {
  const int na = grid.na, nb = grid.nb;
  std::vector<int> label(grid.cells.size(), -1);
  int components = 0;
  std::vector<size_t> stack;
  for (size_t start = 0; start < grid.cells.size(); ++start) {
    if (!grid.cells[start].elliptic || label[start] >= 0) continue;
    ++components;
    stack.push_back(start);
    label[start] = components;
    while (!stack.empty()) {
      size_t idx = stack.back();
      stack.pop_back();
      int ia = static_cast<int>(idx) % na;
      int jb = static_cast<int>(idx) / na;
      const int di[4] = {1, -1, 0, 0};
      const int dj[4] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        int ni = ia + di[k], nj = jb + dj[k];
        if (ni < 0 || ni >= na || nj < 0 || nj >= nb) continue;
        size_t nidx = static_cast<size_t>(nj) * na + ni;
        if (grid.cells[nidx].elliptic && label[nidx] < 0) {
          label[nidx] = components;
          stack.push_back(nidx);
        }
      }
    }
  }
  return components;
}

}  // namespace gop
