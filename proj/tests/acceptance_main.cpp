// Acceptance suite: one line per criterion, PASS/FAIL, all tolerances
// pinned in this file.  Exit code = number of failed criteria.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <vector>

#include "gop/conormal.hpp"
#include "gop/engine.hpp"
#include "gop/halfline.hpp"
#include "gop/interior_symbol.hpp"
#include "gop/mellin.hpp"
#include "oracles.hpp"

using namespace gop;

namespace {

struct Criterion {
  int id;
  bool pass;
  std::string detail;
  double seconds;
};

std::vector<Criterion> results;

template <typename F>
void run(int id, F body) {
  auto t0 = std::chrono::steady_clock::now();
  Criterion c{id, false, "", 0.0};
  try {
    c = body();
    c.id = id;
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail = std::string("exception: ") + e.what();
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            t0).count();
  results.push_back(c);
}

ConicalGOperator sphere(Complex a, Complex b, Complex c, Complex d,
                        double beta = 1.0, double gp = 0.0, double gm = 0.0) {
  return make_sphere_operator(a, b, c, d, beta, 0.0, gp, gm);
}

// ---------------------------------------------------------------- 1
Criterion criterion1() {
  // flip of the interior verdict at |a| = 1 for b = 1, unit annulus
  auto margin_at = [](double a) {
    return check_interior_elliptic_sphere(sphere({a, 0}, {1, 0}, {0, 0},
                                                 {0, 0})).elliptic;
  };
  double lo = 0.5, hi = 2.0;  // not elliptic at 0.5, elliptic at 2
  if (margin_at(lo) || !margin_at(hi))
    return {1, false, "bracket endpoints disagree with the annulus criterion",
            0};
  while (hi - lo > 1e-12) {
    double mid = 0.5 * (lo + hi);
    (margin_at(mid) ? hi : lo) = mid;
  }
  double flip = 0.5 * (lo + hi);
  bool flip_ok = std::abs(flip - 1.0) <= 1e-9;

  std::mt19937 rng(20250816);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_real_distribution<double> gam(-1.0, 1.0);
  std::uniform_real_distribution<double> bet(0.2, 2.0);
  int tested = 0, agreed = 0;
  while (tested < 1000) {
    Complex a(coef(rng), coef(rng)), b(coef(rng), coef(rng));
    double beta = bet(rng), gp = gam(rng), gm = gam(rng);
    auto op = sphere(a, b, {0, 0}, {0, 0}, beta, gp, gm);
    auto v = check_interior_elliptic_sphere(op);
    if (std::abs(v.margin) < 1e-3) continue;  // margin band excluded
    ++tested;
    auto ann = annulus_radii(beta, gp, gm);
    double gridmin = oracle::annulus_re_min(a, b, ann.inner, ann.outer, 4096);
    if (v.elliptic == (gridmin > 1e-9)) ++agreed;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "flip at |a| = %.12f (target 1 within 1e-9); oracle agreement "
                "%d/%d",
                flip, agreed, tested);
  return {1, flip_ok && agreed == tested, buf, 0};
}

// ---------------------------------------------------------------- 2
Criterion criterion2() {
  // closed form with b = d = 0
  Complex a(0.7, 0.4), c(0.1, 0.2);
  auto op1 = sphere(a, {0, 0}, c, {0, 0});
  StripSearchConfig cfg1;
  cfg1.sigma1 = -7.6;
  cfg1.sigma2 = 7.6;
  cfg1.height = 6.0;
  cfg1.manual_modes = 10;
  auto roots1 = find_singular_weights(op1, cfg1);
  bool closed_ok = true;
  int matched = 0;
  for (int n = -10; n <= 10; ++n) {
    Complex want = -(a * double(n) + c);
    if (want.real() < cfg1.sigma1 || want.real() > cfg1.sigma2 ||
        std::abs(want.imag()) > cfg1.height)
      continue;
    bool hit = false;
    for (const auto& r : roots1)
      if (r.mode == n && std::abs(r.root - want) <= 1e-12) hit = true;
    closed_ok &= hit;
    ++matched;
  }
  closed_ok &= (static_cast<int>(roots1.size()) == matched);

  // mixed-coefficient strip search against the brute-force winding oracle.
  // No tail estimate applies on this strip (|b| e^{2} > |a| > |b| e^{-2}),
  // so the mode count is supplied manually to both sides.
  auto op2 = sphere({1, 0}, {0.2, 0}, {0, 0}, {0.1, 0});
  StripSearchConfig cfg2;
  cfg2.sigma1 = -2.0;
  cfg2.sigma2 = 2.0;
  cfg2.height = 20.0;
  const int N = 12;
  cfg2.manual_modes = N;
  auto lib = find_singular_weights(op2, cfg2);
  auto fam = conormal_family(op2);
  bool brute_ok = true;
  size_t brute_total = 0;
  double worst = 0.0;
  for (int n = -N; n <= N; ++n) {
    ExpPoly f = fam.mode(n);
    auto brute = oracle::brute_roots(
        [&](Complex p) { return f.eval(p); }, cfg2.sigma1, cfg2.sigma2,
        -cfg2.height, cfg2.height);
    std::vector<Complex> mine;
    for (const auto& r : lib)
      if (r.mode == n) mine.push_back(r.root);
    if (brute.size() != mine.size()) {
      brute_ok = false;
      continue;
    }
    brute_total += brute.size();
    for (const auto& b : brute) {
      double best = 1e9;
      for (const auto& m : mine) best = std::min(best, std::abs(m - b.where));
      worst = std::max(worst, best);
      if (best > 1e-8) brute_ok = false;
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "closed-form roots %d/%d at 1e-12; oracle count %zu/%zu, "
                "worst location gap %.2e (tol 1e-8)",
                matched, matched, brute_total, lib.size(), worst);
  return {2, closed_ok && brute_ok && brute_total == lib.size(), buf, 0};
}

// ---------------------------------------------------------------- 3
namespace {
struct GridMin {
  double value;
  double g, phi, psi;  // argmin coordinates
};

GridMin torus_grid_min(double A, double B, double alpha, double beta,
                       double g_lo, double g_hi, double phi_lo, double phi_hi,
                       double psi_lo, double psi_hi, int ng, int np) {
  std::vector<double> phi(np), cphi(np), sphi(np), psi(np), cpsi(np), spsi(np);
  for (int k = 0; k < np; ++k) {
    phi[k] = phi_lo + (phi_hi - phi_lo) * k / np;
    cphi[k] = std::cos(phi[k]);
    sphi[k] = std::sin(phi[k]);
    psi[k] = psi_lo + (psi_hi - psi_lo) * k / np;
    cpsi[k] = std::cos(psi[k]);
    spsi[k] = std::sin(psi[k]);
  }
  GridMin best{1e300, g_lo, phi_lo, psi_lo};
  for (int ig = 0; ig < ng; ++ig) {
    double g = (ng == 1) ? g_lo : g_lo + (g_hi - g_lo) * ig / (ng - 1);
    double Ag = A * std::exp(alpha * g), Bg = B * std::exp(beta * g);
    double Bg2 = Bg * Bg;
    for (int i = 0; i < np; ++i) {
      double x = 1.0 + Ag * cphi[i], y = Ag * sphi[i];
      double z2 = x * x + y * y;
      for (int j = 0; j < np; ++j) {
        double m2 = z2 + Bg2 + 2.0 * Bg * (x * cpsi[j] + y * spsi[j]);
        if (m2 < best.value) best = {m2, g, phi[i], psi[j]};
      }
    }
  }
  best.value = std::sqrt(std::max(best.value, 0.0));
  return best;
}

// Grid min refined by zooming.  A single uniform 128^3 pass resolves the
// minimum only to the grid scale (~1e-3 times the local slope), so the 1e-6
// decision threshold needs the zoom.  The per-gamma slice minimum can have
// several local minima in gamma; each one is zoomed separately so a
// shallower basin does not hide a true zero elsewhere.
double refined_min(double A, double B, double alpha, double beta, double g_lo,
                   double g_hi) {
  const int ng = 128, np = 128;
  std::vector<GridMin> slice(ng);
  for (int ig = 0; ig < ng; ++ig) {
    double g = g_lo + (g_hi - g_lo) * ig / (ng - 1);
    slice[ig] = torus_grid_min(A, B, alpha, beta, g, g, 0.0, 2 * M_PI, 0.0,
                               2 * M_PI, 1, np);
  }
  double best = 1e300;
  const double hg0 = (g_hi - g_lo) / (ng - 1);
  for (int ig = 0; ig < ng; ++ig) {
    if (ig > 0 && slice[ig - 1].value < slice[ig].value) continue;
    if (ig + 1 < ng && slice[ig + 1].value < slice[ig].value) continue;
    GridMin m = slice[ig];
    double hg = hg0, hp = 2 * M_PI / np;
    for (int level = 0; level < 10 && m.value > 1e-7; ++level) {
      double glo = std::max(g_lo, m.g - 2 * hg);
      double ghi = std::min(g_hi, m.g + 2 * hg);
      m = torus_grid_min(A, B, alpha, beta, glo, ghi, m.phi - 2 * hp,
                         m.phi + 2 * hp, m.psi - 2 * hp, m.psi + 2 * hp, 33,
                         32);
      hg = std::max(ghi - glo, 1e-300) / 32.0;
      hp /= 8.0;
    }
    best = std::min(best, m.value);
  }
  return best;
}
}  // namespace

Criterion criterion3() {
  const double alpha = 1.0, beta = std::sqrt(2.0);
  std::mt19937 rng(31415);
  std::uniform_real_distribution<double> mag(0.0, 3.0);
  std::uniform_real_distribution<double> gam(-0.6, 0.6);
  int tested = 0, agreed = 0;
  while (tested < 2000) {
    double A = mag(rng), B = mag(rng);
    double g0 = gam(rng), g1 = gam(rng);
    if (g0 > g1) std::swap(g0, g1);
    bool base =
        halfline_region_classify(A, B, alpha, beta, g0, g1).elliptic;
    bool boundary = false;
    for (double da : {-1e-3, 1e-3})
      for (double db : {-1e-3, 1e-3})
        if (halfline_region_classify(std::max(0.0, A + da),
                                     std::max(0.0, B + db), alpha, beta, g0,
                                     g1).elliptic != base)
          boundary = true;
    if (boundary) continue;
    ++tested;
    double orc = refined_min(A, B, alpha, beta, g0, g1);
    if (base == (orc > 1e-6))
      ++agreed;
    else
      std::fprintf(stderr,
                   "criterion 3 disagreement: |a|=%.17g |b|=%.17g gamma=[%.17g,"
                   "%.17g] classify=%d oracle=%.3e\n",
                   A, B, g0, g1, base, orc);
  }
  auto grid = halfline_region_plot(alpha, beta, 0.0, 0.0, 200, 200, 3.0, 3.0);
  int components = count_elliptic_components(grid);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "oracle agreement %d/%d; elliptic components on the 200x200 "
                "grid: %d (want 3)",
                agreed, tested, components);
  return {3, agreed == tested && components == 3, buf, 0};
}

// ---------------------------------------------------------------- 4
Criterion criterion4() {
  std::mt19937 rng(27182);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst_comp = 0.0;
  for (int pair = 0; pair < 50; ++pair) {
    auto op1 = sphere({u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)},
                      {u(rng), u(rng)}, 0.5 + std::abs(u(rng)));
    auto op2 = sphere({u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)},
                      {u(rng), u(rng)}, 0.5 + std::abs(u(rng)));
    auto f1 = conormal_family(op1);
    auto f2 = conormal_family(op2);
    auto f21 = conormal_compose(f1, f2);
    for (int k = 0; k < 100; ++k) {
      int n = static_cast<int>(std::lround(6 * u(rng)));
      Complex p(u(rng), 3 * u(rng));
      Complex want = f2.mode(n).eval(p + 1.0) * f1.mode(n).eval(p);
      worst_comp = std::max(worst_comp, std::abs(f21.mode(n).eval(p) - want));
    }
  }
  bool comp_ok = worst_comp <= 1e-12;

  // interior multiplicativity on window interiors at W = 64
  double worst_mult = 0.0;
  const int W = 64, dim = 2 * W + 1;
  auto ctx = SymbolContext::interior_point();
  for (int trial = 0; trial < 5; ++trial) {
    std::map<int, BandTerm> t1, t2, t12;
    for (int l : {0, 1}) {
      t1[l].c0 = {u(rng), u(rng)};
      t2[l - 1].c0 = {u(rng), u(rng)};
    }
    for (const auto& [l1, v1] : t1)
      for (const auto& [l2, v2] : t2) {
        t12[l1 + l2].c0 += v1.c0 * v2.c0;
      }
    auto m1 = interior_symbol_matrix(make_generic_banded(t1, 0, 1, 0, 0, 0),
                                     ctx, 1.0, 0.0, W, 0.0);
    auto m2 = interior_symbol_matrix(make_generic_banded(t2, 0, 1, 0, 0, 0),
                                     ctx, 1.0, 0.0, W, 0.0);
    auto m12 = interior_symbol_matrix(make_generic_banded(t12, 0, 1, 0, 0, 0),
                                      ctx, 1.0, 0.0, W, 0.0);
    for (int i = 1; i < dim - 1; ++i)
      for (int j = 0; j < dim; ++j) {
        Complex prod = 0.0;
        for (int k = std::max(0, i - 2); k <= std::min(dim - 1, i + 2); ++k)
          prod += m1.matrix[i][k] * m2.matrix[k][j];
        worst_mult = std::max(worst_mult, std::abs(prod - m12.matrix[i][j]));
      }
  }
  bool mult_ok = worst_mult <= 1e-12;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "composition worst error %.2e, multiplicativity worst error "
                "%.2e (tol 1e-12)",
                worst_comp, worst_mult);
  return {4, comp_ok && mult_ok, buf, 0};
}

// ---------------------------------------------------------------- 5
Criterion criterion5() {
  auto expdec = sample_radial(
      [](double r) { return Complex(std::exp(-r), 0); }, 60.0, 6001,
      {false, 0.0}, {true, 0.0});
  auto rexp = sample_radial(
      [](double r) { return Complex(r * std::exp(-r), 0); }, 60.0, 6001,
      {false, 1.0}, {true, 0.0});
  auto esin = sample_radial(
      [](double r) { return Complex(std::exp(-r) * std::sin(r), 0); }, 60.0,
      6001, {false, 1.0}, {true, 0.0});

  double worst_pl = 0.0;
  bool plancherel_ok = true;
  const RadialFunction* fns[3] = {&expdec, &rexp, &esin};
  for (int i = 0; i < 3; ++i) {
    for (double g : {0.0, 0.5}) {
      if (i == 0 && g == 0.0) {
        // int_0^inf |e^{-r}|^2 dr/r diverges at r = 0: the honest outcome
        // is the divergence error, not a small residual
        try {
          plancherel_residual(*fns[i], g);
          plancherel_ok = false;
        } catch (const Error& e) {
          plancherel_ok &= (e.code() == ErrorCode::DivergentTail);
        }
        continue;
      }
      double res = plancherel_residual(*fns[i], g);
      worst_pl = std::max(worst_pl, res);
      plancherel_ok &= res < 1e-6;
    }
  }

  // shift law on the sampled grid
  const double shift = 0.5;
  auto shifted = sample_radial(
      [shift](double r) { return Complex(std::exp(-r * std::exp(-shift)), 0); },
      60.0, 6001, {false, 0.0}, {true, 0.0});
  double worst_shift = 0.0;
  for (Complex p : {Complex(1.0, 0.0), Complex(1.5, 0.7), Complex(1.0, -2.0)})
    worst_shift = std::max(
        worst_shift, std::abs(mellin_transform(shifted, p) -
                              std::exp(shift * p) * mellin_transform(expdec, p)));

  // derivative law with central differences; three refinements
  auto deriv_err = [](int n) {
    auto u = sample_radial(
        [](double r) { return Complex(std::exp(-r), 0); }, 60.0, n,
        {false, 0.0}, {true, 0.0});
    RadialFunction v = u;
    const double h = u.step();
    for (int j = 1; j + 1 < n; ++j)
      v.values[j] = (u.values[j + 1] - u.values[j - 1]) / (2.0 * h);
    v.values[0] = (u.values[1] - u.values[0]) / h;
    v.values[n - 1] = (u.values[n - 1] - u.values[n - 2]) / h;
    v.at_origin = {false, 1.0};
    Complex p(1.5, 0.5);
    return std::abs(mellin_transform(v, p) - p * mellin_transform(u, p));
  };
  double e1 = deriv_err(150001);
  double e2 = deriv_err(300001);
  double e4 = deriv_err(600001);
  bool deriv_ok = e4 < 1e-8 && e1 / e2 > 3.5 && e2 / e4 > 3.5;

  char buf[220];
  std::snprintf(buf, sizeof buf,
                "Plancherel worst %.2e (5 convergent cases; e^-r at gamma=0 "
                "correctly divergent); shift law %.2e; derivative law %.2e, "
                "refinement ratios %.2f, %.2f",
                worst_pl, worst_shift, e4, e1 / e2, e2 / e4);
  return {5, plancherel_ok && worst_shift < 1e-8 && deriv_ok, buf, 0};
}

// ---------------------------------------------------------------- 6
Criterion criterion6() {
  // exact specialization: gamma_- = 0.5, beta = 1, n = 2 -> e^2
  auto op = sphere({1, 0}, {0, 0}, {0, 0}, {0, 0}, 1.0, 0.0, 0.5);
  double m = weight_function(op, SymbolContext::interior_point(), 0.0, 2);
  double rel = std::abs(m - std::exp(2.0)) / std::exp(2.0);
  bool exact_ok = rel <= 1e-12;

  double worst = 0.0;
  for (double beta : {0.5, 1.0, 2.0})
    for (double gamma : {-0.7, 0.0, 0.3, 1.1})
      for (int n : {-3, -1, 0, 1, 2}) {
        auto bop = sphere({1, 0}, {0, 0}, {0, 0}, {0, 0}, beta, gamma, 0.0);
        double lib = weight_function(bop, SymbolContext::boundary_point(false),
                                     0.0, n);
        double orc = transport_weight_oracle(-n * beta, gamma, 0.25, 1e-3);
        worst = std::max(worst, std::abs(lib - orc) / std::max(1.0, orc));
      }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "e^2 specialization relative error %.2e (tol 1e-12); "
                "transport oracle worst relative gap %.2e (tol 1e-10)",
                rel, worst);
  return {6, exact_ok && worst <= 1e-10, buf, 0};
}

// ---------------------------------------------------------------- 7
Criterion criterion7() {
  std::mt19937 rng(16180);
  // the W=128 section reaches the circle minimum up to a transient that
  // decays like (|b eta| / |i tau + a eta|)^(2W+1); unit-scale coefficients
  // with the 0.05 minimum-modulus floor keep that ratio below 0.975
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  auto ctx = SymbolContext::interior_point();
  int done = 0;
  double worst = 0.0;
  while (done < 100) {
    Complex a(coef(rng), coef(rng)), b(coef(rng), coef(rng));
    double eta = coef(rng), tau = coef(rng);
    if (std::hypot(eta, tau) < 0.1) continue;
    double cmin = circle_multiplier_min(a, b, eta, tau);
    // the finite-section limit equals the circle minimum only for winding 0
    // (a pure shift has sigma_min -> 0 but |multiplier| = 1); reject other
    // windings, and near-degenerate multipliers below the 2%-scale floor
    if (cmin < 0.05) continue;
    double total = 0.0;
    Complex prev = Complex(0, tau) + (a + b) * eta;
    for (int k = 1; k <= 1024; ++k) {
      double th = 2.0 * M_PI * k / 1024;
      Complex cur = Complex(0, tau) + (a + b * std::polar(1.0, -th)) * eta;
      total += std::arg(cur / prev);
      prev = cur;
    }
    if (std::lround(total / (2 * M_PI)) != 0) continue;
    auto op = sphere(a, b, {0, 0}, {0, 0});
    double smin = window_sigma_min(
        interior_symbol_matrix(op, ctx, eta, tau, 128, 0.0));
    worst = std::max(worst, std::abs(smin - cmin) / cmin);
    ++done;
  }
  char buf[120];
  std::snprintf(buf, sizeof buf,
                "100 operators, worst relative gap %.4f (tol 0.02)", worst);
  return {7, worst <= 0.02, buf, 0};
}

}  // namespace

int main() {
  run(1, criterion1);
  run(2, criterion2);
  run(3, criterion3);
  run(4, criterion4);
  run(5, criterion5);
  run(6, criterion6);
  run(7, criterion7);

  int failed = 0;
  for (const auto& c : results) {
    std::printf("criterion %d: %s (%.1fs) — %s\n", c.id,
                c.pass ? "PASS" : "FAIL", c.seconds, c.detail.c_str());
    if (!c.pass) ++failed;
  }
  return failed;
}
