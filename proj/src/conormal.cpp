#include "gop/conormal.hpp"

#include <algorithm>
#include <cmath>

#include "gop/halfline.hpp"

namespace gop {

// ---------------------------------------------------------------- ExpPoly

ExpPoly ExpPoly::constant(Complex c) {
  return ExpPoly({ExpTerm{Complex(0, 0), {c}}});
}

Complex ExpPoly::eval(Complex p) const {
  Complex acc = 0.0;
  for (const auto& t : terms_) {
    Complex poly = 0.0;
    for (size_t k = t.coeffs.size(); k-- > 0;) poly = poly * p + t.coeffs[k];
    acc += std::exp(t.rate * p) * poly;
  }
  return acc;
}

ExpPoly ExpPoly::derivative() const {
  std::vector<ExpTerm> out;
  for (const auto& t : terms_) {
    // d/dp [e^{rp} q(p)] = e^{rp} (r q + q')
    std::vector<Complex> c(t.coeffs.size() + 1, Complex(0, 0));
    for (size_t k = 0; k < t.coeffs.size(); ++k) c[k] += t.rate * t.coeffs[k];
    for (size_t k = 1; k < t.coeffs.size(); ++k)
      c[k - 1] += double(k) * t.coeffs[k];
    out.push_back({t.rate, std::move(c)});
  }
  return ExpPoly(std::move(out));
}

ExpPoly ExpPoly::shifted(double m) const {
  std::vector<ExpTerm> out;
  for (const auto& t : terms_) {
    // e^{r(p+m)} q(p+m) = e^{rm} e^{rp} sum_k [sum_{j>=k} C(j,k) m^{j-k} a_j] p^k
    const size_t deg = t.coeffs.size();
    std::vector<Complex> c(deg, Complex(0, 0));
    for (size_t j = 0; j < deg; ++j) {
      double binom = 1.0;  // C(j, j) = 1, walking k downward
      double mpow = 1.0;
      for (size_t kk = 0; kk <= j; ++kk) {
        size_t k = j - kk;  // C(j,k) m^{j-k}
        c[k] += t.coeffs[j] * binom * mpow;
        if (k > 0) {
          binom = binom * double(k) / double(j - k + 1);
          mpow *= m;
        }
      }
    }
    Complex scale = std::exp(t.rate * m);
    for (auto& x : c) x *= scale;
    out.push_back({t.rate, std::move(c)});
  }
  return ExpPoly(std::move(out));
}

ExpPoly operator*(const ExpPoly& f, const ExpPoly& g) {
  std::vector<ExpTerm> out;
  for (const auto& tf : f.terms_) {
    for (const auto& tg : g.terms_) {
      ExpTerm t;
      t.rate = tf.rate + tg.rate;
      t.coeffs.assign(tf.coeffs.size() + tg.coeffs.size() - 1, Complex(0, 0));
      for (size_t i = 0; i < tf.coeffs.size(); ++i)
        for (size_t j = 0; j < tg.coeffs.size(); ++j)
          t.coeffs[i + j] += tf.coeffs[i] * tg.coeffs[j];
      out.push_back(std::move(t));
    }
  }
  return ExpPoly(std::move(out));
}

void ExpPoly::normalize() {
  std::vector<ExpTerm> merged;
  for (auto& t : terms_) {
    bool placed = false;
    for (auto& m : merged) {
      if (std::abs(m.rate - t.rate) <= 1e-12 * (1.0 + std::abs(m.rate))) {
        if (m.coeffs.size() < t.coeffs.size())
          m.coeffs.resize(t.coeffs.size(), Complex(0, 0));
        for (size_t k = 0; k < t.coeffs.size(); ++k) m.coeffs[k] += t.coeffs[k];
        placed = true;
        break;
      }
    }
    if (!placed) merged.push_back(std::move(t));
  }
  for (auto& m : merged)
    while (!m.coeffs.empty() && m.coeffs.back() == Complex(0, 0))
      m.coeffs.pop_back();
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const ExpTerm& t) { return t.coeffs.empty(); }),
               merged.end());
  terms_ = std::move(merged);
}

// --------------------------------------------------------------- families

Complex conormal_eval(const ConicalGOperator& op, Complex p, int n) {
  switch (op.family) {
    case FamilyKind::SphereFirstOrder: {
      const auto& sp = op.sphere;
      Complex e = std::exp(-sp.beta * p - Complex(0, 1) * (double(n) * sp.phi0));
      return p + (sp.a + sp.b * e) * double(n) + (sp.c + sp.d * e);
    }
    case FamilyKind::HalflineZeroOrder: {
      const auto& hl = op.halfline;
      return 1.0 + hl.a * std::exp(p * hl.alpha) + hl.b * std::exp(p * hl.beta);
    }
    default:
      throw Error(ErrorCode::FamilyMismatch,
                  "conormal_eval: unsupported family");
  }
}

ConormalFamily conormal_family(const ConicalGOperator& op) {
  ConormalFamily fam;
  switch (op.family) {
    case FamilyKind::SphereFirstOrder: {
      const SphereParams sp = op.sphere;
      fam.kind = ConormalFamily::Kind::SphereModes;
      fam.order = 1;
      fam.mode = [sp](int n) {
        Complex phase = std::exp(Complex(0, -1) * (double(n) * sp.phi0));
        std::vector<ExpTerm> terms;
        terms.push_back({Complex(0, 0),
                         {sp.a * double(n) + sp.c, Complex(1, 0)}});
        terms.push_back({Complex(-sp.beta, 0),
                         {(sp.b * double(n) + sp.d) * phase}});
        return ExpPoly(std::move(terms));
      };
      break;
    }
    case FamilyKind::HalflineZeroOrder: {
      const HalflineParams hl = op.halfline;
      fam.kind = ConormalFamily::Kind::HalflineScalar;
      fam.order = 0;
      fam.mode = [hl](int) {
        std::vector<ExpTerm> terms;
        terms.push_back({Complex(0, 0), {Complex(1, 0)}});
        terms.push_back({Complex(hl.alpha, 0), {hl.a}});
        terms.push_back({Complex(hl.beta, 0), {hl.b}});
        return ExpPoly(std::move(terms));
      };
      break;
    }
    default:
      throw Error(ErrorCode::FamilyMismatch,
                  "conormal_family: unsupported family");
  }
  return fam;
}

ConormalFamily conormal_compose(const ConormalFamily& f1,
                                const ConormalFamily& f2) {
  if (f1.kind != f2.kind)
    throw Error(ErrorCode::KindMismatch, "incompatible conormal kinds");
  ConormalFamily out;
  out.kind = f1.kind;
  out.order = f1.order + f2.order;
  const int m1 = f1.order;
  auto g1 = f1.mode, g2 = f2.mode;
  out.mode = [g1, g2, m1](int n) {
    return g2(n).shifted(double(m1)) * g1(n);
  };
  return out;
}

// ------------------------------------------------------ truncation bounds

ModeBound mode_truncation_bound(const ConicalGOperator& op, double sigma1,
                                double sigma2, double height) {
  if (op.family != FamilyKind::SphereFirstOrder)
    throw Error(ErrorCode::FamilyMismatch, "expected SphereFirstOrder");
  const auto& sp = op.sphere;
  const double emax = std::exp(-sp.beta * sigma1);
  const double emin = std::exp(-sp.beta * sigma2);
  const double aa = std::abs(sp.a), bb = std::abs(sp.b);
  const double cc = std::abs(sp.c), dd = std::abs(sp.d);

  if (aa == 0.0 && bb == 0.0)
    return {0, "coefficient of n vanishes; f_n is mode-independent"};

  // lower bound on |a + b e^{-beta p - i n phi0}| over the strip
  double c0;
  std::string branch;
  if (aa > bb * emax) {
    c0 = aa - bb * emax;
    branch = "|a| dominates: |a| > |b| e^{-beta sigma1}";
  } else if (aa < bb * emin) {
    c0 = bb * emin - aa;
    branch = "|b| dominates: |a| < |b| e^{-beta sigma2}";
  } else {
    throw Error(ErrorCode::NoBoundAvailable,
                "the coefficient of n can vanish inside the strip; "
                "supply a manual mode count");
  }
  const double smax = std::max(std::abs(sigma1), std::abs(sigma2));
  const double pmax = std::hypot(smax, height);
  int n = static_cast<int>(std::ceil((pmax + cc + dd * emax) / c0)) + 1;
  return {n, branch};
}

double mode_height_bound(const ConicalGOperator& op, int n, double sigma1) {
  if (op.family != FamilyKind::SphereFirstOrder)
    throw Error(ErrorCode::FamilyMismatch, "expected SphereFirstOrder");
  const auto& sp = op.sphere;
  const double emax = std::exp(-sp.beta * sigma1);
  const double an = std::abs(n);
  return std::abs(sp.a) * an + std::abs(sp.c) +
         (std::abs(sp.b) * an + std::abs(sp.d)) * emax;
}

// ----------------------------------------------------- argument principle

namespace {

struct ContourZeroSignal {};

constexpr int kMaxEdgeDepth = 46;

// phase increment along [z1, z2], densifying until each step turns < pi/2
void track_edge(const ExpPoly& f, Complex z1, Complex z2, Complex v1,
                Complex v2, int depth, double& total, double ztol) {
  double dphi = std::arg(v2 / v1);
  if (std::abs(dphi) < M_PI / 2.0) {
    total += dphi;
    return;
  }
  if (depth >= kMaxEdgeDepth) throw ContourZeroSignal{};
  Complex zm = 0.5 * (z1 + z2);
  Complex vm = f.eval(zm);
  if (std::abs(vm) < ztol) throw ContourZeroSignal{};
  track_edge(f, z1, zm, v1, vm, depth + 1, total, ztol);
  track_edge(f, zm, z2, vm, v2, depth + 1, total, ztol);
}

double contour_phase(const ExpPoly& f, double re_lo, double re_hi,
                     double im_lo, double im_hi, int ppe) {
  const Complex corners[5] = {
      {re_lo, im_lo}, {re_hi, im_lo}, {re_hi, im_hi}, {re_lo, im_hi},
      {re_lo, im_lo}};
  // absolute near-zero threshold tied to the contour's own scale
  double scale = 0.0;
  std::vector<std::vector<Complex>> zs(4), vs(4);
  for (int e = 0; e < 4; ++e) {
    zs[e].resize(ppe + 1);
    vs[e].resize(ppe + 1);
    for (int k = 0; k <= ppe; ++k) {
      Complex z = corners[e] + (corners[e + 1] - corners[e]) *
                                   (double(k) / double(ppe));
      zs[e][k] = z;
      vs[e][k] = f.eval(z);
      scale = std::max(scale, std::abs(vs[e][k]));
    }
  }
  const double ztol = std::max(1e-300, 1e-13 * scale);
  double total = 0.0;
  for (int e = 0; e < 4; ++e)
    for (int k = 0; k < ppe; ++k) {
      if (std::abs(vs[e][k]) < ztol || std::abs(vs[e][k + 1]) < ztol)
        throw ContourZeroSignal{};
      track_edge(f, zs[e][k], zs[e][k + 1], vs[e][k], vs[e][k + 1], 0, total,
                 ztol);
    }
  return total;
}

int winding_or_signal(const ExpPoly& f, double re_lo, double re_hi,
                      double im_lo, double im_hi, int ppe) {
  double total = contour_phase(f, re_lo, re_hi, im_lo, im_hi, ppe);
  double turns = total / (2.0 * M_PI);
  long long k = std::llround(turns);
  if (std::abs(turns - double(k)) > 0.25) throw ContourZeroSignal{};
  return static_cast<int>(k);
}

struct RootSearch {
  const ExpPoly& f;
  ExpPoly fprime;
  const StripSearchConfig& cfg;
  std::vector<RootRecord> found;

  RootSearch(const ExpPoly& fn, const StripSearchConfig& c)
      : f(fn), fprime(fn.derivative()), cfg(c) {}

  int winding_jittered(double re_lo, double re_hi, double im_lo, double im_hi,
                       bool outward) {
    const double jit[4] = {0.0, 3.1e-7, 9.7e-7, 2.9e-6};
    double span = std::max(re_hi - re_lo, im_hi - im_lo);
    for (int attempt = 0; attempt < 4; ++attempt) {
      double d = jit[attempt] * std::max(span, 1.0);
      double sgn = outward ? 1.0 : -1.0;
      try {
        return winding_or_signal(f, re_lo - sgn * d, re_hi + sgn * d,
                                 im_lo - sgn * d, im_hi + sgn * d,
                                 cfg.contour_points_per_edge);
      } catch (const ContourZeroSignal&) {
        if (attempt == 3)
          throw Error(ErrorCode::ContourThroughZero,
                      "contour passes through a zero after 3 jitters");
      }
    }
    return 0;  // unreachable
  }

  bool newton_polish(Complex seed, double re_lo, double re_hi, double im_lo,
                     double im_hi, Complex& root, double& residual) {
    Complex p = seed;
    double margin = 0.3 * std::max(re_hi - re_lo, im_hi - im_lo);
    bool small_residual = false;
    for (int it = 0; it < cfg.max_newton_iter; ++it) {
      Complex fv = f.eval(p);
      small_residual = std::abs(fv) < cfg.newton_tol;
      Complex dv = fprime.eval(p);
      if (std::abs(dv) == 0.0) break;
      Complex step = fv / dv;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      p -= step;
      // for multiple roots |f| underestimates the distance to the root, so
      // iterate until the step itself stalls, not merely until |f| is small
      if (std::abs(step) < 1e-13 * (1.0 + std::abs(p))) {
        small_residual = std::abs(f.eval(p)) < cfg.newton_tol;
        break;
      }
    }
    if (!small_residual) return false;
    if (p.real() < re_lo - margin || p.real() > re_hi + margin ||
        p.imag() < im_lo - margin || p.imag() > im_hi + margin)
      return false;
    root = p;
    residual = std::abs(f.eval(p));
    return true;
  }

  int multiplicity_estimate(Complex root) {
    double r = 1e-6 * (1.0 + std::abs(root));
    try {
      return std::max(1, winding_or_signal(f, root.real() - r, root.real() + r,
                                           root.imag() - r, root.imag() + r,
                                           cfg.contour_points_per_edge));
    } catch (const ContourZeroSignal&) {
      return 1;
    }
  }

  void process(double re_lo, double re_hi, double im_lo, double im_hi,
               int depth) {
    int count;
    if (depth == 0) {
      // the outermost contour may be nudged outward without losing roots
      count = winding_jittered(re_lo, re_hi, im_lo, im_hi, true);
    } else {
      // child contours must not move: a zero on a split line has to surface
      // as ContourThroughZero so the parent retries with another fraction
      try {
        count = winding_or_signal(f, re_lo, re_hi, im_lo, im_hi,
                                  cfg.contour_points_per_edge);
      } catch (const ContourZeroSignal&) {
        throw Error(ErrorCode::ContourThroughZero,
                    "split contour passes through a zero");
      }
    }
    if (count <= 0) return;
    double diag = std::hypot(re_hi - re_lo, im_hi - im_lo);
    if (count == 1 && diag < 0.5) {
      Complex seed(0.5 * (re_lo + re_hi), 0.5 * (im_lo + im_hi));
      Complex root;
      double residual;
      if (newton_polish(seed, re_lo, re_hi, im_lo, im_hi, root, residual)) {
        found.push_back(
            {std::nullopt, root, residual, multiplicity_estimate(root), false});
        return;
      }
    }
    if (diag < 1e-9) {
      // cluster (or Newton-resistant multiple root): report the center
      Complex center(0.5 * (re_lo + re_hi), 0.5 * (im_lo + im_hi));
      found.push_back({std::nullopt, center, std::abs(f.eval(center)), count,
                       false});
      return;
    }
    if (depth > 220)
      throw Error(ErrorCode::NewtonDivergence,
                  "root localization failed to converge");
    // bisect the longer side; nudge the split if it lands on a zero
    bool vertical = (im_hi - im_lo) > (re_hi - re_lo);
    const double fracs[3] = {0.5, 0.513, 0.471};
    const size_t mark = found.size();  // roll back partial results on retry
    for (int attempt = 0; attempt < 3; ++attempt) {
      double t = fracs[attempt];
      found.resize(mark);
      try {
        if (vertical) {
          double mid = im_lo + t * (im_hi - im_lo);
          process(re_lo, re_hi, im_lo, mid, depth + 1);
          process(re_lo, re_hi, mid, im_hi, depth + 1);
        } else {
          double mid = re_lo + t * (re_hi - re_lo);
          process(re_lo, mid, im_lo, im_hi, depth + 1);
          process(mid, re_hi, im_lo, im_hi, depth + 1);
        }
        return;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ContourThroughZero || attempt == 2) throw;
      }
    }
  }
};

}  // namespace

int contour_winding(const ExpPoly& f, double re_lo, double re_hi, double im_lo,
                    double im_hi, int points_per_edge) {
  try {
    return winding_or_signal(f, re_lo, re_hi, im_lo, im_hi, points_per_edge);
  } catch (const ContourZeroSignal&) {
    throw Error(ErrorCode::ContourThroughZero,
                "contour passes through a zero");
  }
}

std::vector<RootRecord> find_roots_in_rect(const ExpPoly& f, double re_lo,
                                           double re_hi, double im_lo,
                                           double im_hi,
                                           const StripSearchConfig& cfg) {
  RootSearch search(f, cfg);
  search.process(re_lo, re_hi, im_lo, im_hi, 0);

  // dedupe within tolerance (same function)
  std::vector<RootRecord> out;
  for (auto& r : search.found) {
    bool merged = false;
    for (auto& o : out) {
      if (std::abs(o.root - r.root) < cfg.dedup_tol) {
        // duplicates come from adjacent cells rediscovering the same zero;
        // each record already carries the full small-contour multiplicity
        o.multiplicity = std::max(o.multiplicity, r.multiplicity);
        if (r.residual < o.residual) o.root = r.root;
        o.residual = std::min(o.residual, r.residual);
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(r);
  }
  std::sort(out.begin(), out.end(), [](const RootRecord& x, const RootRecord& y) {
    if (x.root.real() != y.root.real()) return x.root.real() < y.root.real();
    return x.root.imag() < y.root.imag();
  });

  // cross-check: big-contour count equals the number found (with multiplicity)
  int total = 0;
  for (const auto& r : out) total += r.multiplicity;
  bool ok = false;
  try {
    ok = (total == search.winding_jittered(re_lo, re_hi, im_lo, im_hi, true));
  } catch (const Error&) {
    ok = false;
  }
  for (auto& r : out) r.contour_checked = ok;
  return out;
}

std::vector<RootRecord> find_singular_weights(const ConicalGOperator& op,
                                              const StripSearchConfig& cfg) {
  ConormalFamily fam = conormal_family(op);
  std::vector<int> modes;
  if (fam.kind == ConormalFamily::Kind::HalflineScalar) {
    modes.push_back(0);
  } else {
    int n;
    if (cfg.manual_modes) {
      n = *cfg.manual_modes;
    } else {
      n = mode_truncation_bound(op, cfg.sigma1, cfg.sigma2, cfg.height).modes;
    }
    for (int k = -n; k <= n; ++k) modes.push_back(k);
  }

  std::vector<RootRecord> all;
  for (int n : modes) {
    ExpPoly f = fam.mode(n);
    auto roots = find_roots_in_rect(f, cfg.sigma1, cfg.sigma2, -cfg.height,
                                    cfg.height, cfg);
    for (auto& r : roots) {
      if (fam.kind == ConormalFamily::Kind::SphereModes) r.mode = n;
      all.push_back(r);
    }
  }
  std::sort(all.begin(), all.end(), [](const RootRecord& x, const RootRecord& y) {
    int mx = x.mode.value_or(0), my = y.mode.value_or(0);
    if (mx != my) return mx < my;
    if (x.root.real() != y.root.real()) return x.root.real() < y.root.real();
    return x.root.imag() < y.root.imag();
  });
  return all;
}

LineCheck check_conormal_on_line(const ConicalGOperator& op, double gamma,
                                 const StripSearchConfig& cfg) {
  LineCheck out;
  if (op.family == FamilyKind::HalflineZeroOrder) {
    const auto& hl = op.halfline;
    double lo = std::min(op.gamma_plus, op.gamma_minus);
    double hi = std::max(op.gamma_plus, op.gamma_minus);
    if (gamma < lo - 1e-12 || gamma > hi + 1e-12)
      throw Error(ErrorCode::InvalidInput,
                  "gamma outside the operator's weight interval");
    auto verdict = halfline_region_classify(std::abs(hl.a), std::abs(hl.b),
                                            hl.alpha, hl.beta, gamma, gamma);
    out.verdict = verdict.elliptic;
    out.min_modulus = halfline_min_modulus_exact(
        std::abs(hl.a), std::abs(hl.b), hl.alpha, hl.beta, gamma);
    out.roots = find_singular_weights(op, cfg);
  } else {
    out.roots = find_singular_weights(op, cfg);
    ConormalFamily fam = conormal_family(op);
    int n_modes = cfg.manual_modes
                      ? *cfg.manual_modes
                      : mode_truncation_bound(op, cfg.sigma1, cfg.sigma2,
                                              cfg.height).modes;
    double min_mod = std::numeric_limits<double>::infinity();
    const int samples = 2048;
    for (int n = -n_modes; n <= n_modes; ++n) {
      ExpPoly f = fam.mode(n);
      for (int k = 0; k <= samples; ++k) {
        double y = -cfg.height + 2.0 * cfg.height * k / samples;
        min_mod = std::min(min_mod, std::abs(f.eval(Complex(gamma, y))));
      }
    }
    out.min_modulus = min_mod;
    out.verdict = true;
  }
  double nearest = std::numeric_limits<double>::infinity();
  double root_tol = std::max(cfg.dedup_tol, 1e-9);
  for (const auto& r : out.roots) {
    double d = std::abs(r.root.real() - gamma);
    nearest = std::min(nearest, d);
    if (op.family != FamilyKind::HalflineZeroOrder && d < root_tol)
      out.verdict = false;
  }
  out.nearest_root_distance = nearest;
  return out;
}

}  // namespace gop
