#include "gop/engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

namespace gop {

using ordered_json = nlohmann::ordered_json;

const char* overall_verdict_name(OverallVerdict v) {
  switch (v) {
    case OverallVerdict::Fredholm: return "fredholm";
    case OverallVerdict::NotEllipticInterior: return "not_elliptic(interior)";
    case OverallVerdict::NotEllipticConormal: return "not_elliptic(conormal)";
    case OverallVerdict::NotEllipticBoth: return "not_elliptic(both)";
    case OverallVerdict::Inconclusive: return "inconclusive(numerical)";
  }
  return "?";
}

namespace {

std::string fmt_complex(Complex z) {
  std::ostringstream ss;
  ss.precision(17);
  ss << "[" << z.real() << "," << z.imag() << "]";
  return ss.str();
}

std::string operator_digest(const ConicalGOperator& op) {
  std::ostringstream ss;
  ss.precision(17);
  switch (op.family) {
    case FamilyKind::SphereFirstOrder:
      ss << "sphere_first_order a=" << fmt_complex(op.sphere.a)
         << " b=" << fmt_complex(op.sphere.b)
         << " c=" << fmt_complex(op.sphere.c)
         << " d=" << fmt_complex(op.sphere.d) << " beta=" << op.sphere.beta
         << " phi0=" << op.sphere.phi0;
      break;
    case FamilyKind::HalflineZeroOrder:
      ss << "halfline_zero_order a=" << fmt_complex(op.halfline.a)
         << " b=" << fmt_complex(op.halfline.b)
         << " alpha=" << op.halfline.alpha << " beta=" << op.halfline.beta;
      break;
    case FamilyKind::GenericBanded:
      ss << "generic_banded terms=" << op.banded_terms.size()
         << " order=" << op.order;
      break;
  }
  ss << " gamma_plus=" << op.gamma_plus << " gamma_minus=" << op.gamma_minus;
  return ss.str();
}

StripSearchConfig effective_strip(const ConicalGOperator& op,
                                  const CheckConfig& cfg) {
  if (cfg.strip_set) return cfg.strip;
  StripSearchConfig s = cfg.strip;
  double lo = std::min(op.gamma_plus, op.gamma_minus);
  double hi = std::max(op.gamma_plus, op.gamma_minus);
  s.sigma1 = lo - 1.0;
  s.sigma2 = hi + 1.0;
  return s;
}

ConormalLineReport line_report_from_roots(
    const ConicalGOperator& op, const std::vector<RootRecord>& roots,
    double gamma, double line_tol, const StripSearchConfig& strip) {
  ConormalLineReport rep;
  rep.gamma = gamma;
  double nearest = std::numeric_limits<double>::infinity();
  for (const auto& r : roots)
    nearest = std::min(nearest, std::abs(r.root.real() - gamma));
  rep.nearest_root_distance = nearest;
  rep.verdict = nearest >= line_tol;

  ConormalFamily fam = conormal_family(op);
  int n_modes = 0;
  if (op.family == FamilyKind::SphereFirstOrder) {
    for (const auto& r : roots)
      n_modes = std::max(n_modes, std::abs(r.mode.value_or(0)));
    n_modes = std::max(n_modes, 4);
  }
  double min_mod = std::numeric_limits<double>::infinity();
  const int samples = 1024;
  for (int n = -n_modes; n <= n_modes; ++n) {
    ExpPoly f = fam.mode(n);
    for (int k = 0; k <= samples; ++k) {
      double y = -strip.height + 2.0 * strip.height * k / samples;
      min_mod = std::min(min_mod, std::abs(f.eval(Complex(gamma, y))));
    }
  }
  rep.min_modulus = min_mod;
  return rep;
}

}  // namespace

EllipticityReport check_ellipticity(const ConicalGOperator& op,
                                    const CheckConfig& cfg) {
  EllipticityReport rep;
  rep.operator_digest = operator_digest(op);
  StripSearchConfig strip = effective_strip(op, cfg);

  bool interior_ok = false, conormal_ok = false, inconclusive = false;

  switch (op.family) {
    case FamilyKind::SphereFirstOrder: {
      InteriorVerdict iv = check_interior_elliptic_sphere(op);
      rep.interior.verdict = iv.elliptic;
      rep.interior.margin = iv.margin;
      rep.interior.witness = iv.witness;
      rep.interior.certificate =
          "analytic annulus criterion |Re a| > |b|/r";
      rep.certificates.push_back("interior: " + rep.interior.certificate);
      interior_ok = iv.elliptic;

      try {
        auto bound = mode_truncation_bound(op, strip.sigma1, strip.sigma2,
                                           strip.height);
        rep.certificates.push_back("conormal mode bound: " +
                                   bound.certificate);
        if (!strip.manual_modes) strip.manual_modes = bound.modes;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoBoundAvailable) throw;
        if (!strip.manual_modes) strip.manual_modes = 16;
        rep.notes.push_back(
            "no mode-truncation estimate applies; retained modes |n| <= " +
            std::to_string(*strip.manual_modes) + " without a tail certificate");
      }
      rep.conormal.singular_weights = find_singular_weights(op, strip);
      rep.conormal.lines.push_back(
          line_report_from_roots(op, rep.conormal.singular_weights,
                                 op.gamma_plus, cfg.line_tolerance, strip));
      if (op.gamma_minus != op.gamma_plus)
        rep.conormal.lines.push_back(
            line_report_from_roots(op, rep.conormal.singular_weights,
                                   op.gamma_minus, cfg.line_tolerance, strip));
      // strip criterion (reported separately): no singular weight strictly
      // between the two weight lines
      double lo = std::min(op.gamma_plus, op.gamma_minus);
      double hi = std::max(op.gamma_plus, op.gamma_minus);
      bool strip_ok = true;
      for (const auto& r : rep.conormal.singular_weights)
        if (r.root.real() > lo + cfg.line_tolerance &&
            r.root.real() < hi - cfg.line_tolerance)
          strip_ok = false;
      rep.conormal.strip_verdict = strip_ok;
      conormal_ok = true;
      for (const auto& l : rep.conormal.lines) conormal_ok &= l.verdict;
      rep.conormal.verdict = conormal_ok;
      rep.conormal.certificate =
          "argument-principle root search on the weight lines";
      rep.certificates.push_back("conormal: " + rep.conormal.certificate);
      break;
    }
    case FamilyKind::HalflineZeroOrder: {
      rep.interior.verdict = true;
      rep.interior.margin = 1.0;  // the symbol is the identity
      rep.interior.certificate =
          "order 0 with no differential part; interior symbol is 1 and the "
          "operator's content is conormal";
      rep.certificates.push_back("interior: " + rep.interior.certificate);
      interior_ok = true;

      const auto& hl = op.halfline;
      double lo = std::min(op.gamma_plus, op.gamma_minus);
      double hi = std::max(op.gamma_plus, op.gamma_minus);
      HalflineVerdict hv = halfline_region_classify(
          std::abs(hl.a), std::abs(hl.b), hl.alpha, hl.beta, lo, hi);
      rep.conormal.verdict = hv.elliptic;
      rep.conormal.strip_verdict = hv.elliptic;
      rep.conormal.failing_interval = hv.failing_interval;
      rep.conormal.dominant = hv.dominant;
      for (double g : {lo, hi}) {
        ConormalLineReport lr;
        lr.gamma = g;
        auto single = halfline_region_classify(std::abs(hl.a), std::abs(hl.b),
                                               hl.alpha, hl.beta, g, g);
        lr.verdict = single.elliptic;
        lr.min_modulus = halfline_min_modulus_exact(
            std::abs(hl.a), std::abs(hl.b), hl.alpha, hl.beta, g);
        lr.nearest_root_distance =
            std::numeric_limits<double>::infinity();
        rep.conormal.lines.push_back(lr);
        if (lo == hi) break;
      }
      rep.conormal.certificate =
          "triangle-inequality classification over the weight interval";
      rep.certificates.push_back("conormal: " + rep.conormal.certificate);
      if (hl.commensurable_warning)
        rep.notes.push_back(
            "alpha/beta is (near-)commensurable: the torus-closure criterion "
            "is conservative and may report non-elliptic where the restricted "
            "phase curve misses zero");
      conormal_ok = hv.elliptic;
      break;
    }
    case FamilyKind::GenericBanded: {
      std::vector<CovectorSample> contexts;
      for (int k = 0; k < 8; ++k) {
        double th = M_PI * (k + 0.5) / 8.0;
        contexts.push_back({std::cos(th), std::sin(th)});
      }
      GenericInteriorReport gi = check_interior_elliptic_generic(
          op, contexts, cfg.window_schedule, cfg.window_tol);
      rep.interior.verdict = gi.likely_elliptic;
      rep.interior.margin = gi.min_sigma;
      rep.interior.certificate = gi.note;
      rep.certificates.push_back("interior: " + gi.note);
      interior_ok = gi.likely_elliptic;
      inconclusive = true;  // only window heuristics available
      rep.notes.push_back(
          "generic banded family: only the finite-section heuristic applies; "
          "no analytic conormal criterion is available");
      break;
    }
  }

  if (inconclusive) {
    rep.overall = OverallVerdict::Inconclusive;
  } else if (interior_ok && conormal_ok) {
    rep.overall = OverallVerdict::Fredholm;
  } else if (!interior_ok && !conormal_ok) {
    rep.overall = OverallVerdict::NotEllipticBoth;
  } else if (!interior_ok) {
    rep.overall = OverallVerdict::NotEllipticInterior;
  } else {
    rep.overall = OverallVerdict::NotEllipticConormal;
  }
  if (rep.overall != OverallVerdict::Fredholm &&
      rep.overall != OverallVerdict::Inconclusive)
    rep.notes.push_back(
        "non-ellipticity is not covered by the finiteness theorem: the "
        "implication proved is elliptic => Fredholm only");
  return rep;
}

std::vector<SweepRow> weight_sweep(const ConicalGOperator& op,
                                   const std::vector<double>& gammas,
                                   const CheckConfig& cfg) {
  std::vector<SweepRow> rows;
  if (gammas.empty()) return rows;
  if (op.family == FamilyKind::SphereFirstOrder) {
    StripSearchConfig strip = effective_strip(op, cfg);
    // widen the strip to cover the requested grid
    strip.sigma1 = std::min(strip.sigma1,
                            *std::min_element(gammas.begin(), gammas.end()) - 0.5);
    strip.sigma2 = std::max(strip.sigma2,
                            *std::max_element(gammas.begin(), gammas.end()) + 0.5);
    if (!strip.manual_modes) {
      try {
        strip.manual_modes =
            mode_truncation_bound(op, strip.sigma1, strip.sigma2, strip.height)
                .modes;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoBoundAvailable) throw;
        strip.manual_modes = 16;
      }
    }
    auto roots = find_singular_weights(op, strip);
    for (double g : gammas) {
      SweepRow row;
      row.gamma = g;
      double nearest = std::numeric_limits<double>::infinity();
      for (const auto& r : roots)
        nearest = std::min(nearest, std::abs(r.root.real() - g));
      row.nearest_root_distance = nearest;
      row.verdict = nearest >= cfg.line_tolerance;
      rows.push_back(row);
    }
  } else if (op.family == FamilyKind::HalflineZeroOrder) {
    const auto& hl = op.halfline;
    for (double g : gammas) {
      SweepRow row;
      row.gamma = g;
      auto v = halfline_region_classify(std::abs(hl.a), std::abs(hl.b),
                                        hl.alpha, hl.beta, g, g);
      row.verdict = v.elliptic;
      row.nearest_root_distance = halfline_min_modulus_exact(
          std::abs(hl.a), std::abs(hl.b), hl.alpha, hl.beta, g);
      rows.push_back(row);
    }
  } else {
    throw Error(ErrorCode::FamilyMismatch,
                "weight_sweep: no conormal criterion for generic operators");
  }
  return rows;
}

namespace {

ordered_json root_to_json(const RootRecord& r) {
  ordered_json j;
  if (r.mode) j["mode"] = *r.mode;
  j["root"] = {r.root.real(), r.root.imag()};
  j["residual"] = r.residual;
  j["multiplicity"] = r.multiplicity;
  j["contour_checked"] = r.contour_checked;
  return j;
}

ordered_json report_json(const EllipticityReport& rep) {
  ordered_json j;
  j["schema"] = 1;
  j["operator"] = rep.operator_digest;
  ordered_json ji;
  ji["verdict"] = rep.interior.verdict;
  ji["margin"] = rep.interior.margin;
  if (rep.interior.witness)
    ji["witness"] = {rep.interior.witness->real(), rep.interior.witness->imag()};
  ji["certificate"] = rep.interior.certificate;
  j["interior"] = ji;

  ordered_json jc;
  jc["verdict"] = rep.conormal.verdict;
  ordered_json lines = ordered_json::array();
  for (const auto& l : rep.conormal.lines) {
    ordered_json jl;
    jl["gamma"] = l.gamma;
    jl["verdict"] = l.verdict;
    jl["min_modulus"] = l.min_modulus;
    jl["nearest_root_distance"] =
        std::isfinite(l.nearest_root_distance)
            ? ordered_json(l.nearest_root_distance)
            : ordered_json("inf");
    lines.push_back(jl);
  }
  jc["lines"] = lines;
  if (rep.conormal.strip_verdict)
    jc["strip_verdict"] = *rep.conormal.strip_verdict;
  if (rep.conormal.failing_interval)
    jc["failing_interval"] = {rep.conormal.failing_interval->first,
                              rep.conormal.failing_interval->second};
  if (rep.conormal.dominant)
    jc["dominant"] = dominant_name(*rep.conormal.dominant);
  ordered_json roots = ordered_json::array();
  for (const auto& r : rep.conormal.singular_weights)
    roots.push_back(root_to_json(r));
  jc["singular_weights"] = roots;
  jc["certificate"] = rep.conormal.certificate;
  j["conormal"] = jc;

  j["overall"] = overall_verdict_name(rep.overall);
  j["certificates"] = rep.certificates;
  j["notes"] = rep.notes;
  return j;
}

}  // namespace

std::string report_to_json(const EllipticityReport& rep) {
  return report_json(rep).dump(2);
}

std::string report_to_text(const EllipticityReport& rep) {
  std::ostringstream ss;
  ss.precision(12);
  ss << "operator: " << rep.operator_digest << "\n";
  ss << "interior: " << (rep.interior.verdict ? "invertible" : "degenerate")
     << " (margin " << rep.interior.margin << ")\n";
  if (rep.interior.witness)
    ss << "  witness zeta = " << rep.interior.witness->real() << " + "
       << rep.interior.witness->imag() << "i\n";
  ss << "  certificate: " << rep.interior.certificate << "\n";
  ss << "conormal: " << (rep.conormal.verdict ? "invertible" : "degenerate")
     << "\n";
  for (const auto& l : rep.conormal.lines) {
    ss << "  line Re p = " << l.gamma << ": "
       << (l.verdict ? "invertible" : "degenerate")
       << ", min |f| = " << l.min_modulus;
    if (std::isfinite(l.nearest_root_distance))
      ss << ", nearest root distance " << l.nearest_root_distance;
    ss << "\n";
  }
  if (rep.conormal.strip_verdict)
    ss << "  strip criterion: "
       << (*rep.conormal.strip_verdict ? "holds" : "fails") << "\n";
  if (rep.conormal.failing_interval)
    ss << "  circles intersect for gamma in ["
       << rep.conormal.failing_interval->first << ", "
       << rep.conormal.failing_interval->second << "]\n";
  if (rep.conormal.dominant)
    ss << "  dominant term: " << dominant_name(*rep.conormal.dominant) << "\n";
  if (!rep.conormal.singular_weights.empty()) {
    ss << "  singular weights:\n";
    for (const auto& r : rep.conormal.singular_weights) {
      ss << "    ";
      if (r.mode) ss << "mode " << *r.mode << ": ";
      ss << "p = " << r.root.real() << " + " << r.root.imag()
         << "i (mult " << r.multiplicity << ")\n";
    }
  }
  ss << "overall: " << overall_verdict_name(rep.overall) << "\n";
  for (const auto& n : rep.notes) ss << "note: " << n << "\n";
  return ss.str();
}

}  // namespace gop
