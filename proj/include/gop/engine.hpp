#pragma once

// Combines the interior and conormal checks into a single Fredholm verdict
// with margins, witnesses, and the certificates that produced each
// sub-verdict.  Ellipticity implies the Fredholm property; the converse is
// not claimed.

#include <optional>
#include <string>
#include <vector>

#include "gop/conormal.hpp"
#include "gop/halfline.hpp"
#include "gop/interior_symbol.hpp"
#include "gop/operator_model.hpp"

namespace gop {

enum class OverallVerdict {
  Fredholm,
  NotEllipticInterior,
  NotEllipticConormal,
  NotEllipticBoth,
  Inconclusive,
};

const char* overall_verdict_name(OverallVerdict v);

struct InteriorReport {
  bool verdict = false;
  double margin = 0.0;
  std::optional<Complex> witness;
  std::string certificate;
};

struct ConormalLineReport {
  double gamma = 0.0;
  bool verdict = false;
  double min_modulus = 0.0;
  double nearest_root_distance = 0.0;
};

struct ConormalReport {
  bool verdict = false;           // the family-appropriate criterion
  std::vector<ConormalLineReport> lines;       // weight lines gamma_+-
  std::optional<bool> strip_verdict;           // whole-strip criterion
  std::optional<std::pair<double, double>> failing_interval;
  std::optional<DominantTerm> dominant;
  std::vector<RootRecord> singular_weights;
  std::string certificate;
};

struct EllipticityReport {
  std::string operator_digest;
  InteriorReport interior;
  ConormalReport conormal;
  OverallVerdict overall = OverallVerdict::Inconclusive;
  std::vector<std::string> certificates;
  std::vector<std::string> notes;
};

struct CheckConfig {
  StripSearchConfig strip;        // conormal search region
  bool strip_set = false;         // false: derive from the weights
  double line_tolerance = 1e-8;   // root-on-line distance
  std::vector<int> window_schedule = {16, 32, 64};  // GenericBanded heuristic
  double window_tol = 1e-3;
};

EllipticityReport check_ellipticity(const ConicalGOperator& op,
                                    const CheckConfig& cfg = {});

struct SweepRow {
  double gamma = 0.0;
  bool verdict = false;
  double nearest_root_distance = 0.0;
};

// Conormal on-line verdict per grid gamma; the admissible-weight table.
std::vector<SweepRow> weight_sweep(const ConicalGOperator& op,
                                   const std::vector<double>& gammas,
                                   const CheckConfig& cfg = {});

// Stable-key-ordered serialization (byte-identical for identical inputs).
std::string report_to_json(const EllipticityReport& rep);
std::string report_to_text(const EllipticityReport& rep);

}  // namespace gop
