#include "gop/config.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace gop {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& key, const std::string& msg) {
  throw Error(ErrorCode::ConfigError, "config key '" + key + "': " + msg);
}

Complex get_complex(const ordered_json& j, const std::string& section,
                    const std::string& name, Complex fallback = {0, 0},
                    bool required = false) {
  const std::string key = section + "." + name;
  if (!j.contains(name)) {
    if (required) bad(key, "missing");
    return fallback;
  }
  const auto& v = j.at(name);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    bad(key, "expected [re, im]");
  return Complex(v[0].get<double>(), v[1].get<double>());
}

double get_real(const ordered_json& j, const std::string& section,
                const std::string& name, double fallback = 0.0,
                bool required = false) {
  const std::string key = section + "." + name;
  if (!j.contains(name)) {
    if (required) bad(key, "missing");
    return fallback;
  }
  if (!j.at(name).is_number()) bad(key, "expected a number");
  return j.at(name).get<double>();
}

}  // namespace

ConicalGOperator parse_operator_config(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ConfigError,
                std::string("config parse error: ") + e.what());
  }
  if (!j.contains("schema") || j["schema"] != 1)
    bad("schema", "expected schema = 1");
  if (!j.contains("family_kind") || !j["family_kind"].is_string())
    bad("family_kind", "missing or not a string");
  std::string family = j["family_kind"].get<std::string>();

  ordered_json coeffs = j.value("coefficients", ordered_json::object());
  ordered_json exps = j.value("exponents", ordered_json::object());
  ordered_json weights = j.value("weights", ordered_json::object());
  double gp = get_real(weights, "weights", "gamma_plus");
  double gm = get_real(weights, "weights", "gamma_minus");

  if (family == "sphere_first_order") {
    Complex a = get_complex(coeffs, "coefficients", "a");
    Complex b = get_complex(coeffs, "coefficients", "b");
    Complex c = get_complex(coeffs, "coefficients", "c");
    Complex d = get_complex(coeffs, "coefficients", "d");
    double beta = get_real(exps, "exponents", "beta", 0.0, true);
    double phi0 = get_real(exps, "exponents", "phi0", 0.0);
    return make_sphere_operator(a, b, c, d, beta, phi0, gp, gm);
  }
  if (family == "halfline_zero_order") {
    Complex a = get_complex(coeffs, "coefficients", "a");
    Complex b = get_complex(coeffs, "coefficients", "b");
    double alpha = get_real(exps, "exponents", "alpha", 0.0, true);
    double beta = get_real(exps, "exponents", "beta", 0.0, true);
    return make_halfline_operator(a, b, alpha, beta, gp, gm);
  }
  bad("family_kind", "unknown family '" + family + "'");
}

ConicalGOperator load_operator_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::ConfigError, "cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_operator_config(ss.str());
}

std::string serialize_operator_config(const ConicalGOperator& op) {
  ordered_json j;
  j["schema"] = 1;
  auto put_complex = [](ordered_json& dst, const char* name, Complex z) {
    dst[name] = {z.real(), z.imag()};
  };
  switch (op.family) {
    case FamilyKind::SphereFirstOrder: {
      j["family_kind"] = "sphere_first_order";
      ordered_json coeffs;
      put_complex(coeffs, "a", op.sphere.a);
      put_complex(coeffs, "b", op.sphere.b);
      put_complex(coeffs, "c", op.sphere.c);
      put_complex(coeffs, "d", op.sphere.d);
      j["coefficients"] = coeffs;
      j["exponents"] = {{"beta", op.sphere.beta}, {"phi0", op.sphere.phi0}};
      break;
    }
    case FamilyKind::HalflineZeroOrder: {
      j["family_kind"] = "halfline_zero_order";
      ordered_json coeffs;
      put_complex(coeffs, "a", op.halfline.a);
      put_complex(coeffs, "b", op.halfline.b);
      j["coefficients"] = coeffs;
      j["exponents"] = {{"alpha", op.halfline.alpha},
                        {"beta", op.halfline.beta}};
      break;
    }
    case FamilyKind::GenericBanded:
      throw Error(ErrorCode::ConfigError,
                  "generic banded operators have no config serialization");
  }
  j["weights"] = {{"gamma_plus", op.gamma_plus},
                  {"gamma_minus", op.gamma_minus}};
  return j.dump(2) + "\n";
}

}  // namespace gop
