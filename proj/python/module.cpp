#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gop/config.hpp"
#include "gop/engine.hpp"
#include "gop/errors.hpp"
#include "gop/halfline.hpp"
#include "gop/interior_symbol.hpp"
#include "gop/mellin.hpp"

namespace py = pybind11;
using namespace gop;

namespace {

StripSearchConfig strip_config(double sigma1, double sigma2, double height,
                               std::optional<int> modes) {
  StripSearchConfig cfg;
  cfg.sigma1 = sigma1;
  cfg.sigma2 = sigma2;
  cfg.height = height;
  cfg.manual_modes = modes;
  return cfg;
}

py::dict root_record_dict(const RootRecord& r) {
  py::dict d;
  d["mode"] = r.mode ? py::cast(*r.mode) : py::none();
  d["root"] = r.root;
  d["residual"] = r.residual;
  d["multiplicity"] = r.multiplicity;
  d["contour_checked"] = r.contour_checked;
  return d;
}

RadialFunction radial_from_samples(const std::vector<Complex>& values,
                                   double T, bool rapid_at_origin,
                                   double power_at_origin) {
  RadialFunction u;
  u.T = T;
  u.values = values;
  u.at_origin = {rapid_at_origin, power_at_origin};
  u.at_infinity = {true, 0.0};
  return u;
}

}  // namespace

PYBIND11_MODULE(_gopell, m) {
  m.doc() = "Ellipticity and Fredholm checks for shift operators near a "
            "conical point";

  py::register_exception<Error>(m, "GopellError");

  py::class_<ConicalGOperator>(m, "Operator")
      .def_property_readonly("gamma_plus",
                             [](const ConicalGOperator& op) {
                               return op.gamma_plus;
                             })
      .def_property_readonly("gamma_minus",
                             [](const ConicalGOperator& op) {
                               return op.gamma_minus;
                             })
      .def("__repr__", [](const ConicalGOperator& op) {
        switch (op.family) {
          case FamilyKind::SphereFirstOrder:
            return std::string("<gopell.Operator sphere_first_order>");
          case FamilyKind::HalflineZeroOrder:
            return std::string("<gopell.Operator halfline_zero_order>");
          default:
            return std::string("<gopell.Operator generic_banded>");
        }
      });

  m.def("sphere_operator", &make_sphere_operator, py::arg("a"), py::arg("b"),
        py::arg("c"), py::arg("d"), py::arg("beta") = 1.0,
        py::arg("phi0") = 0.0, py::arg("gamma_plus") = 0.0,
        py::arg("gamma_minus") = 0.0,
        "First-order sphere-base operator -r d/dr + (a + b T)(-i d/dphi) + "
        "(c + d T)");
  m.def("halfline_operator", &make_halfline_operator, py::arg("a"),
        py::arg("b"), py::arg("alpha") = 1.0, py::arg("beta") = 1.0,
        py::arg("gamma_plus") = 0.0, py::arg("gamma_minus") = 0.0,
        "Zero-order half-line operator 1 + a T_alpha + b T_beta");

  m.def("parse_operator_config", &parse_operator_config, py::arg("text"));
  m.def("load_operator_config", &load_operator_config, py::arg("path"));
  m.def("serialize_operator_config", &serialize_operator_config,
        py::arg("op"));

  m.def(
      "check_ellipticity_json",
      [](const ConicalGOperator& op) {
        return report_to_json(check_ellipticity(op));
      },
      py::arg("op"),
      "Full check; returns the stable-key-ordered JSON report");
  m.def(
      "check_ellipticity_text",
      [](const ConicalGOperator& op) {
        return report_to_text(check_ellipticity(op));
      },
      py::arg("op"));
  m.def(
      "overall_verdict",
      [](const ConicalGOperator& op) {
        return std::string(
            overall_verdict_name(check_ellipticity(op).overall));
      },
      py::arg("op"));

  m.def(
      "find_singular_weights",
      [](const ConicalGOperator& op, double sigma1, double sigma2,
         double height, std::optional<int> modes) {
        auto roots = find_singular_weights(
            op, strip_config(sigma1, sigma2, height, modes));
        py::list out;
        for (const auto& r : roots) out.append(root_record_dict(r));
        return out;
      },
      py::arg("op"), py::arg("sigma1") = -2.0, py::arg("sigma2") = 2.0,
      py::arg("height") = 20.0, py::arg("modes") = py::none(),
      "Conormal zeros in the strip sigma1 <= Re p <= sigma2, |Im p| <= height");

  m.def(
      "weight_sweep",
      [](const ConicalGOperator& op, const std::vector<double>& gammas) {
        py::list out;
        for (const auto& row : weight_sweep(op, gammas)) {
          py::dict d;
          d["gamma"] = row.gamma;
          d["admissible"] = row.verdict;
          d["nearest_root_distance"] = row.nearest_root_distance;
          out.append(d);
        }
        return out;
      },
      py::arg("op"), py::arg("gammas"));

  m.def("annulus_radii",
        [](double beta, double gamma_plus, double gamma_minus) {
          auto a = annulus_radii(beta, gamma_plus, gamma_minus);
          return py::make_tuple(a.inner, a.outer);
        },
        py::arg("beta"), py::arg("gamma_plus"), py::arg("gamma_minus"));
  m.def(
      "interior_margin",
      [](const ConicalGOperator& op) {
        auto v = check_interior_elliptic_sphere(op);
        py::dict d;
        d["elliptic"] = v.elliptic;
        d["margin"] = v.margin;
        d["witness"] = v.witness ? py::cast(*v.witness) : py::none();
        return d;
      },
      py::arg("op"), "Analytic interior criterion |Re a| > |b| / r");
  m.def("weight_function",
        [](const ConicalGOperator& op, double s, int n) {
          return weight_function(op, SymbolContext::interior_point(), s, n);
        },
        py::arg("op"), py::arg("s"), py::arg("n"),
        "Orbit weight m_{s,gamma}(n) at an interior point");

  m.def("halfline_classify",
        [](double abs_a, double abs_b, double alpha, double beta,
           double gamma_minus, double gamma_plus) {
          auto v = halfline_region_classify(abs_a, abs_b, alpha, beta,
                                            gamma_minus, gamma_plus);
          py::dict d;
          d["elliptic"] = v.elliptic;
          d["dominant"] =
              v.dominant ? py::cast(dominant_name(*v.dominant)) : py::none();
          d["failing_interval"] =
              v.failing_interval
                  ? py::cast(*v.failing_interval)
                  : py::none();
          return d;
        },
        py::arg("abs_a"), py::arg("abs_b"), py::arg("alpha"), py::arg("beta"),
        py::arg("gamma_minus"), py::arg("gamma_plus"));
  m.def("halfline_min_modulus", &halfline_min_modulus_exact, py::arg("abs_a"),
        py::arg("abs_b"), py::arg("alpha"), py::arg("beta"), py::arg("gamma"));
  m.def("halfline_region_grid",
        [](double alpha, double beta, double gamma_minus, double gamma_plus,
           int na, int nb, double amax, double bmax) {
          auto g = halfline_region_plot(alpha, beta, gamma_minus, gamma_plus,
                                        na, nb, amax, bmax);
          py::list out;
          for (const auto& c : g.cells) {
            py::dict d;
            d["abs_a"] = c.abs_a;
            d["abs_b"] = c.abs_b;
            d["elliptic"] = c.elliptic;
            d["dominant"] =
                c.dominant ? py::cast(dominant_name(*c.dominant)) : py::none();
            out.append(d);
          }
          return py::make_tuple(out, count_elliptic_components(g));
        },
        py::arg("alpha"), py::arg("beta"), py::arg("gamma_minus"),
        py::arg("gamma_plus"), py::arg("na"), py::arg("nb"), py::arg("amax"),
        py::arg("bmax"),
        "Returns (cells, number of elliptic connected components)");

  m.def(
      "mellin_transform",
      [](const std::vector<Complex>& values, double T, Complex p,
         bool rapid_at_origin, double power_at_origin) {
        return mellin_transform(
            radial_from_samples(values, T, rapid_at_origin, power_at_origin),
            p);
      },
      py::arg("values"), py::arg("T"), py::arg("p"),
      py::arg("rapid_at_origin") = false, py::arg("power_at_origin") = 0.0,
      "Transform of samples u(exp(-t_j)), t_j uniform on [-T, T]");
  m.def(
      "plancherel_residual",
      [](const std::vector<Complex>& values, double T, double gamma,
         bool rapid_at_origin, double power_at_origin) {
        return plancherel_residual(
            radial_from_samples(values, T, rapid_at_origin, power_at_origin),
            gamma);
      },
      py::arg("values"), py::arg("T"), py::arg("gamma"),
      py::arg("rapid_at_origin") = false, py::arg("power_at_origin") = 0.0);
}
