// gopell: Fredholm/ellipticity checks for shift operators on manifolds with
// a conical point.  Exit codes: 0 Fredholm (or plain success), 1 not
// elliptic, 2 inconclusive, 3 input/config error, 4 numerical failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gop/config.hpp"
#include "gop/engine.hpp"
#include "gop/errors.hpp"
#include "gop/halfline.hpp"
#include "gop/interior_symbol.hpp"
#include "gop/mellin.hpp"

using namespace gop;
using ordered_json = nlohmann::ordered_json;

namespace {

int error_exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::ContourThroughZero:
    case ErrorCode::NewtonDivergence:
    case ErrorCode::DivergentTail:
    case ErrorCode::NoBoundAvailable:
      return 4;
    default:
      return 3;  // input/config problems
  }
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path);
  if (!out)
    throw Error(ErrorCode::InvalidInput, "cannot open output: " + output_path);
  out << text;
}

int verdict_exit_code(OverallVerdict v) {
  switch (v) {
    case OverallVerdict::Fredholm: return 0;
    case OverallVerdict::Inconclusive: return 2;
    default: return 1;
  }
}

struct CommonOpts {
  std::string file;
  std::string output;
  std::string format = "text";
};

CheckConfig check_config_from(const std::vector<double>& strip, double height,
                              int modes, double line_tol) {
  CheckConfig cfg;
  if (!strip.empty()) {
    cfg.strip.sigma1 = strip[0];
    cfg.strip.sigma2 = strip[1];
    cfg.strip_set = true;
  }
  if (height > 0) {
    cfg.strip.height = height;
    cfg.strip_set = true;
  }
  if (modes >= 0) cfg.strip.manual_modes = modes;
  if (line_tol > 0) cfg.line_tolerance = line_tol;
  return cfg;
}

// ------------------------------------------------------------------ check
int run_check(const CommonOpts& o, const CheckConfig& cfg) {
  auto op = load_operator_config(o.file);
  auto rep = check_ellipticity(op, cfg);
  if (o.format == "structured")
    emit(report_to_json(rep) + "\n", o.output);
  else if (o.format == "text")
    emit(report_to_text(rep), o.output);
  else
    throw Error(ErrorCode::InvalidInput,
                "format: check supports text or structured");
  return verdict_exit_code(rep.overall);
}

// ------------------------------------------------------- singular-weights
int run_singular_weights(const CommonOpts& o, const StripSearchConfig& scfg) {
  auto op = load_operator_config(o.file);
  auto roots = find_singular_weights(op, scfg);
  if (o.format == "csv") {
    std::ostringstream s;
    s << "mode,re,im,residual,multiplicity,contour_checked\n";
    for (const auto& r : roots) {
      if (r.mode) s << *r.mode;
      char buf[128];
      std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%.3g,%d,%d\n",
                    r.root.real(), r.root.imag(), r.residual, r.multiplicity,
                    r.contour_checked ? 1 : 0);
      s << buf;
    }
    emit(s.str(), o.output);
  } else if (o.format == "structured") {
    ordered_json j = ordered_json::array();
    for (const auto& r : roots) {
      ordered_json e;
      if (r.mode)
        e["mode"] = *r.mode;
      else
        e["mode"] = nullptr;
      e["root"] = {r.root.real(), r.root.imag()};
      e["residual"] = r.residual;
      e["multiplicity"] = r.multiplicity;
      e["contour_checked"] = r.contour_checked;
      j.push_back(e);
    }
    emit(j.dump(2) + "\n", o.output);
  } else {
    std::ostringstream s;
    s << roots.size() << " singular weight(s) in Re p in [" << scfg.sigma1
      << ", " << scfg.sigma2 << "], |Im p| <= " << scfg.height << "\n";
    for (const auto& r : roots) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "  mode %3d  p = %+.12f %+.12fi  mult %d  residual %.2e\n",
                    r.mode.value_or(0), r.root.real(), r.root.imag(),
                    r.multiplicity, r.residual);
      s << buf;
    }
    emit(s.str(), o.output);
  }
  return 0;
}

// ------------------------------------------------------------------ region
int run_region(const CommonOpts& o, double alpha, double beta,
               const std::vector<double>& gamma, const std::string& grid,
               double amax, double bmax) {
  int na = 0, nb = 0;
  if (std::sscanf(grid.c_str(), "%dx%d", &na, &nb) != 2 || na < 2 || nb < 2)
    throw Error(ErrorCode::InvalidInput, "grid: expected NxM with N,M >= 2");
  auto g = halfline_region_plot(alpha, beta, gamma[0], gamma[1], na, nb, amax,
                                bmax);
  std::ostringstream s;
  s << "abs_a,abs_b,elliptic,dominant\n";
  for (const auto& c : g.cells) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d,%s\n", c.abs_a, c.abs_b,
                  c.elliptic ? 1 : 0,
                  c.dominant ? dominant_name(*c.dominant) : "");
    s << buf;
  }
  emit(s.str(), o.output);
  return 0;
}

// ------------------------------------------------------------------ sweep
int run_sweep(const CommonOpts& o, const std::vector<double>& range, int count,
              const CheckConfig& cfg) {
  auto op = load_operator_config(o.file);
  std::vector<double> gammas(count);
  for (int i = 0; i < count; ++i)
    gammas[i] = (count == 1)
                    ? range[0]
                    : range[0] + (range[1] - range[0]) * i / (count - 1);
  auto rows = weight_sweep(op, gammas, cfg);
  if (o.format == "csv") {
    std::ostringstream s;
    s << "gamma,admissible,nearest_root_distance\n";
    for (const auto& r : rows) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "%.17g,%d,%.17g\n", r.gamma,
                    r.verdict ? 1 : 0, r.nearest_root_distance);
      s << buf;
    }
    emit(s.str(), o.output);
  } else if (o.format == "structured") {
    ordered_json j = ordered_json::array();
    for (const auto& r : rows)
      j.push_back({{"gamma", r.gamma},
                   {"admissible", r.verdict},
                   {"nearest_root_distance", r.nearest_root_distance}});
    emit(j.dump(2) + "\n", o.output);
  } else {
    std::ostringstream s;
    s << "gamma        admissible  nearest root\n";
    for (const auto& r : rows) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "%+.6f    %s         %.6e\n", r.gamma,
                    r.verdict ? "yes" : "no ", r.nearest_root_distance);
      s << buf;
    }
    emit(s.str(), o.output);
  }
  return 0;
}

// --------------------------------------------------------- mellin-selftest
int run_mellin_selftest(const CommonOpts& o) {
  struct Case {
    const char* name;
    RadialFunction fn;
  };
  const double T = 60.0;
  const int n = 6001;
  std::vector<Case> cases;
  cases.push_back({"exp(-r)", sample_radial(
      [](double r) { return Complex(std::exp(-r), 0); }, T, n, {false, 0.0},
      {true, 0.0})});
  cases.push_back({"r exp(-r)", sample_radial(
      [](double r) { return Complex(r * std::exp(-r), 0); }, T, n,
      {false, 1.0}, {true, 0.0})});
  cases.push_back({"exp(-r) sin(r)", sample_radial(
      [](double r) { return Complex(std::exp(-r) * std::sin(r), 0); }, T, n,
      {false, 1.0}, {true, 0.0})});

  std::ostringstream s;
  double max_res = 0.0;
  for (const auto& c : cases)
    for (double g : {0.0, 0.5}) {
      char buf[128];
      try {
        double res = plancherel_residual(c.fn, g);
        max_res = std::max(max_res, res);
        std::snprintf(buf, sizeof buf,
                      "%-16s gamma=%.1f  Plancherel residual %.3e\n", c.name,
                      g, res);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DivergentTail) throw;
        std::snprintf(buf, sizeof buf,
                      "%-16s gamma=%.1f  weighted norm divergent (skipped)\n",
                      c.name, g);
      }
      s << buf;
    }
  char buf[80];
  std::snprintf(buf, sizeof buf, "max Plancherel residual %.3e\n", max_res);
  s << buf;
  emit(s.str(), o.output);
  return max_res < 1e-6 ? 0 : 4;
}

// ------------------------------------------------------------- symbol-dump
int run_symbol_dump(const CommonOpts& o, double eta, double tau, int window,
                    double s_order) {
  auto op = load_operator_config(o.file);
  auto w = interior_symbol_matrix(op, SymbolContext::interior_point(), eta,
                                  tau, window, s_order);
  std::ostringstream s;
  s << "row,col,re,im\n";
  const int dim = 2 * w.radius + 1;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      Complex v = w.matrix[i][j];
      if (v == Complex(0.0, 0.0)) continue;
      char buf[96];
      std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g\n", i, j, v.real(),
                    v.imag());
      s << buf;
    }
  emit(s.str(), o.output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ellipticity and Fredholm checks for shift operators near a "
               "conical point"};
  app.require_subcommand(1);

  CommonOpts check_o, sw_o, region_o, sweep_o, mellin_o, dump_o;
  std::vector<double> strip, sw_strip, region_gamma{0.0, 0.0},
      sweep_range{-1.0, 1.0};
  double height = -1, sw_height = 20.0, line_tol = -1;
  int modes = -1, sw_modes = -1, sweep_count = 11;
  double region_alpha = 1.0, region_beta = 1.0, amax = 3.0, bmax = 3.0;
  std::string region_grid = "200x200";
  double dump_eta = 1.0, dump_tau = 0.0, dump_s = 0.0;
  int dump_window = 8;

  auto* check = app.add_subcommand(
      "check", "Full ellipticity/Fredholm check of an operator config");
  check->add_option("--file", check_o.file, "operator config (JSON)")
      ->required();
  check->add_option("--format", check_o.format, "text|structured")
      ->check(CLI::IsMember({"text", "structured"}));
  check->add_option("--output", check_o.output, "output path (default stdout)");
  check->add_option("--strip", strip, "conormal strip Re p bounds")
      ->expected(2);
  check->add_option("--height", height, "conormal strip |Im p| bound");
  check->add_option("--modes", modes, "manual conormal mode cutoff");
  check->add_option("--line-tol", line_tol, "root-on-line distance tolerance");

  auto* sw = app.add_subcommand("singular-weights",
                                "Conormal zeros (singular weights) in a strip");
  sw->add_option("--file", sw_o.file, "operator config (JSON)")->required();
  sw->add_option("--strip", sw_strip, "Re p bounds")->expected(2);
  sw->add_option("--height", sw_height, "|Im p| bound");
  sw->add_option("--modes", sw_modes, "manual mode cutoff");
  sw->add_option("--format", sw_o.format, "text|csv|structured")
      ->check(CLI::IsMember({"text", "csv", "structured"}));
  sw->add_option("--output", sw_o.output, "output path (default stdout)");

  auto* region = app.add_subcommand(
      "region", "Half-line ellipticity region over (|a|, |b|), CSV");
  region->add_option("--alpha", region_alpha, "exponent of the first shift");
  region->add_option("--beta", region_beta, "exponent of the second shift");
  region->add_option("--gamma", region_gamma, "weight interval")->expected(2);
  region->add_option("--grid", region_grid, "grid size NxM");
  region->add_option("--amax", amax, "|a| range upper end");
  region->add_option("--bmax", bmax, "|b| range upper end");
  region->add_option("--output", region_o.output,
                     "output path (default stdout)");

  auto* sweep = app.add_subcommand(
      "sweep", "Admissible-weight table over a gamma grid");
  sweep->add_option("--file", sweep_o.file, "operator config (JSON)")
      ->required();
  sweep->add_option("--range", sweep_range, "gamma interval")->expected(2);
  sweep->add_option("--count", sweep_count, "grid points")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--format", sweep_o.format, "text|csv|structured")
      ->check(CLI::IsMember({"text", "csv", "structured"}));
  sweep->add_option("--output", sweep_o.output, "output path (default stdout)");

  auto* mellin = app.add_subcommand(
      "mellin-selftest", "Plancherel residuals on the built-in test set");
  mellin->add_option("--output", mellin_o.output,
                     "output path (default stdout)");

  auto* dump = app.add_subcommand(
      "symbol-dump", "Interior symbol window matrix at a covector, CSV");
  dump->add_option("--file", dump_o.file, "operator config (JSON)")
      ->required();
  dump->add_option("--eta", dump_eta, "covector eta");
  dump->add_option("--tau", dump_tau, "covector tau");
  dump->add_option("--window", dump_window, "window radius")
      ->check(CLI::PositiveNumber);
  dump->add_option("--s", dump_s, "Sobolev order of the weight");
  dump->add_option("--output", dump_o.output, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check)
      return run_check(check_o,
                       check_config_from(strip, height, modes, line_tol));
    if (*sw) {
      StripSearchConfig scfg;
      if (!sw_strip.empty()) {
        scfg.sigma1 = sw_strip[0];
        scfg.sigma2 = sw_strip[1];
      }
      scfg.height = sw_height;
      if (sw_modes >= 0) scfg.manual_modes = sw_modes;
      return run_singular_weights(sw_o, scfg);
    }
    if (*region)
      return run_region(region_o, region_alpha, region_beta, region_gamma,
                        region_grid, amax, bmax);
    if (*sweep) return run_sweep(sweep_o, sweep_range, sweep_count,
                                 check_config_from({}, -1, -1, -1));
    if (*mellin) return run_mellin_selftest(mellin_o);
    if (*dump)
      return run_symbol_dump(dump_o, dump_eta, dump_tau, dump_window, dump_s);
  } catch (const Error& e) {
    std::cerr << "error (" << error_code_name(e.code()) << "): " << e.what()
              << "\n";
    return error_exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
