#include "gop/interior_symbol.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <fstream>

namespace gop {

namespace {

void require_circle_orbit(const ConicalGOperator& op, const char* what) {
  if (op.family == FamilyKind::HalflineZeroOrder)
    throw Error(ErrorCode::ContextMismatch,
                std::string(what) + ": half-line orbits are Z^2 words; "
                "use transport_weight_oracle with the word exponent");
}

double orbit_beta(const ConicalGOperator& op) {
  return op.action.generators.at(0).beta;
}

}  // namespace

double weight_function(const ConicalGOperator& op, const SymbolContext& ctx,
                       double s, int n) {
  require_circle_orbit(op, "weight_function");
  const double beta = orbit_beta(op);
  const double gp = op.gamma_plus, gm = op.gamma_minus;
  double m = 1.0;
  switch (ctx.kind) {
    case SymbolContext::Kind::Interior:
      m = (n >= 0) ? std::exp(2.0 * gm * beta * n)
                   : std::exp(2.0 * gp * beta * n);
      // s-dependence dropped up to equivalence at interior points
      break;
    case SymbolContext::Kind::Boundary: {
      double g = ctx.boundary.at_infinity ? gm : gp;
      m = std::exp(2.0 * g * beta * n);
      // circle rotations are isometries of the base, so the orbit covector
      // norm is constant and the (tau^2 + |eta|^2)^s ratio is 1
      double r2 = ctx.boundary.tau * ctx.boundary.tau +
                  ctx.boundary.eta * ctx.boundary.eta;
      if (r2 > 0.0) m *= std::pow(r2 / r2, s);
      break;
    }
  }
  return m;
}

double transport_weight_oracle(double beta_g, double gamma, double base_angle,
                               double fd_step) {
  // cylinder coordinates (t, phi), measure density e^{-2 gamma t};
  // g^{-1}(t, phi) = (t + beta_g, phi - base_angle)
  auto map_t = [&](double t, double phi) { (void)phi; return t + beta_g; };
  auto map_phi = [&](double t, double phi) { (void)t; return phi - base_angle; };
  const double t0 = 0.37, phi0 = 1.1;  // arbitrary sample point
  const double h = fd_step;
  double j11 = (map_t(t0 + h, phi0) - map_t(t0 - h, phi0)) / (2 * h);
  double j12 = (map_t(t0, phi0 + h) - map_t(t0, phi0 - h)) / (2 * h);
  double j21 = (map_phi(t0 + h, phi0) - map_phi(t0 - h, phi0)) / (2 * h);
  double j22 = (map_phi(t0, phi0 + h) - map_phi(t0, phi0 - h)) / (2 * h);
  double det = std::abs(j11 * j22 - j12 * j21);
  double density_ratio = std::exp(-2.0 * gamma * map_t(t0, phi0)) /
                         std::exp(-2.0 * gamma * t0);
  return density_ratio * det;
}

OrbitWindow interior_symbol_matrix(const ConicalGOperator& op,
                                   const SymbolContext& ctx, double eta,
                                   double tau, int window_radius, double s) {
  require_circle_orbit(op, "interior_symbol_matrix");
  if (eta == 0.0 && tau == 0.0)
    throw Error(ErrorCode::ZeroCovector, "covector must be nonzero");

  std::map<int, Complex> band;
  switch (op.family) {
    case FamilyKind::SphereFirstOrder:
      band[0] = Complex(0, tau) + op.sphere.a * eta;
      band[1] = op.sphere.b * eta;
      break;
    case FamilyKind::GenericBanded:
      for (const auto& [l, t] : op.banded_terms)
        band[l] = t.c0 + t.c_eta * eta + t.c_tau * Complex(0, tau);
      break;
    default:
      throw Error(ErrorCode::FamilyMismatch, "unsupported family");
  }
  int bandwidth = 0;
  for (const auto& [l, v] : band) bandwidth = std::max(bandwidth, std::abs(l));
  if (window_radius < bandwidth)
    throw Error(ErrorCode::InvalidInput, "window smaller than bandwidth");

  const int W = window_radius;
  const int dim = 2 * W + 1;
  OrbitWindow win;
  win.radius = W;
  win.bandwidth = bandwidth;
  win.weights.resize(dim);
  for (int n = -W; n <= W; ++n)
    win.weights[n + W] = weight_function(op, ctx, s, n);

  win.matrix.assign(dim, std::vector<Complex>(dim, Complex(0, 0)));
  for (int i = 0; i < dim; ++i) {
    for (const auto& [l, v] : band) {
      int j = i + l;
      if (j < 0 || j >= dim) continue;
      // conjugate by diag(sqrt m): acts on unweighted l^2
      win.matrix[i][j] = v * std::sqrt(win.weights[i] / win.weights[j]);
    }
  }
  return win;
}

double window_sigma_min(const OrbitWindow& w) {
  const int dim = static_cast<int>(w.matrix.size());
  Eigen::MatrixXcd A(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) A(i, j) = w.matrix[i][j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A.adjoint() * A);
  double lam = es.eigenvalues().minCoeff();
  return std::sqrt(std::max(lam, 0.0));
}

void write_window_csv(const OrbitWindow& w, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ConfigError, "cannot open " + path);
  out << "row,col,re,im\n";
  out.precision(17);
  const int dim = static_cast<int>(w.matrix.size());
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (w.matrix[i][j] != Complex(0, 0))
        out << (i - w.radius) << "," << (j - w.radius) << ","
            << w.matrix[i][j].real() << "," << w.matrix[i][j].imag() << "\n";
}

Annulus annulus_radii(double beta, double gamma_plus, double gamma_minus) {
  if (beta <= 0.0)
    throw Error(ErrorCode::NonpositiveBeta, "beta must be positive");
  double r = std::exp(-gamma_plus * beta);
  double R = std::exp(-gamma_minus * beta);
  Annulus ann;
  ann.swapped = gamma_minus > gamma_plus;
  ann.inner = std::min(r, R);
  ann.outer = std::max(r, R);
  return ann;
}

InteriorVerdict check_interior_elliptic_sphere(const ConicalGOperator& op) {
  if (op.family != FamilyKind::SphereFirstOrder)
    throw Error(ErrorCode::FamilyMismatch, "expected SphereFirstOrder");
  const Complex a = op.sphere.a, b = op.sphere.b;
  Annulus ann = annulus_radii(op.sphere.beta, op.gamma_plus, op.gamma_minus);
  const double rho = ann.inner;

  InteriorVerdict v;
  v.margin = std::abs(a.real()) - std::abs(b) / rho;
  v.elliptic = v.margin > 0.0;
  if (!v.elliptic) {
    // a point zeta on the inner circle where Re(a + b / zeta) = 0
    if (std::abs(b) == 0.0) {
      v.witness = Complex(rho, 0.0);
    } else {
      double cosv = -rho * a.real() / std::abs(b);
      cosv = std::clamp(cosv, -1.0, 1.0);
      double theta = std::arg(b) - std::acos(cosv);
      v.witness = std::polar(rho, theta);
    }
  }
  return v;
}

GenericInteriorReport check_interior_elliptic_generic(
    const ConicalGOperator& op, const std::vector<CovectorSample>& contexts,
    const std::vector<int>& window_schedule, double tol) {
  if (window_schedule.size() < 3)
    throw Error(ErrorCode::NonmonotoneSchedule,
                "window schedule needs at least 3 entries");
  for (size_t i = 1; i < window_schedule.size(); ++i)
    if (window_schedule[i] <= window_schedule[i - 1])
      throw Error(ErrorCode::NonmonotoneSchedule,
                  "window schedule must be strictly increasing");

  GenericInteriorReport rep;
  SymbolContext ctx = SymbolContext::interior_point();
  for (int W : window_schedule) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& cv : contexts) {
      OrbitWindow win = interior_symbol_matrix(op, ctx, cv.eta, cv.tau, W, 0.0);
      best = std::min(best, window_sigma_min(win));
    }
    rep.trace.push_back({W, best});
  }
  double last = rep.trace.back().sigma_min;
  double prev = rep.trace[rep.trace.size() - 2].sigma_min;
  bool stabilized = std::abs(last - prev) <= 0.05 * std::max(last, 1e-30);
  rep.min_sigma = last;
  rep.likely_elliptic = stabilized && last > tol;
  rep.note = "finite-section certificate (heuristic, not a proof)";
  return rep;
}

double circle_multiplier_min(Complex a, Complex b, double eta, double tau,
                             int grid) {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid; ++k) {
    double th = 2.0 * M_PI * k / grid;
    Complex f = Complex(0, tau) + (a + b * std::polar(1.0, -th)) * eta;
    best = std::min(best, std::abs(f));
  }
  return best;
}

}  // namespace gop
