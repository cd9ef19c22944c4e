#include "gop/mellin.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace gop {

namespace {

const Complex kMellinConst = 1.0 / (std::sqrt(2.0 * M_PI) *
                                    std::polar(1.0, M_PI / 4.0));

// Convergence of int r^{q} (...) dr/r at the r -> 0 end given decay u=O(r^a).
bool converges_at_origin(const DecayFlag& f, double q) {
  return f.rapid || q + f.power > 0.0;
}
bool converges_at_infinity(const DecayFlag& f, double q) {
  return f.rapid || q + f.power < 0.0;
}

void check_strip(const RadialFunction& u, double q, const char* what) {
  if (!converges_at_origin(u.at_origin, q))
    throw Error(ErrorCode::DivergentTail,
                std::string(what) + ": integrand divergent at r = 0");
  if (!converges_at_infinity(u.at_infinity, q))
    throw Error(ErrorCode::DivergentTail,
                std::string(what) + ": integrand divergent at r = inf");
}

}  // namespace

RadialFunction sample_radial(const std::function<Complex(double)>& u, double T,
                             int n, DecayFlag at_origin,
                             DecayFlag at_infinity) {
  if (n < 16) throw Error(ErrorCode::InvalidInput, "need at least 16 samples");
  RadialFunction f;
  f.T = T;
  f.values.resize(n);
  f.at_origin = at_origin;
  f.at_infinity = at_infinity;
  for (int j = 0; j < n; ++j) f.values[j] = u(f.r_at(j));
  return f;
}

WeightLine make_weight_line(double gamma, double height, int count) {
  WeightLine line;
  line.gamma = gamma;
  line.offsets.resize(count);
  for (int k = 0; k < count; ++k)
    line.offsets[k] = -height + 2.0 * height * k / (count - 1);
  return line;
}

Complex mellin_transform(const RadialFunction& u, Complex p) {
  check_strip(u, p.real(), "mellin_transform");
  // r = e^{-t}:  int_0^inf r^p u dr/r = int_{-inf}^{inf} e^{-p t} u(e^{-t}) dt
  const int n = u.size();
  const double h = u.step();
  Complex acc = 0.0;
  for (int j = 0; j < n; ++j) {
    Complex term = std::exp(-p * u.t_at(j)) * u.values[j];
    acc += (j == 0 || j == n - 1) ? 0.5 * term : term;
  }
  return kMellinConst * acc * h;
}

namespace {

// ~u(gamma + i y_k) for all line offsets at once, using the multiply
// recurrence e^{-i y t_j} = e^{-i y t_0} (e^{-i y h})^j per offset.
std::vector<Complex> transform_on_line(const RadialFunction& u,
                                       const WeightLine& line) {
  const int n = u.size();
  const double h = u.step();
  std::vector<Complex> w(n);
  for (int j = 0; j < n; ++j) {
    double scale = (j == 0 || j == n - 1) ? 0.5 : 1.0;
    w[j] = scale * h * std::exp(-line.gamma * u.t_at(j)) * u.values[j];
  }
  std::vector<Complex> out(line.offsets.size());
  for (size_t k = 0; k < line.offsets.size(); ++k) {
    const double y = line.offsets[k];
    Complex phase = std::polar(1.0, y * u.T);       // e^{-i y t_0}, t_0 = -T
    const Complex stepf = std::polar(1.0, -y * h);  // e^{-i y h}
    Complex acc = 0.0;
    for (int j = 0; j < n; ++j) {
      acc += w[j] * phase;
      phase *= stepf;
    }
    out[k] = kMellinConst * acc;
  }
  return out;
}

double integrate_line(const WeightLine& line, const std::vector<double>& f) {
  double acc = 0.0;
  for (size_t k = 0; k + 1 < line.offsets.size(); ++k)
    acc += 0.5 * (f[k] + f[k + 1]) * (line.offsets[k + 1] - line.offsets[k]);
  return acc;
}

WeightLine default_line(const RadialFunction& u, double gamma) {
  // keep the offset range inside the alias-free band pi/h of the grid
  double height = std::min(60.0, 0.9 * M_PI / u.step());
  int count = std::max(513, static_cast<int>(2.0 * height / 0.05) | 1);
  return make_weight_line(gamma, height, count);
}

}  // namespace

double weighted_norm(const RadialFunction& u, double s, double gamma,
                     int mode, const WeightLine* line) {
  check_strip(u, 2.0 * gamma, "weighted_norm");
  WeightLine def;
  if (!line) {
    def = default_line(u, gamma);
    line = &def;
  }
  std::vector<Complex> ut = transform_on_line(u, *line);
  std::vector<double> integrand(ut.size());
  for (size_t k = 0; k < ut.size(); ++k) {
    Complex p(line->gamma, line->offsets[k]);
    Complex factor =
        std::pow(1.0 - p * p + double(mode) * double(mode), Complex(s, 0.0));
    integrand[k] = std::norm(factor * ut[k]);
  }
  return integrate_line(*line, integrand);
}

double radial_l2_norm_sq(const RadialFunction& u, double gamma) {
  // int_0^inf r^{2 gamma} |u|^2 dr/r = int e^{-2 gamma t} |u(e^{-t})|^2 dt
  const int n = u.size();
  const double h = u.step();
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    double term = std::exp(-2.0 * gamma * u.t_at(j)) * std::norm(u.values[j]);
    acc += (j == 0 || j == n - 1) ? 0.5 * term : term;
  }
  return acc * h;
}

double plancherel_residual(const RadialFunction& u, double gamma,
                           const WeightLine* line) {
  check_strip(u, 2.0 * gamma, "plancherel_residual");
  WeightLine def;
  if (!line) {
    def = default_line(u, gamma);
    line = &def;
  }
  std::vector<Complex> ut = transform_on_line(u, *line);
  std::vector<double> integrand(ut.size());
  for (size_t k = 0; k < ut.size(); ++k) integrand[k] = std::norm(ut[k]);
  double left = integrate_line(*line, integrand);
  double right = radial_l2_norm_sq(u, gamma);
  return std::abs(left - right);
}

void write_radial_csv(const RadialFunction& u, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ConfigError, "cannot open " + path);
  out << "t,re_u,im_u\n";
  out.precision(17);
  for (int j = 0; j < u.size(); ++j)
    out << u.t_at(j) << "," << u.values[j].real() << ","
        << u.values[j].imag() << "\n";
}

RadialFunction read_radial_csv(const std::string& path, DecayFlag at_origin,
                               DecayFlag at_infinity) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open " + path);
  std::string header;
  std::getline(in, header);
  std::vector<double> ts;
  std::vector<Complex> vals;
  std::string linebuf;
  while (std::getline(in, linebuf)) {
    if (linebuf.empty()) continue;
    std::istringstream ss(linebuf);
    double t, re, im;
    char comma;
    if (!(ss >> t >> comma >> re >> comma >> im))
      throw Error(ErrorCode::ConfigError, "bad CSV row: " + linebuf);
    ts.push_back(t);
    vals.push_back(Complex(re, im));
  }
  if (ts.size() < 16)
    throw Error(ErrorCode::InvalidInput, "need at least 16 samples");
  RadialFunction f;
  f.T = std::max(std::abs(ts.front()), std::abs(ts.back()));
  f.values = std::move(vals);
  f.at_origin = at_origin;
  f.at_infinity = at_infinity;
  return f;
}

}  // namespace gop
