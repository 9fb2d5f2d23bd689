#include "ebsw/energy.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "ebsw/error.hpp"
#include "ebsw/measure.hpp"

namespace ebsw {

EnergyFunction EnergyFunction::polynomial(double q, double epsilon) {
  if (!(q > 0.0) || !std::isfinite(q)) throw ArgumentError("polynomial energy needs q > 0");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw ArgumentError("polynomial energy needs eps >= 0");
  return {Kind::kShiftedPolynomial, q, epsilon};
}

namespace {
double parse_number(std::string_view s, std::string_view spec) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ArgumentError("bad energy spec '" + std::string(spec) + "': expected 'e' or 'q:<q>[:<eps>]'");
  }
  return v;
}
}  // namespace

EnergyFunction EnergyFunction::parse(std::string_view spec) {
  if (spec == "e") return exponential();
  if (spec.size() > 2 && spec.substr(0, 2) == "q:") {
    const auto rest = spec.substr(2);
    const auto colon = rest.find(':');
    const double q = parse_number(rest.substr(0, colon), spec);
    const double eps = colon == std::string_view::npos ? 0.0 : parse_number(rest.substr(colon + 1), spec);
    return polynomial(q, eps);
  }
  throw ArgumentError("bad energy spec '" + std::string(spec) + "': expected 'e' or 'q:<q>[:<eps>]'");
}

std::string EnergyFunction::to_string() const {
  if (kind == Kind::kExponential) return "e";
  std::string s = "q:" + format_double(q);
  if (epsilon != 0.0) s += ":" + format_double(epsilon);
  return s;
}

double eval_energy(const EnergyFunction& f, double v) {
  if (!(v >= 0.0)) throw ArgumentError("energy argument must be >= 0");
  if (f.kind == EnergyFunction::Kind::kExponential) return std::exp(v);
  return (f.q == 1.0 ? v : std::pow(v, f.q)) + f.epsilon;
}

double log_energy(const EnergyFunction& f, double v) {
  if (f.kind == EnergyFunction::Kind::kExponential) return v;
  const double e = eval_energy(f, v);
  return e > 0.0 ? std::log(e) : -std::numeric_limits<double>::infinity();
}

double energy_log_derivative(const EnergyFunction& f, double v) {
  if (f.kind == EnergyFunction::Kind::kExponential) return 1.0;
  const double value = eval_energy(f, v);
  const double deriv = f.q == 1.0 ? 1.0 : f.q * std::pow(v, f.q - 1.0);
  if (value == 0.0) return std::numeric_limits<double>::infinity();
  return deriv / value;
}

std::vector<double> relative_energies(const EnergyFunction& f, std::span<const double> values) {
  if (values.empty()) throw ArgumentError("need at least one value to weight");
  std::vector<double> r(values.size());
  if (f.kind == EnergyFunction::Kind::kExponential) {
    for (double v : values) {
      if (!(v >= 0.0)) throw ArgumentError("energy argument must be >= 0");
    }
    const double vmax = *std::max_element(values.begin(), values.end());
    for (std::size_t l = 0; l < values.size(); ++l) r[l] = std::exp(values[l] - vmax);
    return r;
  }
  double fmax = 0.0;
  for (std::size_t l = 0; l < values.size(); ++l) {
    r[l] = eval_energy(f, values[l]);
    fmax = std::max(fmax, r[l]);
  }
  if (!(fmax > 0.0)) {
    throw DegenerateError("all energies are zero: the measures coincide along every sampled direction");
  }
  for (double& x : r) x /= fmax;
  return r;
}

std::vector<double> normalize(std::span<const double> raw) {
  double sum = 0.0;
  for (double x : raw) sum += x;
  if (!(sum > 0.0)) throw DegenerateError("weights sum to zero");
  std::vector<double> w(raw.begin(), raw.end());
  for (double& x : w) x /= sum;
  return w;
}

std::vector<double> normalized_weights(const EnergyFunction& f, std::span<const double> values) {
  return normalize(relative_energies(f, values));
}

}  // namespace ebsw
