#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ebsw {

/// Increasing energy f applied to a projected W_p^p value:
/// exponential f(v) = e^v, or shifted polynomial f(v) = v^q + eps.
struct EnergyFunction {
  enum class Kind { kExponential, kShiftedPolynomial };

  Kind kind = Kind::kExponential;
  double q = 1.0;
  double epsilon = 0.0;

  static EnergyFunction exponential() { return {}; }
  /// Throws ArgumentError unless q > 0 and eps >= 0.
  static EnergyFunction polynomial(double q, double epsilon = 0.0);

  /// Parses "e" or "q:<q>[:<eps>]".
  static EnergyFunction parse(std::string_view spec);
  std::string to_string() const;

  friend bool operator==(const EnergyFunction&, const EnergyFunction&) = default;
};

/// f(v). Throws ArgumentError for v < 0.
double eval_energy(const EnergyFunction& f, double v);

/// log f(v); -inf when f(v) = 0.
double log_energy(const EnergyFunction& f, double v);

/// f'(v) / f(v), the log-derivative. For f = 0 this is +inf.
double energy_log_derivative(const EnergyFunction& f, double v);

/// f(v_l) / max_k f(v_k), computed in log-space for the exponential kind.
/// Summing these and dividing gives the normalized weights; the ratio form
/// keeps the all-equal case exact (every relative weight is 1).
/// Throws DegenerateError when every f(v_l) is zero.
std::vector<double> relative_energies(const EnergyFunction& f, std::span<const double> values);

/// w_l = f(v_l) / sum_k f(v_k): self-normalized importance weights under the
/// uniform proposal (a softmax for the exponential energy).
std::vector<double> normalized_weights(const EnergyFunction& f, std::span<const double> values);

/// Normalizes arbitrary positive raw weights so they sum to 1.
/// Throws DegenerateError when they sum to zero.
std::vector<double> normalize(std::span<const double> raw);

}  // namespace ebsw
