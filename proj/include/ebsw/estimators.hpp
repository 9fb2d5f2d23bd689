#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ebsw/energy.hpp"
#include "ebsw/measure.hpp"
#include "ebsw/rng.hpp"
#include "ebsw/slicing.hpp"

namespace ebsw {

enum class Method { kSw, kMaxSw, kIsEbsw, kSirEbsw, kImhEbsw, kRmhEbsw };

/// Accepts "sw", "max-sw", "is-ebsw", "sir-ebsw", "imh-ebsw", "rmh-ebsw"
/// (underscores also accepted).
Method parse_method(std::string_view name);
std::string_view method_name(Method m);

struct EstimatorConfig {
  double p = 2.0;
  std::size_t num_projections = 100;  ///< L; also the chain length for IMH/RMH (no burn-in)
  EnergyFunction energy = EnergyFunction::exponential();
  Method method = Method::kSw;
  std::size_t max_sw_iters = 100;  ///< T
  double max_sw_step = 0.1;        ///< eta
  double rmh_kappa = 10.0;
  RngSeed seed{};

  /// Throws ArgumentError on any violated positivity constraint.
  void validate() const;
};

/// L directions and their projected p-power distances W_p^p(theta_l # mu, theta_l # nu).
struct SliceBatch {
  std::vector<Direction> directions;
  std::vector<double> values;
};

/// Result of one estimator call.
struct Estimate {
  double value = 0.0;
  /// Directions the final average runs over: the proposals for SW and IS,
  /// the resampled set for SIR, the chain states for IMH/RMH, the ascended
  /// direction for Max-SW.
  SliceBatch batch;
  /// Averaging weights over `batch` (IS only). Empty means uniform 1/L.
  std::vector<double> weights;
};

/// (x)^{1/p} with exact paths for p = 1, 2.
double root_p(double x, double p);

/// Projected W_p^p of (mu, nu) along every direction. Parallel over directions.
SliceBatch slice_values(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, std::vector<Direction> thetas,
                        double p);

/// W_p^p(theta # mu, theta # nu) for a single direction.
double slice_value(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const Direction& theta, double p);

/// ((1/L) sum v_l)^{1/p}.
double sw_from_values(std::span<const double> values, double p);

/// (sum_l v_l f(v_l) / sum_l f(v_l))^{1/p}.
double is_ebsw_from_values(std::span<const double> values, const EnergyFunction& f, double p);

/// Metropolis acceptance probability min(1, f(v_proposal) / f(v_current))
/// for a symmetric proposal. A zero current energy always accepts.
double acceptance_probability(const EnergyFunction& f, double v_current, double v_proposal);

/// Draws `count` i.i.d. indices from Categorical(weights) by inverse CDF.
std::vector<std::size_t> sample_categorical(std::span<const double> weights, std::size_t count, Rng& rng);

using SliceValueFn = std::function<double(const Direction&)>;
using ProposalFn = std::function<Direction(const Direction& current, Rng&)>;

struct ChainResult {
  SliceBatch batch;  ///< retained states and their values
  std::size_t accepted = 0;
  std::size_t proposed = 0;
};

/// Metropolis-Hastings chain on S^{d-1} targeting the energy-based slicing
/// distribution. The first state is uniform; `burn_in` states are dropped
/// and `length` states are kept.
ChainResult run_metropolis_chain(std::size_t d, const SliceValueFn& value_of, const EnergyFunction& f,
                                 const ProposalFn& propose, std::size_t length, std::size_t burn_in, Rng& rng);

Estimate sw(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const EstimatorConfig& cfg, Rng& rng);
Estimate max_sw(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const EstimatorConfig& cfg, Rng& rng);
Estimate is_ebsw(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const EstimatorConfig& cfg, Rng& rng);
Estimate sir_ebsw(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const EstimatorConfig& cfg, Rng& rng);
Estimate imh_ebsw(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const EstimatorConfig& cfg, Rng& rng);
Estimate rmh_ebsw(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const EstimatorConfig& cfg, Rng& rng);

/// Dispatches on cfg.method with a stream seeded from cfg.seed: a pure
/// function of (mu, nu, cfg).
Estimate estimate(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const EstimatorConfig& cfg);

}  // namespace ebsw
