#include "ebsw/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ebsw/error.hpp"
#include "ebsw/gradients.hpp"
#include "ebsw/onedim.hpp"
#include "ebsw/parallel.hpp"

namespace ebsw {

Method parse_method(std::string_view name) {
  std::string s(name);
  std::replace(s.begin(), s.end(), '_', '-');
  if (s == "sw") return Method::kSw;
  if (s == "max-sw") return Method::kMaxSw;
  if (s == "is-ebsw") return Method::kIsEbsw;
  if (s == "sir-ebsw") return Method::kSirEbsw;
  if (s == "imh-ebsw") return Method::kImhEbsw;
  if (s == "rmh-ebsw") return Method::kRmhEbsw;
  throw ArgumentError("unknown method '" + std::string(name) + "'");
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::kSw: return "sw";
    case Method::kMaxSw: return "max-sw";
    case Method::kIsEbsw: return "is-ebsw";
    case Method::kSirEbsw: return "sir-ebsw";
    case Method::kImhEbsw: return "imh-ebsw";
    case Method::kRmhEbsw: return "rmh-ebsw";
  }
  return "?";
}

void EstimatorConfig::validate() const {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ArgumentError("p must be finite and >= 1");
  if (num_projections == 0) throw ArgumentError("number of projections L must be >= 1");
  if (method == Method::kMaxSw) {
    if (max_sw_iters == 0) throw ArgumentError("Max-SW iterations T must be >= 1");
    if (!(max_sw_step > 0.0) || !std::isfinite(max_sw_step)) throw ArgumentError("Max-SW step size must be > 0");
  }
  if (method == Method::kRmhEbsw && (!(rmh_kappa > 0.0) || !std::isfinite(rmh_kappa))) {
    throw ArgumentError("RMH concentration kappa must be > 0");
  }
  if (energy.kind == EnergyFunction::Kind::kShiftedPolynomial && (!(energy.q > 0.0) || !(energy.epsilon >= 0.0))) {
    throw ArgumentError("polynomial energy needs q > 0 and eps >= 0");
  }
}

double root_p(double x, double p) {
  if (p == 1.0) return x;
  if (p == 2.0) return std::sqrt(x);
  return std::pow(x, 1.0 / p);
}

namespace {
void check_pair(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu) {
  if (mu.dim() != nu.dim()) {
    throw ArgumentError("measures have different dimensions (" + std::to_string(mu.dim()) + " vs " +
                        std::to_string(nu.dim()) + ")");
  }
}
}  // namespace

double slice_value(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const Direction& theta, double p) {
  std::vector<double> xs(mu.size());
  std::vector<double> ys(nu.size());
  project_into(mu, theta.components(), xs);
  project_into(nu, theta.components(), ys);
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  return wasserstein_1d_pp_sorted(xs, ys, p);
}

SliceBatch slice_values(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, std::vector<Direction> thetas,
                        double p) {
  check_pair(mu, nu);
  if (!(p >= 1.0)) throw ArgumentError("p must be >= 1");
  for (const auto& t : thetas) {
    if (t.dim() != mu.dim()) throw ArgumentError("direction dimension does not match the measures");
  }
  SliceBatch batch;
  batch.values.resize(thetas.size());
  parallel_for(thetas.size(), [&](std::size_t l) { batch.values[l] = slice_value(mu, nu, thetas[l], p); });
  batch.directions = std::move(thetas);
  return batch;
}

double sw_from_values(std::span<const double> values, double p) {
  if (values.empty()) throw ArgumentError("need at least one slice value");
  double sum = 0.0;
  for (double v : values) sum += v;
  return root_p(sum / static_cast<double>(values.size()), p);
}

double is_ebsw_from_values(std::span<const double> values, const EnergyFunction& f, double p) {
  const auto rel = relative_energies(f, values);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t l = 0; l < values.size(); ++l) {
    num += values[l] * rel[l];
    den += rel[l];
  }
  const double weighted = num / den;
#ifdef EBSW_CHECK_INVARIANTS
  // Chebyshev's sum inequality: for increasing f the weighted mean is never
  // below the plain mean, and never above the largest value.
  double sum = 0.0;
  double vmax = 0.0;
  for (double v : values) {
    sum += v;
    vmax = std::max(vmax, v);
  }
  const double mean = sum / static_cast<double>(values.size());
  const double tol = 1e-12 * std::max(1.0, vmax);
  if (weighted < mean - tol || weighted > vmax + tol) {
    throw std::logic_error("IS-EBSW weighted mean outside [mean, max] of its slice values");
  }
#endif
  return root_p(weighted, p);
}

double acceptance_probability(const EnergyFunction& f, double v_current, double v_proposal) {
  const double log_cur = log_energy(f, v_current);
  if (log_cur == -std::numeric_limits<double>::infinity()) return 1.0;
  const double log_ratio = log_energy(f, v_proposal) - log_cur;
  return log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);
}

std::vector<std::size_t> sample_categorical(std::span<const double> weights, std::size_t count, Rng& rng) {
  std::vector<double> cdf(weights.size());
  double total = 0.0;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    if (!(weights[l] >= 0.0)) throw ArgumentError("categorical weights must be >= 0");
    total += weights[l];
    cdf[l] = total;
  }
  if (!(total > 0.0)) throw DegenerateError("categorical weights sum to zero");
  std::vector<std::size_t> out(count);
  for (auto& idx : out) {
    const double u = uniform01(rng) * total;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    idx = static_cast<std::size_t>(it - cdf.begin());
    if (it == cdf.end()) {
      // u < total in exact arithmetic; rounding can land on the last sum.
      idx = weights.size() - 1;
      while (weights[idx] == 0.0) --idx;
    }
  }
  return out;
}

ChainResult run_metropolis_chain(std::size_t d, const SliceValueFn& value_of, const EnergyFunction& f,
                                 const ProposalFn& propose, std::size_t length, std::size_t burn_in, Rng& rng) {
  if (length == 0) throw ArgumentError("chain length must be >= 1");
  ChainResult out;
  out.batch.directions.reserve(length);
  out.batch.values.reserve(length);

  Direction current = sample_uniform_direction(d, rng);
  double v_current = value_of(current);
  const std::size_t total = burn_in + length;
  for (std::size_t t = 0; t < total; ++t) {
    if (t > 0) {
      Direction candidate = propose(current, rng);
      const double v_candidate = value_of(candidate);
      const double alpha = acceptance_probability(f, v_current, v_candidate);
      const double u = uniform01(rng);
      ++out.proposed;
      if (alpha >= u) {
        current = std::move(candidate);
        v_current = v_candidate;
        ++out.accepted;
      }
    }
    if (t >= burn_in) {
      out.batch.directions.push_back(current);
      out.batch.values.push_back(v_current);
    }
  }
  return out;
}

Estimate sw(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const EstimatorConfig& cfg, Rng& rng) {
  cfg.validate();
  check_pair(mu, nu);
  Estimate est;
  est.batch = slice_values(mu, nu, sample_uniform_sphere(mu.dim(), cfg.num_projections, rng), cfg.p);
  est.value = sw_from_values(est.batch.values, cfg.p);
  return est;
}

Estimate max_sw(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const EstimatorConfig& cfg, Rng& rng) {
  cfg.validate();
  check_pair(mu, nu);
  const Direction start = sample_uniform_direction(mu.dim(), rng);
  std::vector<double> theta(start.components().begin(), start.components().end());
  for (std::size_t t = 0; t < cfg.max_sw_iters; ++t) {
    const auto g = grad_theta_wp(mu, nu, theta, cfg.p);
    std::vector<double> next(theta.size());
    for (std::size_t k = 0; k < theta.size(); ++k) next[k] = theta[k] + cfg.max_sw_step * g[k];
    double len2 = 0.0;
    for (double x : next) len2 += x * x;
    // A step landing on the origin has no direction; keep the previous iterate.
    if (!(len2 > 0.0)) break;
    const auto unit = Direction::normalized(std::move(next));
    theta.assign(unit.components().begin(), unit.components().end());
  }
  Estimate est;
  est.batch = slice_values(mu, nu, {Direction::normalized(theta)}, cfg.p);
  est.value = root_p(est.batch.values[0], cfg.p);
  return est;
}

Estimate is_ebsw(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const EstimatorConfig& cfg, Rng& rng) {
  cfg.validate();
  check_pair(mu, nu);
  Estimate est;
  est.batch = slice_values(mu, nu, sample_uniform_sphere(mu.dim(), cfg.num_projections, rng), cfg.p);
  est.value = is_ebsw_from_values(est.batch.values, cfg.energy, cfg.p);
  est.weights = normalized_weights(cfg.energy, est.batch.values);
  return est;
}

Estimate sir_ebsw(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const EstimatorConfig& cfg, Rng& rng) {
  cfg.validate();
  check_pair(mu, nu);
  const auto proposals = slice_values(mu, nu, sample_uniform_sphere(mu.dim(), cfg.num_projections, rng), cfg.p);
  const auto weights = normalized_weights(cfg.energy, proposals.values);
  const auto picks = sample_categorical(weights, cfg.num_projections, rng);
  Estimate est;
  est.batch.directions.reserve(picks.size());
  est.batch.values.reserve(picks.size());
  for (std::size_t idx : picks) {
    est.batch.directions.push_back(proposals.directions[idx]);
    est.batch.values.push_back(proposals.values[idx]);
  }
  est.value = sw_from_values(est.batch.values, cfg.p);
  return est;
}

namespace {
Estimate chain_estimate(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const EstimatorConfig& cfg,
                        const ProposalFn& propose, Rng& rng) {
  cfg.validate();
  check_pair(mu, nu);
  const auto value_of = [&](const Direction& theta) { return slice_value(mu, nu, theta, cfg.p); };
  auto chain = run_metropolis_chain(mu.dim(), value_of, cfg.energy, propose, cfg.num_projections, 0, rng);
  Estimate est;
  est.batch = std::move(chain.batch);
  est.value = sw_from_values(est.batch.values, cfg.p);
  return est;
}
}  // namespace

Estimate imh_ebsw(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const EstimatorConfig& cfg, Rng& rng) {
  const std::size_t d = mu.dim();
  return chain_estimate(mu, nu, cfg, [d](const Direction&, Rng& r) { return sample_uniform_direction(d, r); }, rng);
}

Estimate rmh_ebsw(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const EstimatorConfig& cfg, Rng& rng) {
  const double kappa = cfg.rmh_kappa;
  return chain_estimate(
      mu, nu, cfg, [kappa](const Direction& cur, Rng& r) { return sample_vmf(VmfParams{cur, kappa}, r); }, rng);
}

Estimate estimate(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const EstimatorConfig& cfg) {
  Rng rng = make_rng(cfg.seed);
  switch (cfg.method) {
    case Method::kSw: return sw(mu, nu, cfg, rng);
    case Method::kMaxSw: return max_sw(mu, nu, cfg, rng);
    case Method::kIsEbsw: return is_ebsw(mu, nu, cfg, rng);
    case Method::kSirEbsw: return sir_ebsw(mu, nu, cfg, rng);
    case Method::kImhEbsw: return imh_ebsw(mu, nu, cfg, rng);
    case Method::kRmhEbsw: return rmh_ebsw(mu, nu, cfg, rng);
  }
  throw ArgumentError("unknown method");
}

}  // namespace ebsw
