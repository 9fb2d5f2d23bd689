#include "ebsw/gradients.hpp"

#include <cmath>
#include <map>
#include <string>

#include "ebsw/error.hpp"
#include "ebsw/onedim.hpp"
#include "ebsw/parallel.hpp"

namespace ebsw {

GradientMode parse_gradient_mode(std::string_view name) {
  if (name == "conventional") return GradientMode::kConventional;
  if (name == "parameter-copy" || name == "parameter_copy" || name == "copy") return GradientMode::kParameterCopy;
  throw ArgumentError("unknown gradient mode '" + std::string(name) + "'");
}

std::string_view gradient_mode_name(GradientMode m) {
  return m == GradientMode::kConventional ? "conventional" : "parameter-copy";
}

namespace {

void check_dims(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, std::span<const Direction> thetas, double p) {
  if (mu.dim() != nu.dim()) throw ArgumentError("measures have different dimensions");
  if (!(p >= 1.0)) throw ArgumentError("p must be >= 1");
  for (const auto& t : thetas) {
    if (t.dim() != mu.dim()) throw ArgumentError("direction dimension does not match the measures");
  }
}

// Per-direction slice value and derivative of W_p^p w.r.t. each projected mu point.
struct SliceTerms {
  std::vector<double> values;
  std::vector<std::vector<double>> dproj;
};

SliceTerms slice_terms(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, std::span<const Direction> thetas,
                       double p) {
  SliceTerms t;
  t.values.resize(thetas.size());
  t.dproj.resize(thetas.size());
  parallel_for(thetas.size(), [&](std::size_t l) {
    std::vector<double> xs(mu.size());
    std::vector<double> ys(nu.size());
    project_into(mu, thetas[l].components(), xs);
    project_into(nu, thetas[l].components(), ys);
    t.dproj[l].resize(mu.size());
    t.values[l] = wasserstein_1d_pp_with_derivative(xs, ys, p, t.dproj[l]);
  });
  return t;
}

// sum_l coef_l * dv_l/dX, reduced per point in fixed l order.
SupportGradient combine(const EmpiricalMeasure& mu, std::span<const Direction> thetas, const SliceTerms& terms,
                        std::span<const double> coef, double outer) {
  const std::size_t n = mu.size();
  const std::size_t d = mu.dim();
  SupportGradient g(n, d);
  parallel_for(n, [&](std::size_t j) {
    auto row = g.row(j);
    for (std::size_t l = 0; l < thetas.size(); ++l) {
      if (coef[l] == 0.0) continue;
      const double s = coef[l] * terms.dproj[l][j];
      if (s == 0.0) continue;
      const auto th = thetas[l].components();
      for (std::size_t k = 0; k < d; ++k) row[k] += s * th[k];
    }
    for (std::size_t k = 0; k < d; ++k) row[k] *= outer;
  });
  return g;
}

// d (S^{1/p}) / dS = (1/p) S^{(1-p)/p}; zero at S = 0.
double root_derivative(double s, double p) {
  if (!(s > 0.0)) return 0.0;
  if (p == 1.0) return 1.0;
  if (p == 2.0) return 0.5 / std::sqrt(s);
  return std::pow(s, (1.0 - p) / p) / p;
}

SupportGradient is_ebsw_gradient_from_terms(const EmpiricalMeasure& mu, std::span<const Direction> thetas,
                                            const SliceTerms& terms, double p, const EnergyFunction& f,
                                            GradientMode mode) {
  const auto& v = terms.values;
  const auto rel = relative_energies(f, v);
  double rsum = 0.0;
  for (double r : rel) rsum += r;
  double num = 0.0;
  for (std::size_t l = 0; l < v.size(); ++l) num += v[l] * rel[l];
  const double s = num / rsum;

  std::vector<double> coef(v.size());
  for (std::size_t l = 0; l < v.size(); ++l) {
    const double w = rel[l] / rsum;
    if (mode == GradientMode::kParameterCopy) {
      coef[l] = w;
      continue;
    }
    // d/dv_l of sum v f(v) / sum f(v) = (f_l + (v_l - S) f'_l) / sum f.
    // dv_l/dX vanishes when v_l = 0, so those terms are skipped (f' may be
    // unbounded there for q < 1).
    if (v[l] == 0.0) {
      coef[l] = 0.0;
    } else if (f.kind == EnergyFunction::Kind::kExponential) {
      coef[l] = w * (1.0 + (v[l] - s));
    } else {
      coef[l] = w * (1.0 + (v[l] - s) * energy_log_derivative(f, v[l]));
    }
  }
  return combine(mu, thetas, terms, coef, root_derivative(s, p));
}

}  // namespace

SupportGradient grad_slice_pp(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const Direction& theta,
                              double p) {
  const std::span<const Direction> one(&theta, 1);
  check_dims(mu, nu, one, p);
  const auto terms = slice_terms(mu, nu, one, p);
  const double coef = 1.0;
  return combine(mu, one, terms, std::span<const double>(&coef, 1), 1.0);
}

std::vector<double> grad_theta_wp(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                                  std::span<const double> theta, double p) {
  if (mu.dim() != nu.dim() || theta.size() != mu.dim()) throw ArgumentError("dimension mismatch");
  std::vector<double> xs(mu.size());
  std::vector<double> ys(nu.size());
  project_into(mu, theta, xs);
  project_into(nu, theta, ys);
  const double pp = wasserstein_1d_pp(xs, ys, p);
  std::vector<double> g(theta.size(), 0.0);
  const double outer = root_derivative(pp, p);
  if (outer == 0.0) return g;
  // W_p^p is symmetric in its arguments, so the nu-side derivative is the
  // mu-side derivative with the roles swapped.
  const auto dx = wasserstein_1d_pp_derivative(xs, ys, p);
  const auto dy = wasserstein_1d_pp_derivative(ys, xs, p);
  // Both sides are summed separately and added once, so swapping mu and nu
  // gives the same bits.
  std::vector<double> gy(theta.size(), 0.0);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const auto x = mu.point(i);
    for (std::size_t k = 0; k < g.size(); ++k) g[k] += dx[i] * x[k];
  }
  for (std::size_t i = 0; i < nu.size(); ++i) {
    const auto y = nu.point(i);
    for (std::size_t k = 0; k < gy.size(); ++k) gy[k] += dy[i] * y[k];
  }
  for (std::size_t k = 0; k < g.size(); ++k) g[k] += gy[k];
  for (double& v : g) v *= outer;
  return g;
}

SupportGradient grad_sw(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, std::span<const Direction> thetas,
                        double p) {
  if (thetas.empty()) throw ArgumentError("need at least one direction");
  check_dims(mu, nu, thetas, p);
  const auto terms = slice_terms(mu, nu, thetas, p);
  const double inv_l = 1.0 / static_cast<double>(thetas.size());
  double sum = 0.0;
  for (double v : terms.values) sum += v;
  const double mean = sum / static_cast<double>(thetas.size());
  const std::vector<double> coef(thetas.size(), inv_l);
  return combine(mu, thetas, terms, coef, root_derivative(mean, p));
}

SupportGradient grad_is_ebsw(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                             std::span<const Direction> thetas, double p, const EnergyFunction& f,
                             GradientMode mode) {
  if (thetas.empty()) throw ArgumentError("need at least one direction");
  check_dims(mu, nu, thetas, p);
  return is_ebsw_gradient_from_terms(mu, thetas, slice_terms(mu, nu, thetas, p), p, f, mode);
}

SupportGradient grad_resampled(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                               std::span<const Direction> resampled_thetas, double p) {
  if (resampled_thetas.empty()) throw ArgumentError("need at least one direction");
  check_dims(mu, nu, resampled_thetas, p);
  // Resampling and rejected chain moves repeat directions; evaluate each
  // distinct direction once and weight it by its multiplicity.
  std::map<std::vector<double>, std::size_t> slot;
  std::vector<Direction> unique;
  std::vector<double> count;
  for (const auto& th : resampled_thetas) {
    std::vector<double> key(th.components().begin(), th.components().end());
    const auto [it, inserted] = slot.emplace(std::move(key), unique.size());
    if (inserted) {
      unique.push_back(th);
      count.push_back(0.0);
    }
    count[it->second] += 1.0;
  }
  const auto terms = slice_terms(mu, nu, unique, p);
  const double total = static_cast<double>(resampled_thetas.size());
  double sum = 0.0;
  for (std::size_t u = 0; u < unique.size(); ++u) sum += count[u] * terms.values[u];
  std::vector<double> coef(unique.size());
  for (std::size_t u = 0; u < unique.size(); ++u) coef[u] = count[u] / total;
  return combine(mu, unique, terms, coef, root_derivative(sum / total, p));
}

SupportGradient estimator_gradient(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const Estimate& est,
                                   const EstimatorConfig& cfg, GradientMode mode) {
  const auto& dirs = est.batch.directions;
  switch (cfg.method) {
    case Method::kSw:
    case Method::kMaxSw:
      return grad_sw(mu, nu, dirs, cfg.p);
    case Method::kIsEbsw:
      return grad_is_ebsw(mu, nu, dirs, cfg.p, cfg.energy, mode);
    case Method::kSirEbsw:
    case Method::kImhEbsw:
    case Method::kRmhEbsw:
      return grad_resampled(mu, nu, dirs, cfg.p);
  }
  throw ArgumentError("unknown method");
}

EstimateWithGradient estimate_with_gradient(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                                            const EstimatorConfig& cfg, GradientMode mode) {
  if (cfg.method != Method::kSw && cfg.method != Method::kIsEbsw) {
    auto est = estimate(mu, nu, cfg);
    auto grad = estimator_gradient(mu, nu, est, cfg, mode);
    return {std::move(est), std::move(grad)};
  }
  cfg.validate();
  if (mu.dim() != nu.dim()) throw ArgumentError("measures have different dimensions");
  // Same stream consumption as sw() / is_ebsw().
  Rng rng = make_rng(cfg.seed);
  auto thetas = sample_uniform_sphere(mu.dim(), cfg.num_projections, rng);
  const auto terms = slice_terms(mu, nu, thetas, cfg.p);

  EstimateWithGradient out;
  auto& est = out.estimate;
  est.batch.values = terms.values;
  if (cfg.method == Method::kSw) {
    est.value = sw_from_values(terms.values, cfg.p);
    double sum = 0.0;
    for (double v : terms.values) sum += v;
    const double mean = sum / static_cast<double>(thetas.size());
    const std::vector<double> coef(thetas.size(), 1.0 / static_cast<double>(thetas.size()));
    out.gradient = combine(mu, thetas, terms, coef, root_derivative(mean, cfg.p));
  } else {
    est.value = is_ebsw_from_values(terms.values, cfg.energy, cfg.p);
    est.weights = normalized_weights(cfg.energy, terms.values);
    out.gradient = is_ebsw_gradient_from_terms(mu, thetas, terms, cfg.p, cfg.energy, mode);
  }
  est.batch.directions = std::move(thetas);
  return out;
}

}  // namespace ebsw
