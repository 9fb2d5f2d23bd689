#include "ebsw/flows.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ebsw/error.hpp"
#include "ebsw/oracles.hpp"

namespace ebsw {

SeedPolicy parse_seed_policy(std::string_view name) {
  if (name == "fresh" || name == "fresh-per-step" || name == "fresh_per_step") return SeedPolicy::kFreshPerStep;
  if (name == "fixed") return SeedPolicy::kFixed;
  throw ArgumentError("unknown seed policy '" + std::string(name) + "'");
}

std::string_view seed_policy_name(SeedPolicy s) { return s == SeedPolicy::kFixed ? "fixed" : "fresh-per-step"; }

void FlowConfig::validate() const {
  if (steps == 0) throw ArgumentError("flow needs steps >= 1");
  if (!(step_size > 0.0) || !std::isfinite(step_size)) throw ArgumentError("flow step size must be > 0");
  if (eval_every == 0 || eval_every > steps) throw ArgumentError("eval_every must be in [1, steps]");
  estimator.validate();
}

std::string FlowTrace::to_csv() const {
  std::string out = "step,estimator_value,eval_w2\n";
  for (const auto& r : records) {
    out += std::to_string(r.step) + "," + format_double(r.estimator_value) + "," + format_double(r.eval_w2) + "\n";
  }
  return out;
}

namespace {

EstimatorConfig step_config(const FlowConfig& cfg, std::size_t step) {
  EstimatorConfig c = cfg.estimator;
  if (cfg.seed_policy == SeedPolicy::kFreshPerStep) c.seed = derive_seed(cfg.estimator.seed, step);
  return c;
}

}  // namespace

FlowResult run_flow(const EmpiricalMeasure& source, const EmpiricalMeasure& target, const FlowConfig& cfg) {
  cfg.validate();
  if (source.dim() != target.dim()) throw ArgumentError("source and target have different dimensions");
  if (source.size() != target.size()) throw ArgumentError("flows need equal support counts");

  const double n = static_cast<double>(source.size());
  Matrix x = source.points();
  FlowTrace trace;
  for (std::size_t t = 0; t <= cfg.steps; ++t) {
    const EmpiricalMeasure current(x);
    const auto step_cfg = step_config(cfg, t);
    const bool record = t % cfg.eval_every == 0 || t == cfg.steps;
    if (t == cfg.steps) {
      trace.records.push_back({t, estimate(current, target, step_cfg).value, exact_w2(current, target)});
      break;
    }
    const auto [est, grad] = estimate_with_gradient(current, target, step_cfg, cfg.gradient_mode);
    if (record) trace.records.push_back({t, est.value, exact_w2(current, target)});

    auto xs = x.data();
    const auto gs = grad.data();
    const double scale = cfg.step_size * n;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      xs[k] -= scale * gs[k];
      if (!std::isfinite(xs[k])) {
        throw DivergedError(static_cast<int>(t + 1),
                            "flow diverged at step " + std::to_string(t + 1) + ": non-finite support point");
      }
    }
  }
  return {EmpiricalMeasure(std::move(x)), std::move(trace)};
}

EmpiricalMeasure match_palette_size(const EmpiricalMeasure& palette, std::size_t count, RngSeed seed) {
  const std::size_t n = palette.size();
  if (count == n) return palette;
  Rng rng = make_rng(seed);
  std::vector<std::size_t> pick(count);
  if (count < n) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    // Partial Fisher-Yates: the first `count` entries are a uniform subset.
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t j = i + std::uniform_int_distribution<std::size_t>(0, n - 1 - i)(rng);
      std::swap(idx[i], idx[j]);
    }
    std::copy_n(idx.begin(), count, pick.begin());
  } else {
    std::uniform_int_distribution<std::size_t> any(0, n - 1);
    for (auto& p : pick) p = any(rng);
  }
  Matrix out(count, palette.dim());
  for (std::size_t i = 0; i < count; ++i) {
    const auto src = palette.point(pick[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return EmpiricalMeasure(std::move(out));
}

ColorTransferResult color_transfer(const Image& source, const Image& target, const FlowConfig& cfg) {
  const auto src = image_palette(source);
  const auto tgt = match_palette_size(image_palette(target), src.size(), derive_seed(cfg.estimator.seed, ~0ULL));
  auto flow = run_flow(src, tgt, cfg);
  ColorTransferResult out;
  out.image.width = source.width;
  out.image.height = source.height;
  out.image.rgb = round_palette(flow.final_cloud);
  out.trace = std::move(flow.trace);
  return out;
}

}  // namespace ebsw
