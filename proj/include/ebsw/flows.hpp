#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ebsw/estimators.hpp"
#include "ebsw/gradients.hpp"
#include "ebsw/image.hpp"
#include "ebsw/measure.hpp"

namespace ebsw {

enum class SeedPolicy {
  kFreshPerStep,  ///< step t draws directions from sub-stream t of the seed
  kFixed,         ///< every step reuses the same seed
};

SeedPolicy parse_seed_policy(std::string_view name);
std::string_view seed_policy_name(SeedPolicy s);

struct FlowConfig {
  std::size_t steps = 500;
  double step_size = 0.01;  ///< gamma
  EstimatorConfig estimator;
  GradientMode gradient_mode = GradientMode::kConventional;
  std::size_t eval_every = 100;
  SeedPolicy seed_policy = SeedPolicy::kFreshPerStep;

  void validate() const;
};

struct FlowRecord {
  std::size_t step = 0;
  double estimator_value = 0.0;
  double eval_w2 = 0.0;
};

struct FlowTrace {
  std::vector<FlowRecord> records;

  /// CSV with header `step,estimator_value,eval_w2`.
  std::string to_csv() const;
};

struct FlowResult {
  EmpiricalMeasure final_cloud;
  FlowTrace trace;
};

/// Euler scheme X <- X - gamma * n * grad_X D(mu_X, target). Records the
/// estimator value and exact W2 at step 0, every `eval_every` steps and after
/// the last step. Throws DivergedError naming the step if X becomes non-finite.
FlowResult run_flow(const EmpiricalMeasure& source, const EmpiricalMeasure& target, const FlowConfig& cfg);

struct ColorTransferResult {
  Image image;
  FlowTrace trace;
};

/// Flows the source palette (RGB / 255) toward the target palette, then
/// rounds to integer channels. A target palette with a different pixel
/// count is resampled to the source count with a seeded draw: without
/// replacement when larger, with replacement when smaller.
ColorTransferResult color_transfer(const Image& source, const Image& target, const FlowConfig& cfg);

/// Target palette matched to `count` points as described above.
EmpiricalMeasure match_palette_size(const EmpiricalMeasure& palette, std::size_t count, RngSeed seed);

}  // namespace ebsw
