#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "ebsw/energy.hpp"
#include "ebsw/estimators.hpp"
#include "ebsw/measure.hpp"
#include "ebsw/slicing.hpp"

namespace ebsw {

/// Gradient of an estimate with respect to the support points of mu (n x d).
using SupportGradient = Matrix;

/// How the importance weights of IS-EBSW enter the gradient.
///  - conventional: weights depend on mu (quotient rule through sum v f(v) / sum f(v)).
///  - parameter_copy: weights come from a detached copy of mu and are constants.
enum class GradientMode { kConventional, kParameterCopy };

GradientMode parse_gradient_mode(std::string_view name);
std::string_view gradient_mode_name(GradientMode m);

/// d W_p^p(theta # mu, theta # nu) / d x_j under the frozen monotone matching:
/// (p/n) |theta.x_j - theta.y_m(j)|^{p-1} sign(.) theta.
SupportGradient grad_slice_pp(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const Direction& theta,
                              double p);

/// d W_p / d theta for a (not necessarily unit) direction vector, frozen matching.
/// Zero where W_p = 0. This is the ascent direction of Max-SW.
std::vector<double> grad_theta_wp(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                                  std::span<const double> theta, double p);

/// Gradient of ((1/L) sum_l W_p^p)^{1/p}. Zero when the mean is zero.
SupportGradient grad_sw(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, std::span<const Direction> thetas,
                        double p);

/// Gradient of the IS-EBSW estimate over fixed proposal directions.
SupportGradient grad_is_ebsw(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                             std::span<const Direction> thetas, double p, const EnergyFunction& f,
                             GradientMode mode);

/// Parameter-copy gradient for SIR / IMH / RMH: the resampled or chain
/// directions are treated as fixed draws, so this is grad_sw over them.
SupportGradient grad_resampled(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                               std::span<const Direction> resampled_thetas, double p);

/// Gradient matching an Estimate produced by `estimate(mu, nu, cfg)`.
/// SIR / IMH / RMH always use the parameter-copy estimator.
SupportGradient estimator_gradient(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const Estimate& est,
                                   const EstimatorConfig& cfg, GradientMode mode);

struct EstimateWithGradient {
  Estimate estimate;
  SupportGradient gradient;
};

/// estimate(mu, nu, cfg) together with estimator_gradient of it, sharing the
/// per-direction sorts where possible. The value is bitwise equal to
/// estimate(mu, nu, cfg).value.
EstimateWithGradient estimate_with_gradient(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                                            const EstimatorConfig& cfg, GradientMode mode);

}  // namespace ebsw
