#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ebsw {

/// |t|^p with exact fast paths for p = 1 and p = 2.
double pow_abs(double t, double p);

/// W_p^p between the uniform empirical measures on `xs` and `ys`
/// (sizes may differ). Inputs need not be sorted.
/// Throws ArgumentError on empty input, non-finite values, or p < 1.
double wasserstein_1d_pp(std::span<const double> xs, std::span<const double> ys, double p);

/// (W_p^p)^{1/p}.
double wasserstein_1d(std::span<const double> xs, std::span<const double> ys, double p);

/// Same as wasserstein_1d_pp but both inputs already sorted ascending; no validation.
double wasserstein_1d_pp_sorted(std::span<const double> xs, std::span<const double> ys, double p);

/// Indices that stably sort `values` ascending (ties keep original order).
std::vector<std::size_t> stable_argsort(std::span<const double> values);

/// d W_p^p / d xs[i] for every i, with the monotone coupling frozen at the
/// stable-sort matching. Uses sign(0) = 0.
std::vector<double> wasserstein_1d_pp_derivative(std::span<const double> xs, std::span<const double> ys,
                                                 double p);

/// Returns W_p^p and writes d W_p^p / d xs[i] into `dxs` (size xs.size()).
/// The value is bitwise equal to wasserstein_1d_pp on the same inputs.
double wasserstein_1d_pp_with_derivative(std::span<const double> xs, std::span<const double> ys, double p,
                                         std::span<double> dxs);

}  // namespace ebsw
