#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ebsw/energy.hpp"
#include "ebsw/measure.hpp"

namespace ebsw {

/// Minimum-cost perfect assignment for a square cost matrix
/// (shortest augmenting paths with potentials, O(n^3)).
/// Returns assignment[row] = column.
std::vector<std::size_t> solve_assignment(const Matrix& cost);

/// Exact W_2 between two equal-size uniform empirical measures via optimal
/// assignment on squared Euclidean costs. Throws ArgumentError on unequal sizes.
double exact_w2(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu);

/// min over permutations pi of (1/n) sum_i |x_i - y_pi(i)|^p. n = m <= 8.
double brute_force_1d(std::span<const double> xs, std::span<const double> ys, double p);

/// Central finite differences of a deterministic objective over every
/// coordinate of mu's support points.
Matrix finite_diff_grad(const std::function<double(const EmpiricalMeasure&)>& objective, const EmpiricalMeasure& mu,
                        double h);

/// Energy-based slicing density on the unit circle sampled at K equally
/// spaced angles 2*pi*k/K. `normalized` integrates to 1 under the periodic
/// trapezoid rule (sum * 2*pi/K).
struct DensityGrid {
  std::vector<double> angles;
  std::vector<double> unnormalized;
  std::vector<double> normalized;

  std::string to_csv() const;
};

/// d = 2 only; K >= 8.
DensityGrid slicing_density_grid(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const EnergyFunction& f,
                                 double p, std::size_t K);

}  // namespace ebsw
