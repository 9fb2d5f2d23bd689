#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ebsw/measure.hpp"
#include "ebsw/rng.hpp"

namespace ebsw {

/// Unit vector on S^{d-1}. Construction normalizes, so the Euclidean norm is
/// 1 to within a few ulps.
class Direction {
 public:
  Direction() = default;

  /// Normalizes `v`. Throws ArgumentError for an empty or zero vector.
  static Direction normalized(std::vector<double> v);

  /// Accepts `v` only if its norm is already 1 within `tol`, then renormalizes.
  static Direction checked_unit(std::vector<double> v, double tol = 1e-9);

  std::size_t dim() const noexcept { return components_.size(); }
  double operator[](std::size_t i) const { return components_[i]; }
  std::span<const double> components() const noexcept { return components_; }

  Direction operator-() const;

  friend bool operator==(const Direction&, const Direction&) = default;

 private:
  explicit Direction(std::vector<double> v) : components_(std::move(v)) {}
  std::vector<double> components_;
};

/// Concentration kappa >= 0 around `location`; kappa == 0 is the uniform law.
struct VmfParams {
  Direction location;
  double kappa = 0.0;
};

double dot(std::span<const double> a, std::span<const double> b);

/// One direction uniform on S^{d-1}: standard normal draw, then normalize.
Direction sample_uniform_direction(std::size_t d, Rng& rng);

/// L i.i.d. uniform directions, drawn sequentially from `rng`.
std::vector<Direction> sample_uniform_sphere(std::size_t d, std::size_t count, Rng& rng);

/// von Mises-Fisher draw via Wood's rejection scheme: a beta-distributed
/// cosine along the mean, a uniform tangent component, then a Householder
/// reflection taking e1 onto the location.
Direction sample_vmf(const VmfParams& params, Rng& rng);

/// theta^T x_i for every support point.
std::vector<double> project(const EmpiricalMeasure& m, const Direction& theta);
void project_into(const EmpiricalMeasure& m, std::span<const double> theta, std::span<double> out);

}  // namespace ebsw
