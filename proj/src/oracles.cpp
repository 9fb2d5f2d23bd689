#include "ebsw/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "ebsw/error.hpp"
#include "ebsw/estimators.hpp"
#include "ebsw/onedim.hpp"

namespace ebsw {

std::vector<std::size_t> solve_assignment(const Matrix& cost) {
  const std::size_t n = cost.rows();
  if (n == 0 || cost.cols() != n) throw ArgumentError("assignment needs a nonempty square cost matrix");
  for (double c : cost.data()) {
    if (!std::isfinite(c)) throw ValidationError("assignment cost is not finite");
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based arrays; column 0 is a virtual start column.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> assignment(n);
  for (std::size_t j = 1; j <= n; ++j) assignment[match[j] - 1] = j - 1;
  return assignment;
}

double exact_w2(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu) {
  if (mu.size() != nu.size()) throw ArgumentError("exact_w2 needs equal support counts");
  if (mu.dim() != nu.dim()) throw ArgumentError("measures have different dimensions");
  const std::size_t n = mu.size();
  Matrix cost(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = mu.point(i);
    for (std::size_t j = 0; j < n; ++j) {
      const auto y = nu.point(j);
      double c = 0.0;
      for (std::size_t k = 0; k < x.size(); ++k) c += (x[k] - y[k]) * (x[k] - y[k]);
      cost(i, j) = c;
    }
  }
  const auto assignment = solve_assignment(cost);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += cost(i, assignment[i]);
  return std::sqrt(std::max(0.0, total / static_cast<double>(n)));
}

double brute_force_1d(std::span<const double> xs, std::span<const double> ys, double p) {
  if (xs.size() != ys.size()) throw ArgumentError("brute force needs equal sizes");
  if (xs.empty() || xs.size() > 8) throw ArgumentError("brute force supports 1 <= n <= 8");
  std::vector<std::size_t> perm(xs.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) s += std::pow(std::abs(xs[i] - ys[perm[i]]), p);
    best = std::min(best, s / static_cast<double>(xs.size()));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

Matrix finite_diff_grad(const std::function<double(const EmpiricalMeasure&)>& objective, const EmpiricalMeasure& mu,
                        double h) {
  if (!(h > 0.0)) throw ArgumentError("finite-difference step must be > 0");
  const std::size_t n = mu.size();
  const std::size_t d = mu.dim();
  Matrix g(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      Matrix plus = mu.points();
      Matrix minus = mu.points();
      plus(i, k) += h;
      minus(i, k) -= h;
      const double fp = objective(EmpiricalMeasure(std::move(plus)));
      const double fm = objective(EmpiricalMeasure(std::move(minus)));
      if (!std::isfinite(fp) || !std::isfinite(fm)) throw ValidationError("objective is not finite");
      g(i, k) = (fp - fm) / (2.0 * h);
    }
  }
  return g;
}

DensityGrid slicing_density_grid(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const EnergyFunction& f,
                                 double p, std::size_t K) {
  if (mu.dim() != 2 || nu.dim() != 2) throw ArgumentError("slicing density grid is defined for d = 2 only");
  if (K < 8) throw ArgumentError("density grid needs K >= 8");
  DensityGrid grid;
  grid.angles.resize(K);
  std::vector<Direction> dirs;
  dirs.reserve(K);
  for (std::size_t k = 0; k < K; ++k) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(K);
    grid.angles[k] = a;
    dirs.push_back(Direction::normalized({std::cos(a), std::sin(a)}));
  }
  const auto batch = slice_values(mu, nu, std::move(dirs), p);
  grid.unnormalized.resize(K);
  for (std::size_t k = 0; k < K; ++k) grid.unnormalized[k] = eval_energy(f, batch.values[k]);
  // Normalize in the scale of f / max f so large exponential energies do not overflow.
  const auto rel = relative_energies(f, batch.values);
  const double dtheta = 2.0 * std::numbers::pi / static_cast<double>(K);
  double integral = 0.0;
  for (double r : rel) integral += r * dtheta;
  grid.normalized.resize(K);
  for (std::size_t k = 0; k < K; ++k) grid.normalized[k] = rel[k] / integral;
  return grid;
}

std::string DensityGrid::to_csv() const {
  std::string out = "angle,unnormalized,normalized\n";
  for (std::size_t k = 0; k < angles.size(); ++k) {
    out += format_double(angles[k]) + "," + format_double(unnormalized[k]) + "," + format_double(normalized[k]) + "\n";
  }
  return out;
}

}  // namespace ebsw
