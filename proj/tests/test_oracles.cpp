#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ebsw/error.hpp"
#include "ebsw/onedim.hpp"
#include "ebsw/oracles.hpp"
#include "test_util.hpp"

namespace ebsw {
namespace {

double permutation_w2(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu) {
  const std::size_t n = mu.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = INFINITY;
  do {
    double cost = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < mu.dim(); ++k) {
        const double t = mu.point(i)[k] - nu.point(perm[i])[k];
        cost += t * t;
      }
    }
    best = std::min(best, cost);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::sqrt(best / static_cast<double>(n));
}

TEST(Oracles, ExactW2Examples) {
  const EmpiricalMeasure mu(2, 2, {0, 0, 1, 0});
  const EmpiricalMeasure nu(2, 2, {0, 1, 1, 1});
  EXPECT_DOUBLE_EQ(exact_w2(mu, nu), 1.0);
  EXPECT_EQ(exact_w2(mu, mu), 0.0);
  EXPECT_THROW(exact_w2(mu, EmpiricalMeasure(1, 2, {0, 0})), ArgumentError);
}

TEST(Oracles, ExactW2MatchesPermutations) {
  Rng rng = make_rng({1});
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const auto mu = testing::gaussian_cloud(n, 2 + trial % 3, rng);
    const auto nu = testing::gaussian_cloud(n, mu.dim(), rng, 0.5);
    EXPECT_NEAR(exact_w2(mu, nu), permutation_w2(mu, nu), 1e-9);
  }
}

TEST(Oracles, ExactW2TriangleInequality) {
  Rng rng = make_rng({2});
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = testing::gaussian_cloud(8, 3, rng);
    const auto b = testing::gaussian_cloud(8, 3, rng, 1.0);
    const auto c = testing::gaussian_cloud(8, 3, rng, -0.5, 2.0);
    EXPECT_LE(exact_w2(a, c), exact_w2(a, b) + exact_w2(b, c) + 1e-9);
  }
}

TEST(Oracles, AssignmentIsAPermutationWithMinimalCost) {
  Matrix cost(3, 3, {4, 1, 3, 2, 0, 5, 3, 2, 2});
  const auto a = solve_assignment(cost);
  std::vector<std::size_t> sorted(a);
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, (std::vector<std::size_t>{0, 1, 2}));
  double total = 0.0;
  for (std::size_t i = 0; i < 3; ++i) total += cost(i, a[i]);
  EXPECT_EQ(total, 5.0);
}

TEST(Oracles, BruteForce1d) {
  EXPECT_EQ(brute_force_1d(std::vector<double>{0, 1}, std::vector<double>{2, 3}, 2.0), 4.0);
  EXPECT_EQ(brute_force_1d(std::vector<double>{1, 4, 2}, std::vector<double>{4, 2, 1}, 2.0), 0.0);
  EXPECT_THROW(brute_force_1d(std::vector<double>{1}, std::vector<double>{1, 2}, 2.0), ArgumentError);
  EXPECT_THROW(brute_force_1d(std::vector<double>(9, 0.0), std::vector<double>(9, 0.0), 2.0), ArgumentError);
}

TEST(Oracles, MonotoneMatchingIsAnArgmin) {
  Rng rng = make_rng({3});
  for (int trial = 0; trial < 50; ++trial) {
    auto xs = testing::random_values(6, rng);
    auto ys = testing::random_values(6, rng);
    const double best = brute_force_1d(xs, ys, 1.5);
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    double monotone = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) monotone += std::pow(std::abs(xs[i] - ys[i]), 1.5) / 6.0;
    EXPECT_NEAR(monotone, best, 1e-12);
  }
}

TEST(Oracles, FiniteDifferenceBasics) {
  const EmpiricalMeasure m(2, 2, {1.5, -2.0, 3.0, 0.5});
  const auto g = finite_diff_grad(
      [](const EmpiricalMeasure& x) { return x.point(0)[0] * x.point(0)[0] + x.point(0)[1] * x.point(0)[1]; }, m,
      1e-5);
  EXPECT_NEAR(g(0, 0), 3.0, 1e-8);
  EXPECT_NEAR(g(0, 1), -4.0, 1e-8);
  EXPECT_EQ(g(1, 0), 0.0);
  const auto zero = finite_diff_grad([](const EmpiricalMeasure&) { return 7.0; }, m, 1e-5);
  for (double x : zero.data()) EXPECT_EQ(x, 0.0);
  EXPECT_THROW(finite_diff_grad([](const EmpiricalMeasure&) { return NAN; }, m, 1e-5), ValidationError);
}

// Central differences of x^3 at x = 1 have error h^2 exactly, so the error
// ratio between h = 1e-3 and h = 1e-4 is 100.
TEST(Oracles, FiniteDifferenceErrorIsSecondOrder) {
  const EmpiricalMeasure m(1, 1, {1.0});
  const auto cube = [](const EmpiricalMeasure& x) { return std::pow(x.point(0)[0], 3); };
  const double e1 = std::abs(finite_diff_grad(cube, m, 1e-3)(0, 0) - 3.0);
  const double e2 = std::abs(finite_diff_grad(cube, m, 1e-4)(0, 0) - 3.0);
  EXPECT_NEAR(e1 / e2, 100.0, 1.0);
}

TEST(Oracles, DensityGridNormalization) {
  const auto mu = load_measure(testing::data_path("density_mu.csv"));
  const auto nu = load_measure(testing::data_path("density_nu.csv"));
  for (const auto& f : {EnergyFunction::exponential(), EnergyFunction::polynomial(1.0)}) {
    const auto grid = slicing_density_grid(mu, nu, f, 2.0, 360);
    double integral = 0.0;
    for (double x : grid.normalized) integral += x * 2.0 * M_PI / 360.0;
    EXPECT_NEAR(integral, 1.0, 1e-6);
    for (std::size_t k = 0; k < 180; ++k) {
      EXPECT_NEAR(grid.normalized[k], grid.normalized[k + 180], 1e-12 * grid.normalized[k]);
      EXPECT_GT(grid.unnormalized[k], 0.0);
    }
  }
}

TEST(Oracles, DensityGridUniformWhenMeasuresCoincide) {
  const auto mu = load_measure(testing::data_path("density_mu.csv"));
  const auto grid = slicing_density_grid(mu, mu, EnergyFunction::exponential(), 2.0, 64);
  for (double x : grid.unnormalized) EXPECT_EQ(x, 1.0);
  for (double x : grid.normalized) EXPECT_NEAR(x, 1.0 / (2.0 * M_PI), 1e-15);
}

TEST(Oracles, DensityGridFlattensForSameMeanGaussians) {
  // Isotropic Gaussians with equal means give a uniform slicing law in the limit.
  const auto ratio = [](std::size_t n) {
    Rng rng = make_rng({4});
    const auto mu = testing::gaussian_cloud(n, 2, rng);
    const auto nu = testing::gaussian_cloud(n, 2, rng, 0.0, 2.0);
    const auto grid = slicing_density_grid(mu, nu, EnergyFunction::exponential(), 2.0, 72);
    const auto [lo, hi] = std::minmax_element(grid.normalized.begin(), grid.normalized.end());
    return *hi / *lo;
  };
  const double small = ratio(20), medium = ratio(2000), large = ratio(200000);
  EXPECT_GT(small, medium);
  EXPECT_GT(medium, large);
  EXPECT_LT(large, 1.05);
}

TEST(Oracles, DensityGridErrors) {
  const EmpiricalMeasure m3(2, 3, {0, 0, 0, 1, 1, 1});
  EXPECT_THROW(slicing_density_grid(m3, m3, EnergyFunction::exponential(), 2.0, 36), ArgumentError);
  const EmpiricalMeasure m2(2, 2, {0, 0, 1, 1});
  EXPECT_THROW(slicing_density_grid(m2, m2, EnergyFunction::exponential(), 2.0, 4), ArgumentError);
}

TEST(Oracles, DensityGridCsvHeader) {
  const EmpiricalMeasure m(2, 2, {0, 0, 1, 1});
  const auto csv = slicing_density_grid(m, m, EnergyFunction::exponential(), 2.0, 8).to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "angle,unnormalized,normalized");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 9);
}

}  // namespace
}  // namespace ebsw
