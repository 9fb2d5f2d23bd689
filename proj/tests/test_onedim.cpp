#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "ebsw/error.hpp"
#include "ebsw/onedim.hpp"
#include "ebsw/oracles.hpp"
#include "test_util.hpp"

namespace ebsw {
namespace {

TEST(OneDim, SmallExamples) {
  const std::vector<double> xs = {0, 1}, ys = {2, 3};
  EXPECT_DOUBLE_EQ(wasserstein_1d_pp(xs, ys, 2.0), 4.0);
  EXPECT_DOUBLE_EQ(wasserstein_1d(xs, ys, 2.0), 2.0);
  EXPECT_EQ(wasserstein_1d_pp(xs, xs, 2.0), 0.0);
  EXPECT_EQ(wasserstein_1d_pp(std::vector<double>{0}, std::vector<double>{5}, 1.0), 5.0);
  EXPECT_EQ(wasserstein_1d(std::vector<double>{0}, std::vector<double>{-3}, 2.0), 3.0);
}

TEST(OneDim, Errors) {
  const std::vector<double> empty, one = {1.0};
  EXPECT_THROW(wasserstein_1d_pp(empty, one, 2.0), ArgumentError);
  EXPECT_THROW(wasserstein_1d_pp(one, empty, 2.0), ArgumentError);
  EXPECT_THROW(wasserstein_1d_pp(one, one, 0.5), ArgumentError);
  EXPECT_THROW(wasserstein_1d_pp(std::vector<double>{NAN}, one, 2.0), ArgumentError);
}

TEST(OneDim, MatchesBruteForce) {
  Rng rng = make_rng({11});
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const auto xs = testing::random_values(n, rng);
    const auto ys = testing::random_values(n, rng);
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      EXPECT_NEAR(wasserstein_1d_pp(xs, ys, p), brute_force_1d(xs, ys, p), 1e-9);
    }
  }
}

TEST(OneDim, UnequalSizesMatchReplicatedSupports) {
  // n = 2, m = 3: replicating each x three times and each y twice gives equal sizes.
  Rng rng = make_rng({12});
  for (int trial = 0; trial < 50; ++trial) {
    const auto xs = testing::random_values(2, rng);
    const auto ys = testing::random_values(3, rng);
    std::vector<double> xr, yr;
    for (double x : xs) xr.insert(xr.end(), 3, x);
    for (double y : ys) yr.insert(yr.end(), 2, y);
    EXPECT_NEAR(wasserstein_1d_pp(xs, ys, 2.0), wasserstein_1d_pp(xr, yr, 2.0), 1e-12);
    EXPECT_NEAR(wasserstein_1d_pp(xs, ys, 1.0), wasserstein_1d_pp(xr, yr, 1.0), 1e-12);
  }
}

TEST(OneDim, Symmetry) {
  Rng rng = make_rng({13});
  for (int trial = 0; trial < 50; ++trial) {
    const auto xs = testing::random_values(5, rng);
    const auto ys = testing::random_values(3 + trial % 4, rng);
    EXPECT_EQ(wasserstein_1d_pp(xs, ys, 2.0), wasserstein_1d_pp(ys, xs, 2.0));
  }
}

TEST(OneDim, TranslationInvariance) {
  Rng rng = make_rng({14});
  for (int trial = 0; trial < 50; ++trial) {
    auto xs = testing::random_values(6, rng);
    auto ys = testing::random_values(6, rng);
    const double base = wasserstein_1d_pp(xs, ys, 2.0);
    for (double& x : xs) x += 0.375;
    for (double& y : ys) y += 0.375;
    EXPECT_NEAR(wasserstein_1d_pp(xs, ys, 2.0), base, 1e-12 * std::max(1.0, base));
  }
}

TEST(OneDim, TriangleInequality) {
  Rng rng = make_rng({15});
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = testing::random_values(4, rng);
    const auto b = testing::random_values(4, rng);
    const auto c = testing::random_values(4, rng);
    for (double p : {1.0, 2.0, 3.0}) {
      EXPECT_LE(wasserstein_1d(a, c, p), wasserstein_1d(a, b, p) + wasserstein_1d(b, c, p) + 1e-9);
    }
  }
}

TEST(OneDim, Scaling) {
  Rng rng = make_rng({16});
  const auto xs = testing::random_values(5, rng);
  const auto ys = testing::random_values(5, rng);
  for (double a : {-2.0, 0.5, 3.0}) {
    std::vector<double> sx(xs), sy(ys);
    for (double& x : sx) x *= a;
    for (double& y : sy) y *= a;
    for (double p : {1.0, 2.0, 2.5}) {
      const double expected = std::pow(std::abs(a), p) * wasserstein_1d_pp(xs, ys, p);
      EXPECT_NEAR(wasserstein_1d_pp(sx, sy, p), expected, 1e-12 * expected);
    }
  }
}

TEST(OneDim, StableArgsortKeepsTieOrder) {
  const std::vector<double> v = {2.0, 1.0, 2.0, 1.0, 0.0};
  const std::vector<std::size_t> expected = {4, 1, 3, 0, 2};
  EXPECT_EQ(stable_argsort(v), expected);
}

TEST(OneDim, DerivativeMatchesFiniteDifferences) {
  Rng rng = make_rng({17});
  for (int trial = 0; trial < 20; ++trial) {
    auto xs = testing::random_values(5, rng);
    const auto ys = testing::random_values(5, rng);
    const auto d = wasserstein_1d_pp_derivative(xs, ys, 2.0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double h = 1e-6;
      auto up = xs, dn = xs;
      up[i] += h;
      dn[i] -= h;
      const double fd = (wasserstein_1d_pp(up, ys, 2.0) - wasserstein_1d_pp(dn, ys, 2.0)) / (2 * h);
      EXPECT_NEAR(d[i], fd, 1e-6);
    }
  }
}

TEST(OneDim, DerivativeAtCoincidentPointsIsZero) {
  const std::vector<double> xs = {1.0, -2.0, 0.5};
  const auto d = wasserstein_1d_pp_derivative(xs, xs, 1.0);
  for (double v : d) EXPECT_EQ(v, 0.0);
}

TEST(OneDim, FusedValueIsBitwiseEqual) {
  Rng rng = make_rng({18});
  for (int trial = 0; trial < 50; ++trial) {
    const auto xs = testing::random_values(7, rng);
    const auto ys = testing::random_values(trial % 2 ? 7 : 4, rng);
    std::vector<double> dxs(xs.size());
    for (double p : {1.0, 2.0, 3.5}) {
      EXPECT_EQ(wasserstein_1d_pp_with_derivative(xs, ys, p, dxs), wasserstein_1d_pp(xs, ys, p));
    }
  }
}

}  // namespace
}  // namespace ebsw
