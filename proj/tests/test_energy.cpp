#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "ebsw/energy.hpp"
#include "ebsw/error.hpp"
#include "test_util.hpp"

namespace ebsw {
namespace {

TEST(Energy, Evaluation) {
  EXPECT_EQ(eval_energy(EnergyFunction::exponential(), 0.0), 1.0);
  EXPECT_EQ(eval_energy(EnergyFunction::polynomial(2.0), 2.0), 4.0);
  EXPECT_EQ(eval_energy(EnergyFunction::polynomial(1.0, 0.5), 0.0), 0.5);
  EXPECT_THROW(eval_energy(EnergyFunction::exponential(), -1.0), ArgumentError);
}

TEST(Energy, PolynomialValidation) {
  EXPECT_THROW(EnergyFunction::polynomial(0.0), ArgumentError);
  EXPECT_THROW(EnergyFunction::polynomial(-1.0), ArgumentError);
  EXPECT_THROW(EnergyFunction::polynomial(1.0, -0.1), ArgumentError);
}

TEST(Energy, ParseGrammar) {
  EXPECT_EQ(EnergyFunction::parse("e"), EnergyFunction::exponential());
  EXPECT_EQ(EnergyFunction::parse("q:2"), EnergyFunction::polynomial(2.0));
  EXPECT_EQ(EnergyFunction::parse("q:1.5:0.01"), EnergyFunction::polynomial(1.5, 0.01));
  for (const char* bad : {"", "x", "q", "q:", "q:abc", "q:1:2:3", "q:0", "q:1:-1"}) {
    EXPECT_THROW(EnergyFunction::parse(bad), ArgumentError) << bad;
  }
  for (const auto& f : {EnergyFunction::exponential(), EnergyFunction::polynomial(3.0, 0.25)}) {
    EXPECT_EQ(EnergyFunction::parse(f.to_string()), f);
  }
}

TEST(Energy, SoftmaxExample) {
  const std::vector<double> v = {0.0, std::log(4.0)};
  const auto w = normalized_weights(EnergyFunction::exponential(), v);
  EXPECT_NEAR(w[0], 0.2, 1e-15);
  EXPECT_NEAR(w[1], 0.8, 1e-15);
}

TEST(Energy, EqualValuesGiveUniformWeights) {
  const std::vector<double> v(7, 2.5);
  for (const auto& f : {EnergyFunction::exponential(), EnergyFunction::polynomial(2.0)}) {
    for (double w : normalized_weights(f, v)) EXPECT_EQ(w, 1.0 / 7.0);
  }
}

TEST(Energy, PolynomialRatio) {
  const auto w = normalized_weights(EnergyFunction::polynomial(1.0), std::vector<double>{1.0, 3.0});
  EXPECT_EQ(w[0], 0.25);
  EXPECT_EQ(w[1], 0.75);
}

TEST(Energy, DegenerateAllZero) {
  const std::vector<double> zeros(4, 0.0);
  EXPECT_THROW(normalized_weights(EnergyFunction::polynomial(1.0), zeros), DegenerateError);
  const auto w = normalized_weights(EnergyFunction::polynomial(1.0, 0.1), zeros);
  for (double x : w) EXPECT_EQ(x, 0.25);
  EXPECT_THROW(normalize(std::vector<double>{0.0, 0.0}), DegenerateError);
}

TEST(Energy, LargeValuesDoNotOverflow) {
  const std::vector<double> v = {800.0, 801.0, 0.0};
  const auto w = normalized_weights(EnergyFunction::exponential(), v);
  EXPECT_NEAR(w[1] / w[0], std::exp(1.0), 1e-12);
  EXPECT_GT(w[2], -1.0);
  for (double x : w) EXPECT_TRUE(std::isfinite(x));
}

TEST(Energy, WeightsSumToOneAndAreMonotone) {
  Rng rng = make_rng({21});
  for (int trial = 0; trial < 200; ++trial) {
    const auto v = testing::random_values(10, rng, 0.0, 20.0);
    for (const auto& f : {EnergyFunction::exponential(), EnergyFunction::polynomial(1.0),
                          EnergyFunction::polynomial(2.0, 0.5)}) {
      const auto w = normalized_weights(f, v);
      EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 1.0, 1e-12);
      for (std::size_t i = 0; i < v.size(); ++i) {
        EXPECT_GE(w[i], 0.0);
        for (std::size_t j = 0; j < v.size(); ++j) {
          if (v[i] > v[j]) EXPECT_GT(w[i], w[j]);
        }
      }
    }
  }
}

TEST(Energy, SoftmaxShiftInvariance) {
  Rng rng = make_rng({22});
  for (int trial = 0; trial < 100; ++trial) {
    auto v = testing::random_values(8, rng, 0.0, 10.0);
    const auto w = normalized_weights(EnergyFunction::exponential(), v);
    for (double& x : v) x += 3.75;
    const auto shifted = normalized_weights(EnergyFunction::exponential(), v);
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(shifted[i], w[i], 1e-15);
  }
}

// Scaling f by c > 0: the normalized weights of c*f computed from raw energies.
std::vector<double> scaled_weights(const EnergyFunction& f, std::span<const double> v, double c) {
  std::vector<double> raw(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) raw[i] = c * eval_energy(f, v[i]);
  return normalize(raw);
}

TEST(Energy, ScaleInvariance) {
  Rng rng = make_rng({23});
  for (int trial = 0; trial < 100; ++trial) {
    const auto v = testing::random_values(6, rng, 0.0, 5.0);
    const auto poly = EnergyFunction::polynomial(2.0, 0.1);
    const auto base = scaled_weights(poly, v, 1.0);
    for (double c : {0.25, 2.0, 1024.0}) {
      EXPECT_EQ(scaled_weights(poly, v, c), base);
    }
    for (double c : {3.0, 0.1}) {
      const auto w = scaled_weights(poly, v, c);
      for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(w[i], base[i], 4 * 1e-16);
    }
    const auto expo = normalized_weights(EnergyFunction::exponential(), v);
    for (double c : {0.25, 3.0, 1e3}) {
      const auto w = scaled_weights(EnergyFunction::exponential(), v, c);
      for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(w[i], expo[i], 1e-15);
    }
  }
}

TEST(Energy, LogDerivative) {
  EXPECT_EQ(energy_log_derivative(EnergyFunction::exponential(), 3.0), 1.0);
  EXPECT_DOUBLE_EQ(energy_log_derivative(EnergyFunction::polynomial(2.0, 1.0), 3.0), 6.0 / 10.0);
  EXPECT_EQ(log_energy(EnergyFunction::polynomial(1.0), 0.0), -INFINITY);
}

}  // namespace
}  // namespace ebsw
