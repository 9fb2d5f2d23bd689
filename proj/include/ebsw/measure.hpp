#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ebsw {

/// Dense row-major matrix of doubles. Used for support points and for
/// gradients with respect to them.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Uniform-weight empirical measure (1/n) sum_i delta_{x_i} over n points in R^d.
/// Immutable after construction; every coordinate is finite and n, d >= 1.
class EmpiricalMeasure {
 public:
  /// Throws ValidationError on a non-finite coordinate, EmptyInputError when n or d is 0.
  explicit EmpiricalMeasure(Matrix points);
  EmpiricalMeasure(std::size_t n, std::size_t d, std::vector<double> coords);

  std::size_t size() const noexcept { return points_.rows(); }
  std::size_t dim() const noexcept { return points_.cols(); }

  std::span<const double> point(std::size_t i) const { return points_.row(i); }
  const Matrix& points() const noexcept { return points_; }

  friend bool operator==(const EmpiricalMeasure&, const EmpiricalMeasure&) = default;

 private:
  Matrix points_;
};

/// Headerless CSV, one point per row.
EmpiricalMeasure load_measure(const std::filesystem::path& path);
EmpiricalMeasure parse_measure_csv(std::string_view text);

/// Writes shortest round-trip decimal form, so load_measure(save_measure(m)) == m.
void save_measure(const EmpiricalMeasure& m, const std::filesystem::path& path);
std::string format_measure_csv(const EmpiricalMeasure& m);

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

}  // namespace ebsw
