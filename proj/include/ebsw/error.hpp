#pragma once

#include <stdexcept>
#include <string>

namespace ebsw {

/// Base class of every error raised by the library. The kind maps onto the
/// CLI exit-code contract (argument errors vs data errors vs divergence).
class Error : public std::runtime_error {
 public:
  enum class Kind { kArgument, kFormat, kValidation, kEmptyInput, kIo, kDegenerate, kDiverged };

  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

struct ArgumentError : Error {
  explicit ArgumentError(const std::string& what) : Error(Kind::kArgument, what) {}
};

struct FormatError : Error {
  explicit FormatError(const std::string& what) : Error(Kind::kFormat, what) {}
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& what) : Error(Kind::kValidation, what) {}
};

struct EmptyInputError : Error {
  explicit EmptyInputError(const std::string& what) : Error(Kind::kEmptyInput, what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(Kind::kIo, what) {}
};

/// Every energy is zero: the two measures coincide along all sampled directions.
struct DegenerateError : Error {
  explicit DegenerateError(const std::string& what) : Error(Kind::kDegenerate, what) {}
};

struct DivergedError : Error {
  DivergedError(int step, const std::string& what) : Error(Kind::kDiverged, what), step_(step) {}
  int step() const noexcept { return step_; }

 private:
  int step_;
};

}  // namespace ebsw
