#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wj {

enum class ErrorKind {
  NotHermitian,
  NoConvergence,
  NotScalarPolar,
  SingularBlock,
  SingularMatrix,
  OnCut,
  NonFinite,
  DimensionTooLarge,
  IndexOutOfRange,
  InvalidCoefficients,
  InvalidSpectralData,
  InvalidMeasure,
  PoleProximity,
  TruncationTooSmall,
  SingularWeylValue,
  InvalidArgument,
  ParseError,
  SchemaError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a machine-readable kind so the
/// CLI can map it onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Input-side failures (bad files, bad flags, invalid data) as opposed to
  /// numerical breakdowns inside an algorithm.
  bool is_input_error() const noexcept;

 private:
  ErrorKind kind_;
};

}  // namespace wj
