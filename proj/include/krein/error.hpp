#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace krein {

enum class Errc {
  NonSquare,
  AsymmetryBeyondTolerance,
  ConvergenceFailure,
  NotPositiveDefinite,
  DimensionMismatch,
  SingularToTolerance,
  NotStrictlyPositive,
  RankDeficientDomain,
  AsymmetricAmbient,
  IllConditionedDecomposition,
  NonpositiveShift,
  JOutOfRange,
  NotAnExtension,
  NotAnEigenpair,
  ZeroEigenvalue,
  GridTooSmall,
  InvalidShape,
  UnknownProblem,
  RootFindingFailure,
  ParseError,
  InstanceInvalid,
  IoError,
  SizeCapExceeded,
  InsufficientLevels,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure in the library is reported as an Error carrying one Errc.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace krein
