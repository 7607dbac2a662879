#include "krein/error.hpp"

namespace krein {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NonSquare: return "NonSquare";
    case Errc::AsymmetryBeyondTolerance: return "AsymmetryBeyondTolerance";
    case Errc::ConvergenceFailure: return "ConvergenceFailure";
    case Errc::NotPositiveDefinite: return "NotPositiveDefinite";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::SingularToTolerance: return "SingularToTolerance";
    case Errc::NotStrictlyPositive: return "NotStrictlyPositive";
    case Errc::RankDeficientDomain: return "RankDeficientDomain";
    case Errc::AsymmetricAmbient: return "AsymmetricAmbient";
    case Errc::IllConditionedDecomposition: return "IllConditionedDecomposition";
    case Errc::NonpositiveShift: return "NonpositiveShift";
    case Errc::JOutOfRange: return "JOutOfRange";
    case Errc::NotAnExtension: return "NotAnExtension";
    case Errc::NotAnEigenpair: return "NotAnEigenpair";
    case Errc::ZeroEigenvalue: return "ZeroEigenvalue";
    case Errc::GridTooSmall: return "GridTooSmall";
    case Errc::InvalidShape: return "InvalidShape";
    case Errc::UnknownProblem: return "UnknownProblem";
    case Errc::RootFindingFailure: return "RootFindingFailure";
    case Errc::ParseError: return "ParseError";
    case Errc::InstanceInvalid: return "InstanceInvalid";
    case Errc::IoError: return "IoError";
    case Errc::SizeCapExceeded: return "SizeCapExceeded";
    case Errc::InsufficientLevels: return "InsufficientLevels";
  }
  return "Unknown";
}

}  // namespace krein
