#include "lks/errors.hpp"

namespace lks {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::AntipodalDegeneracy: return "AntipodalDegeneracy";
    case ErrorKind::ZeroQuaternion: return "ZeroQuaternion";
    case ErrorKind::UndefinedAngles: return "UndefinedAngles";
    case ErrorKind::UndefinedLambda: return "UndefinedLambda";
    case ErrorKind::ZeroRadius: return "ZeroRadius";
    case ErrorKind::DegenerateElements: return "DegenerateElements";
    case ErrorKind::BoundarySingularity: return "BoundarySingularity";
    case ErrorKind::DegenerateChart: return "DegenerateChart";
    case ErrorKind::NegativeRadicand: return "NegativeRadicand";
    case ErrorKind::NonzeroGamma: return "NonzeroGamma";
    case ErrorKind::ManifoldViolation: return "ManifoldViolation";
    case ErrorKind::NonpositiveEnergy: return "NonpositiveEnergy";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::StepFailure: return "StepFailure";
    case ErrorKind::CollisionApproach: return "CollisionApproach";
  }
  return "Unknown";
}

ErrorCategory category_of(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NegativeRadicand:
    case ErrorKind::NonzeroGamma:
    case ErrorKind::ManifoldViolation:
    case ErrorKind::NonpositiveEnergy:
    case ErrorKind::InvalidArgument:
      return ErrorCategory::InvalidInput;
    case ErrorKind::StepFailure:
    case ErrorKind::CollisionApproach:
      return ErrorCategory::Numerical;
    default:
      return ErrorCategory::Geometric;
  }
}

int exit_code(ErrorCategory cat) noexcept {
  switch (cat) {
    case ErrorCategory::Geometric: return 2;
    case ErrorCategory::InvalidInput: return 3;
    case ErrorCategory::Numerical: return 4;
  }
  return 1;
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

UndefinedAnglesError::UndefinedAnglesError(const std::string& message,
                                           std::vector<std::string> undetermined,
                                           std::vector<SurvivingAngle> surviving)
    : Error(ErrorKind::UndefinedAngles, message),
      undetermined_(std::move(undetermined)),
      surviving_(std::move(surviving)) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace lks
