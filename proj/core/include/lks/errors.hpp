#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lks {

enum class ErrorKind {
  // geometric degeneracies
  AntipodalDegeneracy,
  ZeroQuaternion,
  UndefinedAngles,
  UndefinedLambda,
  ZeroRadius,
  DegenerateElements,
  BoundarySingularity,
  DegenerateChart,
  // invalid input
  NegativeRadicand,
  NonzeroGamma,
  ManifoldViolation,
  NonpositiveEnergy,
  InvalidArgument,
  // numerical failures
  StepFailure,
  CollisionApproach,
};

enum class ErrorCategory { Geometric, InvalidInput, Numerical };

std::string_view to_string(ErrorKind kind) noexcept;
ErrorCategory category_of(ErrorKind kind) noexcept;

// Process exit code used by the CLI: 2 geometric, 3 invalid input, 4 numerical.
int exit_code(ErrorCategory cat) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  ErrorCategory category() const noexcept { return category_of(kind_); }

 private:
  ErrorKind kind_;
};

// An angle combination that stays well defined when the individual angles are not.
struct SurvivingAngle {
  std::string name;  // e.g. "l+g", "l03+g03"
  double value;
};

class UndefinedAnglesError : public Error {
 public:
  UndefinedAnglesError(const std::string& message, std::vector<std::string> undetermined,
                       std::vector<SurvivingAngle> surviving);

  const std::vector<std::string>& undetermined() const noexcept { return undetermined_; }
  const std::vector<SurvivingAngle>& surviving() const noexcept { return surviving_; }

 private:
  std::vector<std::string> undetermined_;
  std::vector<SurvivingAngle> surviving_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace lks
