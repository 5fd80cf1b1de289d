#pragma once

#include <stdexcept>
#include <string>

namespace irp {

enum class ErrorCode {
  UnknownType,
  AmbiguousType,
  UnknownInstance,
  InvalidScene,
  OutOfWorkspace,
  EmptyDemonstration,
  UnresolvedLandmark,
  GraspFailed,
  InstanceMismatch,
  UntypedInstance,
  TypeViolation,
  DanglingVariable,
  DuplicateName,
  SyntaxError,
  UnknownRequirement,
  ArityMismatch,
  UndeclaredPredicate,
  UndeclaredObject,
  NoSolution,
  ResourceLimit,
  TooLarge,
  PreconditionUnsatisfied,
  InconsistentCorrection,
  NoActionsDefined,
  EmptyGoal,
  SchemaVersionMismatch,
  CorruptFile,
  StaleSnapshot,
  NotFound,
  InvalidArgument,
};

const char *to_string(ErrorCode code);

// All recoverable failures in the workbench are reported through this type;
// callers dispatch on code().
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code), detail_(message) {}

  ErrorCode code() const { return code_; }
  const std::string &detail() const { return detail_; }

private:
  ErrorCode code_;
  std::string detail_;
};

} // namespace irp
