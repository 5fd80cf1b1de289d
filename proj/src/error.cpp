#include "irp/error.hpp"

namespace irp {

const char *to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::UnknownType:
    return "UnknownType";
  case ErrorCode::AmbiguousType:
    return "AmbiguousType";
  case ErrorCode::UnknownInstance:
    return "UnknownInstance";
  case ErrorCode::InvalidScene:
    return "InvalidScene";
  case ErrorCode::OutOfWorkspace:
    return "OutOfWorkspace";
  case ErrorCode::EmptyDemonstration:
    return "EmptyDemonstration";
  case ErrorCode::UnresolvedLandmark:
    return "UnresolvedLandmark";
  case ErrorCode::GraspFailed:
    return "GraspFailed";
  case ErrorCode::InstanceMismatch:
    return "InstanceMismatch";
  case ErrorCode::UntypedInstance:
    return "UntypedInstance";
  case ErrorCode::TypeViolation:
    return "TypeViolation";
  case ErrorCode::DanglingVariable:
    return "DanglingVariable";
  case ErrorCode::DuplicateName:
    return "DuplicateName";
  case ErrorCode::SyntaxError:
    return "SyntaxError";
  case ErrorCode::UnknownRequirement:
    return "UnknownRequirement";
  case ErrorCode::ArityMismatch:
    return "ArityMismatch";
  case ErrorCode::UndeclaredPredicate:
    return "UndeclaredPredicate";
  case ErrorCode::UndeclaredObject:
    return "UndeclaredObject";
  case ErrorCode::NoSolution:
    return "NoSolution";
  case ErrorCode::ResourceLimit:
    return "ResourceLimit";
  case ErrorCode::TooLarge:
    return "TooLarge";
  case ErrorCode::PreconditionUnsatisfied:
    return "PreconditionUnsatisfied";
  case ErrorCode::InconsistentCorrection:
    return "InconsistentCorrection";
  case ErrorCode::NoActionsDefined:
    return "NoActionsDefined";
  case ErrorCode::EmptyGoal:
    return "EmptyGoal";
  case ErrorCode::SchemaVersionMismatch:
    return "SchemaVersionMismatch";
  case ErrorCode::CorruptFile:
    return "CorruptFile";
  case ErrorCode::StaleSnapshot:
    return "StaleSnapshot";
  case ErrorCode::NotFound:
    return "NotFound";
  case ErrorCode::InvalidArgument:
    return "InvalidArgument";
  }
  return "Unknown";
}

} // namespace irp
