#include "dck/errors.h"

namespace dck {

const char* errorKindName(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::DegenerateTriangle: return "DegenerateTriangle";
  case ErrorKind::DegenerateFace: return "DegenerateFace";
  case ErrorKind::NonManifold: return "NonManifold";
  case ErrorKind::DuplicateFace: return "DuplicateFace";
  case ErrorKind::SphericalCenterUndefined: return "SphericalCenterUndefined";
  case ErrorKind::LightlikeCenter: return "LightlikeCenter";
  case ErrorKind::IllConditioned: return "IllConditioned";
  case ErrorKind::ZeroHeight: return "ZeroHeight";
  case ErrorKind::OutOfDomain: return "OutOfDomain";
  case ErrorKind::PathLeavesDomain: return "PathLeavesDomain";
  case ErrorKind::IterationLimit: return "IterationLimit";
  case ErrorKind::SingularHessian: return "SingularHessian";
  case ErrorKind::InfeasibleTarget: return "InfeasibleTarget";
  case ErrorKind::EvaluationFailed: return "EvaluationFailed";
  case ErrorKind::Parse: return "ParseError";
  case ErrorKind::Validation: return "ValidationError";
  }
  return "Error";
}

} // namespace dck
