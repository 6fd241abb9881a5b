#pragma once

#include <stdexcept>
#include <string>

namespace dck {

enum class ErrorKind {
  DegenerateTriangle,
  DegenerateFace,
  NonManifold,
  DuplicateFace,
  SphericalCenterUndefined,
  LightlikeCenter,
  IllConditioned,
  ZeroHeight,
  OutOfDomain,
  PathLeavesDomain,
  IterationLimit,
  SingularHessian,
  InfeasibleTarget,
  EvaluationFailed,
  Parse,
  Validation,
};

const char* errorKindName(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can map it onto exit codes without parsing messages.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(errorKindName(kind)) + ": " + message), kind_(kind),
        detail_(message) {}

  ErrorKind kind() const { return kind_; }
  // The message without the kind prefix.
  const std::string& detail() const { return detail_; }

private:
  ErrorKind kind_;
  std::string detail_;
};

} // namespace dck
