#pragma once

// The curvature functional F(u) and Newton's method for prescribed curvature.

#include <string>
#include <vector>

#include <Eigen/Core>

#include "dck/conformal.h"
#include "dck/errors.h"
#include "dck/mesh.h"

namespace dck {

// F(u) = 2 pi sum(u_base) + int_0^1 K(u(s)) . (u - u_base) ds along the
// straight segment, so that grad F = K. Path samples outside the domain raise
// PathLeavesDomain naming the first bad parameter.
double evaluateFunctional(const Triangulation& t, const ConformalData& c,
                          const std::vector<double>& uBase, int quadraturePoints = 64);

// Same, along the polyline through the waypoints (u-coordinates). The first
// waypoint is the base point; `c` only supplies background, alpha and eta.
double evaluateFunctionalPath(const Triangulation& t, const ConformalData& c,
                              const std::vector<std::vector<double>>& waypoints,
                              int quadraturePoints = 64);

// Integral of K . (ub - ua) over the segment [ua, ub].
double functionalIncrement(const Triangulation& t, const ConformalData& c,
                           const std::vector<double>& ua, const std::vector<double>& ub,
                           int quadraturePoints = 64);

// K as a function of u, for the FD oracle and tests.
Eigen::VectorXd curvaturesAtU(const Triangulation& t, const ConformalData& c,
                              const std::vector<double>& u);

struct GaussBonnetCheck {
  double targetSum = 0.0;
  double twoPiChi = 0.0;
  bool feasible = false;
  std::string requirement; // "sum K* = 2 pi chi" etc.
};

// Euclidean: sum K* = 2 pi chi (to 1e-8 relative). Hyperbolic: sum K* > 2 pi chi
// (total area is positive). Spherical: sum K* < 2 pi chi.
GaussBonnetCheck gaussBonnetFeasibility(const Triangulation& t, Background bg,
                                        const std::vector<double>& targetK);

struct SolverConfig {
  std::vector<double> targetK;
  int maxIterations = 50;
  double gradTolerance = 1e-10; // on ||K - K*||_inf
  double shrink = 0.5;
  double sufficientDecrease = 1e-4;
  int maxHalvings = 60;
  double trustRadius = 1.0; // spherical only, on ||delta||_inf
  int quadraturePoints = 64;
  bool trackFunctional = true;
};

struct IterationRecord {
  int iteration = 0;
  double residual = 0.0; // ||K - K*||_inf at this iterate
  double step = 0.0;     // accepted step length s that produced this iterate
  double functional = 0.0;
  int backtracks = 0;
};

enum class SolveStatus { Converged, IterationLimit, LineSearchFailed, SingularHessian, OutOfDomain };

const char* solveStatusName(SolveStatus s);

struct SolveTrace {
  std::vector<IterationRecord> iterations;
  SolveStatus status = SolveStatus::IterationLimit;
  std::vector<std::string> warnings;
};

struct SolveResult {
  ConformalData data;
  std::vector<double> u;
  Eigen::VectorXd K;
  SolveTrace trace;
};

// Carries the partial trace and last iterate of a failed solve.
class SolveError : public Error {
public:
  SolveError(ErrorKind kind, const std::string& message, SolveResult partial)
      : Error(kind, message), partial_(std::move(partial)) {}
  const SolveResult& partial() const { return partial_; }

private:
  SolveResult partial_;
};

// Throws InfeasibleTarget before iterating, SolveError(IterationLimit,
// SingularHessian, OutOfDomain) afterwards.
SolveResult newtonPrescribedCurvature(const Triangulation& t, const ConformalData& c,
                                      const SolverConfig& cfg);

} // namespace dck
