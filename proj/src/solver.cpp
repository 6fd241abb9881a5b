#include "dck/solver.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include "dck/quadrature.h"
#include "dck/variation.h"

namespace dck {

namespace {

constexpr int kDomainSamples = 32;

std::vector<double> lerp(const std::vector<double>& a, const std::vector<double>& b, double s) {
  std::vector<double> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + s * (b[i] - a[i]);
  return out;
}

Eigen::Map<const Eigen::VectorXd> view(const std::vector<double>& v) {
  return {v.data(), static_cast<Eigen::Index>(v.size())};
}

void requireSize(const Triangulation& t, const std::vector<double>& u) {
  if (static_cast<int>(u.size()) != t.vertexCount()) {
    throw Error(ErrorKind::Validation, "u must have one entry per vertex");
  }
}

} // namespace

Eigen::VectorXd curvaturesAtU(const Triangulation& t, const ConformalData& c,
                              const std::vector<double>& u) {
  requireSize(t, u);
  return vertexCurvatures(t, c.withFactors(fFromU(c, u)));
}

double functionalIncrement(const Triangulation& t, const ConformalData& c,
                           const std::vector<double>& ua, const std::vector<double>& ub,
                           int quadraturePoints) {
  requireSize(t, ua);
  requireSize(t, ub);
  Eigen::VectorXd du = view(ub) - view(ua);

  for (int k = 0; k <= kDomainSamples; ++k) {
    double s = static_cast<double>(k) / kDomainSamples;
    try {
      ConformalData cs = c.withFactors(fFromU(c, lerp(ua, ub, s)));
      if (!validateConformal(t, cs).ok()) throw Error(ErrorKind::OutOfDomain, "invalid faces");
      vertexCurvatures(t, cs);
    } catch (const Error& e) {
      std::ostringstream os;
      os << "path leaves the domain at parameter " << s << " (" << e.what() << ")";
      throw Error(ErrorKind::PathLeavesDomain, os.str());
    }
  }

  QuadratureRule rule = gaussLegendreUnit(quadraturePoints);
  double integral = 0.0;
  for (size_t q = 0; q < rule.nodes.size(); ++q) {
    try {
      integral += rule.weights[q] * curvaturesAtU(t, c, lerp(ua, ub, rule.nodes[q])).dot(du);
    } catch (const Error& e) {
      std::ostringstream os;
      os << "path leaves the domain at parameter " << rule.nodes[q] << " (" << e.what() << ")";
      throw Error(ErrorKind::PathLeavesDomain, os.str());
    }
  }
  return integral;
}

double evaluateFunctionalPath(const Triangulation& t, const ConformalData& c,
                              const std::vector<std::vector<double>>& waypoints,
                              int quadraturePoints) {
  if (waypoints.empty()) throw Error(ErrorKind::Validation, "path needs at least one waypoint");
  requireSize(t, waypoints.front());
  double F = 2.0 * std::numbers::pi * view(waypoints.front()).sum();
  for (size_t k = 1; k < waypoints.size(); ++k) {
    F += functionalIncrement(t, c, waypoints[k - 1], waypoints[k], quadraturePoints);
  }
  return F;
}

double evaluateFunctional(const Triangulation& t, const ConformalData& c,
                          const std::vector<double>& uBase, int quadraturePoints) {
  return evaluateFunctionalPath(t, c, {uBase, uFromF(c)}, quadraturePoints);
}

GaussBonnetCheck gaussBonnetFeasibility(const Triangulation& t, Background bg,
                                        const std::vector<double>& targetK) {
  if (static_cast<int>(targetK.size()) != t.vertexCount()) {
    throw Error(ErrorKind::Validation, "target K must have one entry per vertex");
  }
  GaussBonnetCheck g;
  g.targetSum = view(targetK).sum();
  g.twoPiChi = 2.0 * std::numbers::pi * t.eulerCharacteristic();
  switch (bg) {
  case Background::Euclidean:
    g.requirement = "sum K* = 2 pi chi";
    g.feasible = std::abs(g.targetSum - g.twoPiChi) <= 1e-8 * std::max(1.0, std::abs(g.twoPiChi));
    break;
  case Background::Hyperbolic:
    g.requirement = "sum K* > 2 pi chi";
    g.feasible = g.targetSum > g.twoPiChi;
    break;
  case Background::Spherical:
    g.requirement = "sum K* < 2 pi chi";
    g.feasible = g.targetSum < g.twoPiChi;
    break;
  }
  return g;
}

const char* solveStatusName(SolveStatus s) {
  switch (s) {
  case SolveStatus::Converged: return "converged";
  case SolveStatus::IterationLimit: return "iteration_limit";
  case SolveStatus::LineSearchFailed: return "line_search_failed";
  case SolveStatus::SingularHessian: return "singular_hessian";
  case SolveStatus::OutOfDomain: return "out_of_domain";
  }
  return "unknown";
}

SolveResult newtonPrescribedCurvature(const Triangulation& t, const ConformalData& c,
                                      const SolverConfig& cfg) {
  const int n = t.vertexCount();
  const Background bg = c.background;
  GaussBonnetCheck gb = gaussBonnetFeasibility(t, bg, cfg.targetK);
  if (!gb.feasible) {
    std::ostringstream os;
    os.precision(17);
    os << "target violates " << gb.requirement << ": sum K* = " << gb.targetSum
       << ", 2 pi chi = " << gb.twoPiChi;
    throw Error(ErrorKind::InfeasibleTarget, os.str());
  }
  const Eigen::Map<const Eigen::VectorXd> target = view(cfg.targetK);

  SolveResult res;
  if (bg == Background::Spherical) res.trace.warnings.push_back("NoConvexityGuarantee");

  res.u = uFromF(c);
  if (bg == Background::Euclidean) {
    // Gauge: sum u = 0. Lengths are homogeneous in e^f, so this only rescales.
    double mean = view(res.u).mean();
    for (double& x : res.u) x -= mean;
  }
  res.data = c.withFactors(fFromU(c, res.u));

  CurvatureSystem sys = assembleCurvatureSystem(t, res.data);
  Eigen::VectorXd r = sys.K - target;
  double functional = 2.0 * std::numbers::pi * view(res.u).sum();
  res.trace.iterations.push_back({0, r.lpNorm<Eigen::Infinity>(), 0.0, functional, 0});

  auto fail = [&](SolveStatus status, ErrorKind kind, const std::string& msg) {
    res.trace.status = status;
    res.K = sys.K;
    throw SolveError(kind, msg, res);
  };

  for (int it = 1;; ++it) {
    double resid = r.lpNorm<Eigen::Infinity>();
    if (resid <= cfg.gradTolerance) break;
    if (it > cfg.maxIterations) {
      fail(SolveStatus::IterationLimit, ErrorKind::IterationLimit,
           "no convergence after " + std::to_string(cfg.maxIterations) + " iterations, residual " +
               std::to_string(resid));
    }

    Eigen::VectorXd delta(n);
    if (bg == Background::Euclidean) {
      // Drop the last vertex; the reduced matrix is definite on a connected
      // surface, and r sums to zero so the dropped equation holds too.
      Eigen::SparseMatrix<double> Jr = sys.jacKU.topLeftCorner(n - 1, n - 1);
      Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(Jr);
      if (ldlt.info() != Eigen::Success) fail(SolveStatus::SingularHessian, ErrorKind::SingularHessian, "reduced Jacobian factorization failed");
      delta.head(n - 1) = ldlt.solve(-r.head(n - 1));
      delta(n - 1) = 0.0;
      delta.array() -= delta.mean();
    } else if (bg == Background::Hyperbolic) {
      Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(sys.jacKU);
      if (llt.info() != Eigen::Success) {
        fail(SolveStatus::SingularHessian, ErrorKind::SingularHessian,
             "curvature Jacobian is not positive definite at iteration " + std::to_string(it));
      }
      delta = llt.solve(-r);
    } else {
      Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
      lu.compute(sys.jacKU);
      if (lu.info() != Eigen::Success) {
        fail(SolveStatus::SingularHessian, ErrorKind::SingularHessian,
             "curvature Jacobian is singular at iteration " + std::to_string(it));
      }
      delta = lu.solve(-r);
      double big = delta.lpNorm<Eigen::Infinity>();
      if (big > cfg.trustRadius) delta *= cfg.trustRadius / big;
    }
    if (!delta.allFinite()) fail(SolveStatus::SingularHessian, ErrorKind::SingularHessian, "Newton step is not finite");

    double s = 1.0;
    int backtracks = 0;
    bool accepted = false;
    std::vector<double> uTrial;
    ConformalData trialData;
    CurvatureSystem trialSys;
    Eigen::VectorXd rTrial;
    bool sawDomainFailure = false;
    for (; backtracks <= cfg.maxHalvings; ++backtracks, s *= cfg.shrink) {
      uTrial = res.u;
      for (int v = 0; v < n; ++v) uTrial[v] += s * delta(v);
      try {
        trialData = c.withFactors(fFromU(c, uTrial));
        if (!validateConformal(t, trialData).ok()) throw Error(ErrorKind::OutOfDomain, "invalid trial");
        trialSys = assembleCurvatureSystem(t, trialData);
      } catch (const Error&) {
        sawDomainFailure = true;
        continue;
      }
      rTrial = trialSys.K - target;
      double tr = rTrial.lpNorm<Eigen::Infinity>();
      if (tr <= cfg.gradTolerance || tr <= (1.0 - cfg.sufficientDecrease * s) * resid) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (sawDomainFailure) {
        fail(SolveStatus::OutOfDomain, ErrorKind::OutOfDomain,
             "step left the domain after " + std::to_string(cfg.maxHalvings) + " halvings");
      }
      fail(SolveStatus::LineSearchFailed, ErrorKind::IterationLimit,
           "line search found no decrease at residual " + std::to_string(resid));
    }

    if (cfg.trackFunctional) {
      try {
        functional += functionalIncrement(t, c, res.u, uTrial, cfg.quadraturePoints);
      } catch (const Error&) {
        functional = std::nan("");
      }
    }
    res.u = std::move(uTrial);
    res.data = std::move(trialData);
    sys = std::move(trialSys);
    r = std::move(rTrial);
    res.trace.iterations.push_back({it, r.lpNorm<Eigen::Infinity>(), s, functional, backtracks});
  }

  res.trace.status = SolveStatus::Converged;
  res.K = sys.K;
  return res;
}

} // namespace dck
