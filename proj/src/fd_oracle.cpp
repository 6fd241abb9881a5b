#include "dck/fd_oracle.h"

#include <cmath>
#include <string>
#include <vector>

#include "dck/errors.h"

namespace dck {

namespace {

double probe(const ScalarField& fn, const Eigen::VectorXd& x) {
  double v;
  try {
    v = fn(x);
  } catch (const std::exception& e) {
    throw Error(ErrorKind::EvaluationFailed, std::string("probe failed: ") + e.what());
  }
  if (!std::isfinite(v)) throw Error(ErrorKind::EvaluationFailed, "probe returned a non-finite value");
  return v;
}

} // namespace

double fdDirectional(const ScalarField& fn, const Eigen::VectorXd& at,
                     const Eigen::VectorXd& direction, const FDConfig& cfg) {
  if (!(cfg.step > 0.0)) throw Error(ErrorKind::Validation, "finite-difference step must be positive");
  if (cfg.richardsonLevels < 0) throw Error(ErrorKind::Validation, "richardson levels must be >= 0");

  // Richardson tableau over h, h/2, h/4, ...; central differences have even
  // error expansions so column k removes the h^{2k} term.
  const int n = cfg.richardsonLevels + 1;
  std::vector<std::vector<double>> T(n);
  double h = cfg.step;
  for (int i = 0; i < n; ++i, h *= 0.5) {
    double central = (probe(fn, at + h * direction) - probe(fn, at - h * direction)) / (2.0 * h);
    T[i].push_back(central);
    double factor = 4.0;
    for (int k = 1; k <= i; ++k, factor *= 4.0) {
      T[i].push_back(T[i][k - 1] + (T[i][k - 1] - T[i - 1][k - 1]) / (factor - 1.0));
    }
  }
  return T[n - 1][n - 1];
}

double fdDerivative(const ScalarField& fn, const Eigen::VectorXd& at, int index, const FDConfig& cfg) {
  if (index < 0 || index >= at.size()) throw Error(ErrorKind::Validation, "index out of range");
  return fdDirectional(fn, at, Eigen::VectorXd::Unit(at.size(), index), cfg);
}

Eigen::VectorXd fdGradient(const ScalarField& fn, const Eigen::VectorXd& at, const FDConfig& cfg) {
  Eigen::VectorXd g(at.size());
  for (int i = 0; i < at.size(); ++i) g(i) = fdDerivative(fn, at, i, cfg);
  return g;
}

bool Tolerance::accepts(double analytic, double reference) const {
  double err = std::abs(analytic - reference);
  return err <= std::max(absolute, relative * std::abs(reference));
}

} // namespace dck
