#pragma once

// Finite-difference reference derivatives. Independent of every analytic
// formula in the library; used by tests and by check-derivatives.

#include <functional>

#include <Eigen/Core>

namespace dck {

struct FDConfig {
  double step = 1e-5;
  int richardsonLevels = 2; // 0 = plain central difference
};

using ScalarField = std::function<double(const Eigen::VectorXd&)>;

// d fn / d x_index at `at`. Any exception or non-finite value from a probe
// becomes Error(EvaluationFailed).
double fdDerivative(const ScalarField& fn, const Eigen::VectorXd& at, int index,
                    const FDConfig& cfg = {});

// Directional derivative along `direction` (not normalized).
double fdDirectional(const ScalarField& fn, const Eigen::VectorXd& at,
                     const Eigen::VectorXd& direction, const FDConfig& cfg = {});

Eigen::VectorXd fdGradient(const ScalarField& fn, const Eigen::VectorXd& at, const FDConfig& cfg = {});

// Passes when |analytic - reference| <= max(absolute, relative * |reference|).
struct Tolerance {
  double absolute = 1e-7;
  double relative = 1e-5;
  bool accepts(double analytic, double reference) const;
};

} // namespace dck
