#pragma once

// Angles, curvatures and their conformal derivatives.

#include <array>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "dck/conformal.h"
#include "dck/metric.h"

namespace dck {

std::array<double, 3> faceAngles(const Triangulation& t, const ConformalData& c, int face);

// K_i = 2 pi - sum of the angles at i.
Eigen::VectorXd vertexCurvatures(const Triangulation& t, const ConformalData& c);

std::vector<double> faceAreas(const Triangulation& t, const ConformalData& c);

// jac(a, b) = d gamma_a / d f_b for local corners a, b of one face.
// Off-diagonal entries:
//   Euclidean   h_ab / l_ab
//   Hyperbolic  tanh^beta(h_ab) / (cosh d_ba sinh l_ab)
//   Spherical   tan(h_ab) / (cos d_ba sin l_ab)
// Diagonal entries use the same edge terms with d_ab in place of d_ba and
// tanh / tan of the length in place of sinh / sin, negated and summed over
// the two edges at a. tanh^beta means (tanh h)^beta, i.e. coth h for spacelike
// centers. Throws ZeroHeight for a spacelike center with a zero height.
Eigen::Matrix3d angleJacobianF(const FacePartials& fp, const FaceDuality& dual, Background bg);
Eigen::Matrix3d angleJacobianF(const Triangulation& t, const ConformalData& c,
                               const DualityStructure& dual, int face);

// Diagonal entry d gamma_a / d f_a written with d_ba (the partial at the far
// end) instead of d_ab. Kept to report how it compares with the verified form.
double angleJacobianDiagonalFarPartial(const FacePartials& fp, const FaceDuality& dual,
                                       Background bg, int a);

struct AreaGradient {
  // d A / d f_k from the angle excess: -sum_a jac(a, k) (hyperbolic),
  // +sum_a jac(a, k) (spherical). This is the authoritative value.
  std::array<double, 3> excess{};
  // Circular-sector form: jac(i,k) w(l_ik) + jac(j,k) w(l_jk) with
  // w = cosh l - 1 (hyperbolic) or 1 - cos l (spherical).
  std::array<double, 3> sector{};
  // Same, with the factor 2 on the second term (hyperbolic only).
  std::array<double, 3> sectorDoubled{};
};

// Not defined for the Euclidean background (throws Validation).
AreaGradient areaGradientF(const std::array<double, 3>& lengths, const Eigen::Matrix3d& jac,
                           Background bg);

// d gamma_a / d f_a rebuilt from the area identity
// (-dA/df_a or +dA/df_a) - jac(b, a) - jac(c, a), using the sector form of dA.
double angleJacobianDiagonalFromArea(const std::array<double, 3>& lengths,
                                     const Eigen::Matrix3d& jac, Background bg, int a);

struct CurvatureSystem {
  std::vector<std::array<double, 3>> angles; // per face, local corners
  Eigen::VectorXd K;
  std::vector<double> areas;
  DualityStructure duality;
  std::vector<Eigen::Matrix3d> faceJacobians;
  Eigen::SparseMatrix<double> jacF;  // rows 3 * face + corner, cols vertices
  Eigen::SparseMatrix<double> jacKU; // d K_i / d u_j
};

CurvatureSystem assembleCurvatureSystem(const Triangulation& t, const ConformalData& c);

// d K_i / d u_j = -sum_faces d gamma_i / d f_j * df_j/du_j.
Eigen::SparseMatrix<double> curvatureJacobianU(const Triangulation& t, const ConformalData& c);
Eigen::SparseMatrix<double> curvatureJacobianU(const Triangulation& t, const ConformalData& c,
                                               const std::vector<Eigen::Matrix3d>& faceJacobians);

double relativeAsymmetry(const Eigen::SparseMatrix<double>& m);

} // namespace dck
