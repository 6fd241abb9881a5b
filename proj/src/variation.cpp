#include "dck/variation.h"

#include <cmath>
#include <numbers>

#include <Eigen/SparseCore>

#include "dck/errors.h"

namespace dck {

namespace {

// tanh^beta(h) for hyperbolic, tan(h) spherical, h itself Euclidean.
double heightTerm(double h, int beta, Background bg) {
  switch (bg) {
  case Background::Euclidean: return h;
  case Background::Hyperbolic:
    if (beta == 1) return std::tanh(h);
    if (h == 0.0) throw Error(ErrorKind::ZeroHeight, "spacelike center with zero edge height");
    return 1.0 / std::tanh(h);
  case Background::Spherical: return std::tan(h);
  }
  return h;
}

// Height of the local edge joining corners a and b.
double localHeight(const FaceDuality& dual, int a, int b) {
  return dual.heights[((a + 1) % 3 == b) ? a : b];
}

// Edge term shared by every entry: T(h_ab) / (g(d) s(l_ab)) where d is the
// partial selected by the caller, g = 1 / cosh / cos and s = l / sinh / sin
// (or tanh / tan for the diagonal).
double edgeTerm(const FacePartials& fp, const FaceDuality& dual, Background bg, int a, int b,
                double partial, bool diagonal) {
  double l = fp.length(a, b);
  double T = heightTerm(localHeight(dual, a, b), dual.center.beta, bg);
  switch (bg) {
  case Background::Euclidean: return T / l;
  case Background::Hyperbolic:
    return T / (std::cosh(partial) * (diagonal ? std::tanh(l) : std::sinh(l)));
  case Background::Spherical:
    return T / (std::cos(partial) * (diagonal ? std::tan(l) : std::sin(l)));
  }
  return 0.0;
}

double sectorWeight(double l, Background bg) {
  return bg == Background::Hyperbolic ? std::cosh(l) - 1.0 : 1.0 - std::cos(l);
}

double localLength(const std::array<double, 3>& lengths, int a, int b) {
  return lengths[((a + 1) % 3 == b) ? a : b];
}

} // namespace

std::array<double, 3> faceAngles(const Triangulation& t, const ConformalData& c, int face) {
  return triangleAngles(faceLengths(t, c, face), c.background);
}

Eigen::VectorXd vertexCurvatures(const Triangulation& t, const ConformalData& c) {
  Eigen::VectorXd K = Eigen::VectorXd::Constant(t.vertexCount(), 2.0 * std::numbers::pi);
  for (int f = 0; f < t.faceCount(); ++f) {
    auto g = faceAngles(t, c, f);
    for (int a = 0; a < 3; ++a) K(t.face(f)[a]) -= g[a];
  }
  return K;
}

std::vector<double> faceAreas(const Triangulation& t, const ConformalData& c) {
  std::vector<double> areas(t.faceCount());
  for (int f = 0; f < t.faceCount(); ++f) {
    auto l = faceLengths(t, c, f);
    areas[f] = triangleArea(triangleAngles(l, c.background), l, c.background);
  }
  return areas;
}

Eigen::Matrix3d angleJacobianF(const FacePartials& fp, const FaceDuality& dual, Background bg) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (a != b) m(a, b) = edgeTerm(fp, dual, bg, a, b, fp.d[b][a], false);
    }
    int b = (a + 1) % 3, c = (a + 2) % 3;
    m(a, a) = -edgeTerm(fp, dual, bg, a, b, fp.d[a][b], true) -
              edgeTerm(fp, dual, bg, a, c, fp.d[a][c], true);
  }
  return m;
}

Eigen::Matrix3d angleJacobianF(const Triangulation& t, const ConformalData& c,
                               const DualityStructure& dual, int face) {
  return angleJacobianF(conformalFacePartials(t, c, face), dual.faces[face], c.background);
}

double angleJacobianDiagonalFarPartial(const FacePartials& fp, const FaceDuality& dual,
                                       Background bg, int a) {
  int b = (a + 1) % 3, c = (a + 2) % 3;
  return -edgeTerm(fp, dual, bg, a, b, fp.d[b][a], true) -
         edgeTerm(fp, dual, bg, a, c, fp.d[c][a], true);
}

AreaGradient areaGradientF(const std::array<double, 3>& lengths, const Eigen::Matrix3d& jac,
                           Background bg) {
  if (bg == Background::Euclidean) {
    throw Error(ErrorKind::Validation, "area gradient is only defined for curved backgrounds");
  }
  const double sign = (bg == Background::Hyperbolic) ? -1.0 : 1.0;
  AreaGradient g;
  for (int k = 0; k < 3; ++k) {
    int i = (k + 1) % 3, j = (k + 2) % 3;
    g.excess[k] = sign * jac.col(k).sum();
    double wi = sectorWeight(localLength(lengths, i, k), bg);
    double wj = sectorWeight(localLength(lengths, j, k), bg);
    g.sector[k] = jac(i, k) * wi + jac(j, k) * wj;
    g.sectorDoubled[k] = jac(i, k) * wi + 2.0 * jac(j, k) * wj;
  }
  return g;
}

double angleJacobianDiagonalFromArea(const std::array<double, 3>& lengths,
                                     const Eigen::Matrix3d& jac, Background bg, int a) {
  AreaGradient g = areaGradientF(lengths, jac, bg);
  const double sign = (bg == Background::Hyperbolic) ? -1.0 : 1.0;
  int b = (a + 1) % 3, c = (a + 2) % 3;
  return sign * g.sector[a] - jac(b, a) - jac(c, a);
}

Eigen::SparseMatrix<double> curvatureJacobianU(const Triangulation& t, const ConformalData& c,
                                               const std::vector<Eigen::Matrix3d>& faceJacobians) {
  const int n = t.vertexCount();
  std::vector<double> scale(n);
  for (int v = 0; v < n; ++v) scale[v] = dfdu(c.background, c.alpha[v], c.f[v]);

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(9 * t.faceCount());
  for (int f = 0; f < t.faceCount(); ++f) {
    const Face& face = t.face(f);
    const Eigen::Matrix3d& m = faceJacobians[f];
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        triplets.emplace_back(face[a], face[b], -m(a, b) * scale[face[b]]);
      }
    }
  }
  Eigen::SparseMatrix<double> J(n, n);
  J.setFromTriplets(triplets.begin(), triplets.end());
  return J;
}

Eigen::SparseMatrix<double> curvatureJacobianU(const Triangulation& t, const ConformalData& c) {
  PreMetric metric = conformalPreMetric(t, c);
  DualityStructure dual = buildDuality(t, metric, c.background);
  std::vector<Eigen::Matrix3d> blocks(t.faceCount());
  for (int f = 0; f < t.faceCount(); ++f) {
    blocks[f] = angleJacobianF(facePartials(t, metric, f), dual.faces[f], c.background);
  }
  return curvatureJacobianU(t, c, blocks);
}

CurvatureSystem assembleCurvatureSystem(const Triangulation& t, const ConformalData& c) {
  CurvatureSystem sys;
  PreMetric metric = conformalPreMetric(t, c);
  sys.duality = buildDuality(t, metric, c.background);
  sys.K = Eigen::VectorXd::Constant(t.vertexCount(), 2.0 * std::numbers::pi);
  sys.angles.resize(t.faceCount());
  sys.areas.resize(t.faceCount());
  sys.faceJacobians.resize(t.faceCount());

  std::vector<Eigen::Triplet<double>> jf;
  for (int f = 0; f < t.faceCount(); ++f) {
    auto l = faceLengths(t, c, f);
    sys.angles[f] = triangleAngles(l, c.background);
    sys.areas[f] = triangleArea(sys.angles[f], l, c.background);
    for (int a = 0; a < 3; ++a) sys.K(t.face(f)[a]) -= sys.angles[f][a];
    sys.faceJacobians[f] = angleJacobianF(facePartials(t, metric, f), sys.duality.faces[f], c.background);
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) jf.emplace_back(3 * f + a, t.face(f)[b], sys.faceJacobians[f](a, b));
    }
  }
  sys.jacF.resize(3 * t.faceCount(), t.vertexCount());
  sys.jacF.setFromTriplets(jf.begin(), jf.end());
  sys.jacKU = curvatureJacobianU(t, c, sys.faceJacobians);
  return sys;
}

double relativeAsymmetry(const Eigen::SparseMatrix<double>& m) {
  Eigen::MatrixXd d = Eigen::MatrixXd(m);
  double norm = d.cwiseAbs().rowwise().sum().maxCoeff();
  if (norm == 0.0) return 0.0;
  return (d - d.transpose()).cwiseAbs().rowwise().sum().maxCoeff() / norm;
}

} // namespace dck
