#include "dck/metric.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "dck/errors.h"

namespace dck {

namespace {

// log(cosh(x)) without overflow for large |x|.
double logCosh(double x) {
  double ax = std::abs(x);
  return ax + std::log1p(std::exp(-2.0 * ax)) - std::log(2.0);
}

double signOf(double x) { return (x > 0.0) - (x < 0.0); }

int localIndex(const Face& f, int v) {
  for (int a = 0; a < 3; ++a) {
    if (f[a] == v) return a;
  }
  return -1;
}

// Normal of the plane (or Klein-model line) through edge center c
// perpendicular to the edge from p_a to p_b: points x on it satisfy x * n = 0.
Vec3 perpendicularNormal(const Vec3& c, const Vec3& pa, const Vec3& pb, Background bg) {
  return inner(c, pa, bg) * pb - inner(c, pb, bg) * pa;
}

} // namespace

std::array<double, 3> FacePartials::lengths() const {
  return {length(0, 1), length(1, 2), length(2, 0)};
}

FacePartials facePartials(const Triangulation& t, const PreMetric& metric, int face) {
  const Face& f = t.face(face);
  FacePartials fp;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (a != b) fp.d[a][b] = metric.partial(t, f[a], f[b]);
    }
  }
  return fp;
}

std::vector<double> lengthsFromPremetric(const Triangulation& t, const PreMetric& metric,
                                         Background bg) {
  std::vector<double> lengths(t.edgeCount());
  for (int e = 0; e < t.edgeCount(); ++e) lengths[e] = metric.d[2 * e] + metric.d[2 * e + 1];

  std::ostringstream bad;
  int badCount = 0;
  for (int f = 0; f < t.faceCount(); ++f) {
    const auto& fe = t.faceEdges(f);
    TriangleValidity v = validateTriangle({lengths[fe[0]], lengths[fe[1]], lengths[fe[2]]}, bg);
    if (!v.valid) {
      bad << (badCount++ ? "; " : "") << "face " << f << " (" << v.violation << ")";
    }
  }
  if (badCount > 0) throw Error(ErrorKind::DegenerateFace, bad.str());
  return lengths;
}

double compatibilityResidual(const FacePartials& fp, Background bg) {
  const auto& d = fp.d;
  switch (bg) {
  case Background::Euclidean: {
    double lhs = d[0][1] * d[0][1] + d[1][2] * d[1][2] + d[2][0] * d[2][0];
    double rhs = d[1][0] * d[1][0] + d[2][1] * d[2][1] + d[0][2] * d[0][2];
    return lhs - rhs;
  }
  case Background::Hyperbolic: {
    double lhs = logCosh(d[0][1]) + logCosh(d[1][2]) + logCosh(d[2][0]);
    double rhs = logCosh(d[1][0]) + logCosh(d[2][1]) + logCosh(d[0][2]);
    return lhs - rhs;
  }
  case Background::Spherical: {
    std::array<double, 3> left{std::cos(d[0][1]), std::cos(d[1][2]), std::cos(d[2][0])};
    std::array<double, 3> right{std::cos(d[1][0]), std::cos(d[2][1]), std::cos(d[0][2])};
    for (double c : left) {
      if (std::abs(c) < 1e-12) throw Error(ErrorKind::SphericalCenterUndefined, "cos(d) vanishes");
    }
    for (double c : right) {
      if (std::abs(c) < 1e-12) throw Error(ErrorKind::SphericalCenterUndefined, "cos(d) vanishes");
    }
    double signL = signOf(left[0]) * signOf(left[1]) * signOf(left[2]);
    double signR = signOf(right[0]) * signOf(right[1]) * signOf(right[2]);
    if (signL != signR) return std::numeric_limits<double>::infinity();
    double lhs = 0.0, rhs = 0.0;
    for (int a = 0; a < 3; ++a) {
      lhs += std::log(std::abs(left[a]));
      rhs += std::log(std::abs(right[a]));
    }
    return lhs - rhs;
  }
  }
  return 0.0;
}

MetricCertificate certifyMetric(const Triangulation& t, const PreMetric& metric, Background bg) {
  MetricCertificate cert;
  cert.residuals.resize(t.faceCount());
  for (int f = 0; f < t.faceCount(); ++f) {
    cert.residuals[f] = compatibilityResidual(facePartials(t, metric, f), bg);
    cert.maxResidual = std::max(cert.maxResidual, std::abs(cert.residuals[f]));
  }
  return cert;
}

Vec3 edgeCenter(const FacePartials& fp, const TriangleEmbedding& emb, int a, int b) {
  return pointAlong(emb.p[a], emb.p[b], fp.d[a][b], emb.background);
}

FaceCenter faceCenter(const FacePartials& fp, const TriangleEmbedding& emb) {
  const Background bg = emb.background;
  const auto& p = emb.p;
  std::array<Vec3, 3> c;
  for (int a = 0; a < 3; ++a) c[a] = edgeCenter(fp, emb, a, (a + 1) % 3);

  FaceCenter out;
  if (bg == Background::Euclidean) {
    Eigen::Matrix2d m;
    Eigen::Vector2d rhs;
    Eigen::Vector2d t01 = (p[1] - p[0]).head<2>(), t12 = (p[2] - p[1]).head<2>();
    m.row(0) = t01.transpose();
    m.row(1) = t12.transpose();
    rhs << c[0].head<2>().dot(t01), c[1].head<2>().dot(t12);
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(m);
    double smin = svd.singularValues()(1);
    if (!(smin > 0.0) || svd.singularValues()(0) / smin > kConditionLimit) {
      throw Error(ErrorKind::IllConditioned, "edge perpendiculars are nearly parallel");
    }
    Eigen::Vector2d x = m.partialPivLu().solve(rhs);
    out.point = Vec3(x(0), x(1), 0.0);
    Eigen::Vector2d t20 = (p[0] - p[2]).head<2>();
    out.residual = std::abs((x - c[2].head<2>()).dot(t20)) / t20.norm();
    return out;
  }

  std::array<Vec3, 3> n;
  for (int a = 0; a < 3; ++a) n[a] = perpendicularNormal(c[a], p[a], p[(a + 1) % 3], bg);

  if (bg == Background::Hyperbolic) {
    Vec3 u = lorentzCross(n[0], n[1]);
    double q = inner(u, u, bg);
    if (std::abs(q) < kLightlikeTolerance * u.squaredNorm()) {
      throw Error(ErrorKind::LightlikeCenter, "face center lies on the light cone");
    }
    if (q < 0.0) {
      u /= std::sqrt(-q);
      out.beta = 1;
    } else {
      u /= std::sqrt(q);
      out.beta = -1;
    }
    // Representative in the Klein chart z > 0 (spacelike centers are projective).
    if (u.z() < 0.0 || (u.z() == 0.0 && (u.x() < 0.0 || (u.x() == 0.0 && u.y() < 0.0)))) u = -u;
    out.point = u;
  } else {
    Vec3 u = n[0].cross(n[1]).normalized();
    if (u.dot(p[0] + p[1] + p[2]) < 0.0) u = -u;
    out.point = u;
  }
  out.residual = std::abs(inner(n[2].normalized(), out.point, bg));
  return out;
}

std::array<double, 3> edgeHeights(const FacePartials& fp, const TriangleEmbedding& emb,
                                  const FaceCenter& center) {
  const Background bg = emb.background;
  const auto& p = emb.p;
  const Vec3& C = center.point;
  std::array<double, 3> h{};
  for (int a = 0; a < 3; ++a) {
    int b = (a + 1) % 3, k = (a + 2) % 3;
    Vec3 c = edgeCenter(fp, emb, a, b);
    switch (bg) {
    case Background::Euclidean: {
      Vec3 t = p[b] - p[a];
      Vec3 normal(-t.y(), t.x(), 0.0);
      normal.normalize();
      if (normal.dot(p[k] - p[a]) < 0.0) normal = -normal;
      h[a] = (C - c).dot(normal);
      break;
    }
    case Background::Hyperbolic: {
      Vec3 e = lorentzCross(p[a], p[b]);
      double side = signOf(inner(e, C, bg)) * signOf(inner(e, p[k], bg));
      if (center.beta == 1) {
        h[a] = side * modelDistance(c, C, bg);
      } else {
        // Distance to the polar geodesic C^perp. The extra sign makes the
        // result independent of the projective representative of C.
        double s = inner(c, C, bg);
        h[a] = side * signOf(-s) * std::asinh(std::abs(s));
      }
      break;
    }
    case Background::Spherical: {
      Vec3 e = p[a].cross(p[b]);
      double side = signOf(e.dot(C)) * signOf(e.dot(p[k]));
      h[a] = side * modelDistance(c, C, bg);
      break;
    }
    }
  }
  return h;
}

FaceDuality faceDuality(const FacePartials& fp, Background bg) {
  FaceDuality fd;
  fd.embedding = embedTriangle(fp.lengths(), bg);
  for (int a = 0; a < 3; ++a) fd.edgeCenters[a] = edgeCenter(fp, fd.embedding, a, (a + 1) % 3);
  fd.center = faceCenter(fp, fd.embedding);
  fd.heights = edgeHeights(fp, fd.embedding, fd.center);
  return fd;
}

double DualityStructure::maxConcurrencyResidual() const {
  double r = 0.0;
  for (const auto& fd : faces) r = std::max(r, fd.center.residual);
  return r;
}

double DualityStructure::height(const Triangulation& t, int f, int i, int j) const {
  const Face& face = t.face(f);
  int a = localIndex(face, i), b = localIndex(face, j);
  if (a < 0 || b < 0 || a == b) throw Error(ErrorKind::Validation, "edge not in face");
  int local = ((a + 1) % 3 == b) ? a : b;
  return faces[f].heights[local];
}

DualityStructure buildDuality(const Triangulation& t, const PreMetric& metric, Background bg) {
  DualityStructure ds;
  ds.background = bg;
  ds.faces.reserve(t.faceCount());
  for (int f = 0; f < t.faceCount(); ++f) {
    FaceDuality fd = faceDuality(facePartials(t, metric, f), bg);
    fd.embedding.face = f;
    fd.embedding.vertices = t.face(f);
    ds.faces.push_back(std::move(fd));
  }
  return ds;
}

} // namespace dck
