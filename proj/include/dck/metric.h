#pragma once

// Pre-metrics (signed partial edge lengths on oriented edges), the per-face
// compatibility condition that makes a pre-metric a discrete metric, and the
// duality structure a metric induces: edge centers, face centers and signed
// edge heights.

#include <array>
#include <vector>

#include "dck/geometry.h"
#include "dck/mesh.h"

namespace dck {

inline constexpr double kCompatibilityTolerance = 1e-10;
inline constexpr double kLightlikeTolerance = 1e-10;
inline constexpr double kConditionLimit = 1e12;

// d indexed by oriented edge id (see Triangulation::orientedEdge).
struct PreMetric {
  std::vector<double> d;

  double partial(const Triangulation& t, int i, int j) const { return d[t.orientedEdge(i, j)]; }
};

// Partial lengths of one face in local corner order: d[a][b] is the partial
// length of the oriented edge from corner a to corner b (a != b).
struct FacePartials {
  std::array<std::array<double, 3>, 3> d{};

  double length(int a, int b) const { return d[a][b] + d[b][a]; }
  // lengths[a] joins corner a and corner a + 1.
  std::array<double, 3> lengths() const;
};

FacePartials facePartials(const Triangulation& t, const PreMetric& metric, int face);

// l_e = d_ij + d_ji. Throws Error(DegenerateFace) listing every face that
// fails validateTriangle (or any nonpositive length).
std::vector<double> lengthsFromPremetric(const Triangulation& t, const PreMetric& metric,
                                         Background bg);

// Euclidean: LHS - RHS of the sum-of-squares identity. Hyperbolic/spherical:
// log LHS - log RHS of the cosh / cos product identity. Zero iff the edge
// perpendiculars are concurrent. Spherical throws SphericalCenterUndefined when
// a cos(d) vanishes and returns +inf if the two products differ in sign.
double compatibilityResidual(const FacePartials& fp, Background bg);

struct MetricCertificate {
  std::vector<double> residuals; // one per face
  double maxResidual = 0.0;
  bool isMetric(double tolerance = kCompatibilityTolerance) const { return maxResidual <= tolerance; }
};

MetricCertificate certifyMetric(const Triangulation& t, const PreMetric& metric, Background bg);

// Edge center on local edge (a, b): signed distance d[a][b] from p_a toward p_b.
Vec3 edgeCenter(const FacePartials& fp, const TriangleEmbedding& emb, int a, int b);

struct FaceCenter {
  Vec3 point = Vec3::Zero();
  int beta = 1;             // -1 only for spacelike hyperbolic centers
  double residual = 0.0;    // distance of the center from the third perpendicular
};

// Throws LightlikeCenter (hyperbolic) or IllConditioned (Euclidean).
FaceCenter faceCenter(const FacePartials& fp, const TriangleEmbedding& emb);

// heights[a] belongs to local edge (a, a + 1). Positive when the center is on
// the same side of the edge as the opposite corner.
std::array<double, 3> edgeHeights(const FacePartials& fp, const TriangleEmbedding& emb,
                                  const FaceCenter& center);

struct FaceDuality {
  TriangleEmbedding embedding;
  std::array<Vec3, 3> edgeCenters; // local edge a = (a, a + 1)
  FaceCenter center;
  std::array<double, 3> heights{};
};

FaceDuality faceDuality(const FacePartials& fp, Background bg);

struct DualityStructure {
  Background background = Background::Euclidean;
  std::vector<FaceDuality> faces;

  double maxConcurrencyResidual() const;
  // Height of edge {i, j} as seen from face f.
  double height(const Triangulation& t, int f, int i, int j) const;
};

DualityStructure buildDuality(const Triangulation& t, const PreMetric& metric, Background bg);

} // namespace dck
