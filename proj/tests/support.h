#pragma once

// Shared meshes and sampling helpers for the unit and acceptance tests.

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "dck/conformal.h"
#include "dck/errors.h"
#include "dck/metric.h"
#include "dck/mesh.h"

namespace dck::testing {

inline std::vector<Face> tetrahedronFaces() { return {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}}; }

inline std::vector<Face> torus7Faces() {
  std::vector<Face> faces;
  for (int i = 0; i < 7; ++i) {
    faces.push_back({i, (i + 1) % 7, (i + 3) % 7});
    faces.push_back({i, (i + 3) % 7, (i + 2) % 7});
  }
  return faces;
}

inline std::vector<Face> octahedronFaces() {
  return {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4}, {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
}

// Connected sum of two 7-vertex tori, reduced to 10 vertices by flips and an
// edge contraction.
inline std::vector<Face> genus2Faces() {
  return {{0, 7, 3}, {1, 0, 9}, {1, 2, 4}, {1, 4, 3}, {1, 7, 5}, {1, 8, 0}, {2, 0, 8}, {2, 3, 5},
          {2, 5, 4}, {3, 2, 9}, {3, 4, 6}, {3, 6, 5}, {3, 7, 8}, {3, 8, 1}, {4, 0, 6}, {4, 5, 0},
          {5, 6, 1}, {6, 0, 2}, {6, 2, 1}, {7, 0, 5}, {7, 1, 9}, {7, 9, 8}, {9, 0, 3}, {9, 2, 8}};
}

inline ConformalData uniformData(const Triangulation& t, Background bg, double alpha, double eta,
                                 double f) {
  ConformalData c;
  c.background = bg;
  c.alpha.assign(t.vertexCount(), alpha);
  c.eta.assign(t.edgeCount(), eta);
  c.f.assign(t.vertexCount(), f);
  return c;
}

// One triangle of a conformal structure, described locally: corner a has
// alpha[a], f[a]; local edge a (corners a, a + 1) has eta[a].
struct LocalFace {
  Background bg;
  std::array<double, 3> alpha, eta, f;

  std::array<double, 3> lengths(const std::array<double, 3>& ff) const {
    std::array<double, 3> l;
    for (int a = 0; a < 3; ++a) {
      int b = (a + 1) % 3;
      l[a] = conformalEdgeLength(bg, alpha[a], alpha[b], eta[a], ff[a], ff[b]);
    }
    return l;
  }
  std::array<double, 3> lengths() const { return lengths(f); }

  FacePartials partials() const {
    FacePartials fp;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        if (a == b) continue;
        int e = ((a + 1) % 3 == b) ? a : b;
        fp.d[a][b] = conformalPartialLength(bg, alpha[a], alpha[b], eta[e], f[a], f[b]);
      }
    }
    return fp;
  }
};

// Draws alpha in [-0.5, 1.5], eta in [0.3, 2], f in [-0.5, 0.5] and keeps the
// face if lengths, partials, the triangle and its duality structure are valid.
inline std::optional<LocalFace> sampleFace(Background bg, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> A(-0.5, 1.5), E(0.3, 2.0), F(-0.5, 0.5);
  LocalFace lf{bg, {A(rng), A(rng), A(rng)}, {E(rng), E(rng), E(rng)}, {F(rng), F(rng), F(rng)}};
  try {
    auto l = lf.lengths();
    if (!validateTriangle(l, bg).valid) return std::nullopt;
    FacePartials fp = lf.partials();
    faceDuality(fp, bg);
  } catch (const Error&) {
    return std::nullopt;
  }
  return lf;
}

inline double centralDifference(const std::function<double(double)>& g, double x, double h = 1e-5) {
  return (g(x + h) - g(x - h)) / (2.0 * h);
}

} // namespace dck::testing
