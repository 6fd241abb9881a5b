#pragma once

// The conformal families C_{alpha, eta}: edge lengths and partial lengths
// generated by per-vertex conformal factors f, and the per-vertex change of
// variables u(f) that makes the curvature map a gradient.

#include <string>
#include <vector>

#include "dck/geometry.h"
#include "dck/mesh.h"
#include "dck/metric.h"

namespace dck {

struct ConformalData {
  Background background = Background::Euclidean;
  std::vector<double> alpha; // per vertex
  std::vector<double> eta;   // per edge
  std::vector<double> f;     // per vertex

  ConformalData withFactors(std::vector<double> factors) const {
    ConformalData c = *this;
    c.f = std::move(factors);
    return c;
  }
};

// Scalar kernels. Throw Error(OutOfDomain).
double conformalEdgeLength(Background bg, double alphaI, double alphaJ, double eta, double fI,
                           double fJ);
// Partial length d_ij at the i end.
double conformalPartialLength(Background bg, double alphaI, double alphaJ, double eta, double fI,
                              double fJ);

double edgeLength(const Triangulation& t, const ConformalData& c, int edge);
double partialLength(const Triangulation& t, const ConformalData& c, int i, int j);

std::vector<double> edgeLengths(const Triangulation& t, const ConformalData& c);
PreMetric conformalPreMetric(const Triangulation& t, const ConformalData& c);

// Local lengths of face f, lengths[a] joining corner a and a + 1.
std::array<double, 3> faceLengths(const Triangulation& t, const ConformalData& c, int face);
FacePartials conformalFacePartials(const Triangulation& t, const ConformalData& c, int face);

// d/df_i l_ij must equal d_ij, tanh d_ij or tan d_ij. Returns the larger of the
// two central-difference mismatches (one per end of the edge).
double conformalJacobianCheck(const Triangulation& t, const ConformalData& c, int edge,
                              double step = 1e-5);

struct DomainIssue {
  std::string where; // "vertex 3", "edge {0, 2}", "face 5"
  std::string what;
};

struct DomainReport {
  std::vector<DomainIssue> issues;
  bool ok() const { return issues.empty(); }
};

// Checks array sizes, the square-root domains of the curved families, every
// edge length and every face.
DomainReport validateConformal(const Triangulation& t, const ConformalData& c);

// --- u <-> f ----------------------------------------------------------------

// df/du = 1 (Euclidean), sqrt(1 + alpha e^{2f}) (hyperbolic),
// sqrt(1 - alpha e^{2f}) (spherical).
double dfdu(Background bg, double alpha, double f);
double uFromF(Background bg, double alpha, double f);
double fFromU(Background bg, double alpha, double u);

std::vector<double> uFromF(const ConformalData& c);
std::vector<double> fFromU(const ConformalData& c, const std::vector<double>& u);

// Compares uFromF(f1) - uFromF(f0) with a Gauss-Legendre quadrature of
// du/df = 1 / dfdu over [f0, f1]; returns the absolute mismatch.
double uClosedFormQuadratureError(Background bg, double alpha, double f0, double f1,
                                  int points = 64);

} // namespace dck
