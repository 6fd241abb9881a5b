#include "dck/conformal.h"

#include <cmath>
#include <mutex>
#include <sstream>

#include "dck/errors.h"
#include "dck/quadrature.h"

namespace dck {

namespace {

[[noreturn]] void outOfDomain(const std::string& what) { throw Error(ErrorKind::OutOfDomain, what); }

std::string edgeName(int i, int j) {
  return "edge {" + std::to_string(i) + ", " + std::to_string(j) + "}";
}

// log(cosh u) and log(-sinh u) for u < 0, stable for large and small |u|.
double logCosh(double u) {
  double a = std::abs(u);
  return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

double logMinusSinh(double u) {
  double a = std::abs(u);
  return a + std::log(-std::expm1(-2.0 * a)) - std::log(2.0);
}

// Signed curvature of the background: +1 for the 1 + alpha e^{2f} family,
// -1 for the 1 - alpha e^{2f} family.
double familySign(Background bg) { return bg == Background::Hyperbolic ? 1.0 : -1.0; }

} // namespace

double conformalEdgeLength(Background bg, double alphaI, double alphaJ, double eta, double fI,
                           double fJ) {
  const double xi = alphaI * std::exp(2.0 * fI);
  const double xj = alphaJ * std::exp(2.0 * fJ);
  const double s = eta * std::exp(fI + fJ);
  switch (bg) {
  case Background::Euclidean: {
    double l2 = xi + xj + 2.0 * s;
    if (!(l2 > 0.0)) outOfDomain("squared length " + std::to_string(l2) + " is not positive");
    return std::sqrt(l2);
  }
  case Background::Hyperbolic: {
    if (!(1.0 + xi > 0.0) || !(1.0 + xj > 0.0)) outOfDomain("1 + alpha e^{2f} must be positive");
    double ch = std::sqrt((1.0 + xi) * (1.0 + xj)) + s;
    if (!(ch > 1.0)) outOfDomain("cosh length " + std::to_string(ch) + " must exceed 1");
    return std::acosh(ch);
  }
  case Background::Spherical: {
    if (!(1.0 - xi > 0.0) || !(1.0 - xj > 0.0)) outOfDomain("1 - alpha e^{2f} must be positive");
    double co = std::sqrt((1.0 - xi) * (1.0 - xj)) - s;
    if (!(co > -1.0 && co < 1.0)) outOfDomain("cos length " + std::to_string(co) + " must lie in (-1, 1)");
    return std::acos(co);
  }
  }
  return 0.0;
}

double conformalPartialLength(Background bg, double alphaI, double alphaJ, double eta, double fI,
                              double fJ) {
  const double l = conformalEdgeLength(bg, alphaI, alphaJ, eta, fI, fJ);
  const double xi = alphaI * std::exp(2.0 * fI);
  const double xj = alphaJ * std::exp(2.0 * fJ);
  const double s = eta * std::exp(fI + fJ);
  switch (bg) {
  case Background::Euclidean: return (xi + s) / l;
  case Background::Hyperbolic: {
    double th = (xi * std::sqrt((1.0 + xj) / (1.0 + xi)) + s) / std::sinh(l);
    if (!(std::abs(th) < 1.0)) outOfDomain("|tanh d| = " + std::to_string(std::abs(th)) + " >= 1");
    return std::atanh(th);
  }
  case Background::Spherical: {
    double tn = (xi * std::sqrt((1.0 - xj) / (1.0 - xi)) + s) / std::sin(l);
    return std::atan(tn);
  }
  }
  return 0.0;
}

double edgeLength(const Triangulation& t, const ConformalData& c, int edge) {
  auto [i, j] = t.edge(edge);
  try {
    return conformalEdgeLength(c.background, c.alpha[i], c.alpha[j], c.eta[edge], c.f[i], c.f[j]);
  } catch (const Error& err) {
    throw Error(err.kind(), edgeName(i, j) + ": " + err.detail());
  }
}

double partialLength(const Triangulation& t, const ConformalData& c, int i, int j) {
  int e = t.edgeIndex(i, j);
  try {
    return conformalPartialLength(c.background, c.alpha[i], c.alpha[j], c.eta[e], c.f[i], c.f[j]);
  } catch (const Error& err) {
    throw Error(err.kind(), edgeName(i, j) + ": " + err.detail());
  }
}

std::vector<double> edgeLengths(const Triangulation& t, const ConformalData& c) {
  std::vector<double> l(t.edgeCount());
  for (int e = 0; e < t.edgeCount(); ++e) l[e] = edgeLength(t, c, e);
  return l;
}

PreMetric conformalPreMetric(const Triangulation& t, const ConformalData& c) {
  PreMetric m;
  m.d.resize(t.orientedEdgeCount());
  for (int oe = 0; oe < t.orientedEdgeCount(); ++oe) {
    auto [i, j] = t.orientedEdgeVertices(oe);
    m.d[oe] = partialLength(t, c, i, j);
  }
  return m;
}

std::array<double, 3> faceLengths(const Triangulation& t, const ConformalData& c, int face) {
  const auto& fe = t.faceEdges(face);
  return {edgeLength(t, c, fe[0]), edgeLength(t, c, fe[1]), edgeLength(t, c, fe[2])};
}

FacePartials conformalFacePartials(const Triangulation& t, const ConformalData& c, int face) {
  const Face& f = t.face(face);
  FacePartials fp;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (a != b) fp.d[a][b] = partialLength(t, c, f[a], f[b]);
    }
  }
  return fp;
}

double conformalJacobianCheck(const Triangulation& t, const ConformalData& c, int edge, double step) {
  auto [i, j] = t.edge(edge);
  const double eta = c.eta[edge];
  auto expected = [&](double d) {
    switch (c.background) {
    case Background::Euclidean: return d;
    case Background::Hyperbolic: return std::tanh(d);
    case Background::Spherical: return std::tan(d);
    }
    return d;
  };
  double worst = 0.0;
  for (auto [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
    auto len = [&](double fa) {
      return conformalEdgeLength(c.background, c.alpha[a], c.alpha[b], eta, fa, c.f[b]);
    };
    double fd = (len(c.f[a] + step) - len(c.f[a] - step)) / (2.0 * step);
    double d = conformalPartialLength(c.background, c.alpha[a], c.alpha[b], eta, c.f[a], c.f[b]);
    worst = std::max(worst, std::abs(fd - expected(d)));
  }
  return worst;
}

DomainReport validateConformal(const Triangulation& t, const ConformalData& c) {
  DomainReport report;
  auto issue = [&](std::string where, std::string what) {
    report.issues.push_back({std::move(where), std::move(what)});
  };
  if (static_cast<int>(c.alpha.size()) != t.vertexCount() ||
      static_cast<int>(c.f.size()) != t.vertexCount()) {
    issue("vertices", "alpha/f must have one entry per vertex");
    return report;
  }
  if (static_cast<int>(c.eta.size()) != t.edgeCount()) {
    issue("edges", "eta must have one entry per edge");
    return report;
  }
  if (c.background != Background::Euclidean) {
    const double sign = familySign(c.background);
    for (int v = 0; v < t.vertexCount(); ++v) {
      double x = 1.0 + sign * c.alpha[v] * std::exp(2.0 * c.f[v]);
      if (!(x > 0.0)) {
        issue("vertex " + std::to_string(v),
              sign > 0 ? "1 + alpha e^{2f} must be positive" : "alpha e^{2f} must be below 1");
      }
    }
  }
  if (!report.ok()) return report;

  std::vector<double> lengths(t.edgeCount(), -1.0);
  for (int e = 0; e < t.edgeCount(); ++e) {
    auto [i, j] = t.edge(e);
    try {
      lengths[e] = edgeLength(t, c, e);
      partialLength(t, c, i, j);
      partialLength(t, c, j, i);
    } catch (const Error& err) {
      issue(edgeName(i, j), err.what());
    }
  }
  for (int f = 0; f < t.faceCount(); ++f) {
    const auto& fe = t.faceEdges(f);
    std::array<double, 3> l{lengths[fe[0]], lengths[fe[1]], lengths[fe[2]]};
    if (l[0] < 0 || l[1] < 0 || l[2] < 0) continue;
    TriangleValidity v = validateTriangle(l, c.background);
    if (!v.valid) issue("face " + std::to_string(f), v.violation);
  }
  return report;
}

double dfdu(Background bg, double alpha, double f) {
  if (bg == Background::Euclidean || alpha == 0.0) return 1.0;
  double x = 1.0 + familySign(bg) * alpha * std::exp(2.0 * f);
  if (!(x > 0.0)) outOfDomain("df/du undefined at f = " + std::to_string(f));
  return std::sqrt(x);
}

namespace {

double closedFormU(Background bg, double alpha, double f) {
  if (bg == Background::Euclidean || alpha == 0.0) return f;
  // u = 1/2 log |(g - 1) / (g + 1)| with g = df/du; (g - 1)(g + 1) = +-alpha e^{2f}
  // gives the cancellation-free form below.
  double g = dfdu(bg, alpha, f);
  return f + 0.5 * std::log(std::abs(alpha)) - std::log1p(g);
}

double quadratureMismatch(Background bg, double alpha, double f0, double f1, int points) {
  QuadratureRule rule = gaussLegendreUnit(points);
  double integral = 0.0;
  for (size_t q = 0; q < rule.nodes.size(); ++q) {
    double f = f0 + rule.nodes[q] * (f1 - f0);
    integral += rule.weights[q] / dfdu(bg, alpha, f);
  }
  integral *= (f1 - f0);
  return std::abs((closedFormU(bg, alpha, f1) - closedFormU(bg, alpha, f0)) - integral);
}

// The closed forms are checked against quadrature of du/df once per process,
// on every sign branch, before the first conversion.
void selfCheckClosedForms() {
  static std::once_flag once;
  std::call_once(once, [] {
    const std::pair<Background, double> branches[] = {
        {Background::Hyperbolic, -0.5}, {Background::Hyperbolic, 1.0},
        {Background::Spherical, 0.5}, {Background::Spherical, -1.0}};
    for (auto [bg, alpha] : branches) {
      double err = quadratureMismatch(bg, alpha, -1.5, -0.5, 64);
      if (!(err < 1e-10)) {
        throw Error(ErrorKind::EvaluationFailed, "closed-form u(f) disagrees with quadrature by " + std::to_string(err));
      }
    }
  });
}

} // namespace

double uFromF(Background bg, double alpha, double f) {
  selfCheckClosedForms();
  return closedFormU(bg, alpha, f);
}

double fFromU(Background bg, double alpha, double u) {
  if (bg == Background::Euclidean || alpha == 0.0) return u;
  if (!(u < 0.0)) outOfDomain("u = " + std::to_string(u) + " must be negative when alpha != 0");
  const double halfLogAlpha = 0.5 * std::log(std::abs(alpha));
  // g = -tanh u when g < 1, g = -coth u when g > 1.
  const bool gBelowOne = (bg == Background::Hyperbolic) ? (alpha < 0.0) : (alpha > 0.0);
  if (gBelowOne) return -logCosh(u) - halfLogAlpha;
  return -logMinusSinh(u) - halfLogAlpha;
}

std::vector<double> uFromF(const ConformalData& c) {
  std::vector<double> u(c.f.size());
  for (size_t v = 0; v < u.size(); ++v) u[v] = uFromF(c.background, c.alpha[v], c.f[v]);
  return u;
}

std::vector<double> fFromU(const ConformalData& c, const std::vector<double>& u) {
  std::vector<double> f(u.size());
  for (size_t v = 0; v < u.size(); ++v) {
    try {
      f[v] = fFromU(c.background, c.alpha[v], u[v]);
    } catch (const Error& err) {
      throw Error(err.kind(), "vertex " + std::to_string(v) + ": " + err.detail());
    }
  }
  return f;
}

double uClosedFormQuadratureError(Background bg, double alpha, double f0, double f1, int points) {
  return quadratureMismatch(bg, alpha, f0, f1, points);
}

} // namespace dck
