#include "dck/geometry.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dck/errors.h"

namespace dck {

const char* backgroundName(Background bg) {
  switch (bg) {
  case Background::Euclidean: return "euclidean";
  case Background::Hyperbolic: return "hyperbolic";
  case Background::Spherical: return "spherical";
  }
  return "unknown";
}

std::optional<Background> parseBackground(const std::string& name) {
  if (name == "euclidean") return Background::Euclidean;
  if (name == "hyperbolic") return Background::Hyperbolic;
  if (name == "spherical") return Background::Spherical;
  return std::nullopt;
}

double inner(const Vec3& u, const Vec3& v, Background bg) {
  if (bg == Background::Hyperbolic) return u.x() * v.x() + u.y() * v.y() - u.z() * v.z();
  return u.dot(v);
}

Vec3 lorentzCross(const Vec3& u, const Vec3& v) {
  Vec3 c = u.cross(v);
  c.z() = -c.z();
  return c;
}

CausalType classify(const Vec3& u, double tolerance) {
  double q = inner(u, u, Background::Hyperbolic);
  if (q < -tolerance) return CausalType::Timelike;
  if (q > tolerance) return CausalType::Spacelike;
  return CausalType::Lightlike;
}

double modelDistance(const Vec3& p, const Vec3& q, Background bg) {
  switch (bg) {
  case Background::Euclidean: return (p - q).norm();
  case Background::Hyperbolic: {
    // (p - q) * (p - q) = 4 sinh^2(d / 2); better conditioned than acosh(-p * q).
    Vec3 diff = p - q;
    double chord2 = std::max(0.0, inner(diff, diff, bg));
    return 2.0 * std::asinh(0.5 * std::sqrt(chord2));
  }
  case Background::Spherical: return std::atan2(p.cross(q).norm(), p.dot(q));
  }
  return 0.0;
}

double triangleAngle(double opposite, double sideA, double sideB, Background bg) {
  double c = 0.0;
  switch (bg) {
  case Background::Euclidean:
    c = (sideA * sideA + sideB * sideB - opposite * opposite) / (2.0 * sideA * sideB);
    break;
  case Background::Hyperbolic:
    c = (std::cosh(sideA) * std::cosh(sideB) - std::cosh(opposite)) /
        (std::sinh(sideA) * std::sinh(sideB));
    break;
  case Background::Spherical:
    c = (std::cos(opposite) - std::cos(sideA) * std::cos(sideB)) /
        (std::sin(sideA) * std::sin(sideB));
    break;
  }
  if (!std::isfinite(c) || c > 1.0 + kCosineClampSlack || c < -1.0 - kCosineClampSlack) {
    std::ostringstream msg;
    msg << "cosine " << c << " for sides (" << opposite << ", " << sideA << ", " << sideB << ")";
    throw Error(ErrorKind::DegenerateTriangle, msg.str());
  }
  return std::acos(std::clamp(c, -1.0, 1.0));
}

std::array<double, 3> triangleAngles(const std::array<double, 3>& l, Background bg) {
  std::array<double, 3> angles{};
  for (int a = 0; a < 3; ++a) {
    angles[a] = triangleAngle(l[(a + 1) % 3], l[a], l[(a + 2) % 3], bg);
  }
  return angles;
}

double triangleArea(const std::array<double, 3>& angles, const std::array<double, 3>& l,
                    Background bg) {
  double area = 0.0;
  switch (bg) {
  case Background::Euclidean: {
    // Kahan's stable form of Heron's formula.
    std::array<double, 3> s = l;
    std::sort(s.begin(), s.end(), std::greater<>());
    double a = s[0], b = s[1], c = s[2];
    double prod = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    area = 0.25 * std::sqrt(std::max(0.0, prod));
    break;
  }
  case Background::Hyperbolic:
    area = std::numbers::pi - (angles[0] + angles[1] + angles[2]);
    break;
  case Background::Spherical:
    area = (angles[0] + angles[1] + angles[2]) - std::numbers::pi;
    break;
  }
  if (!(area > 0.0)) {
    std::ostringstream msg;
    msg << "nonpositive " << backgroundName(bg) << " area " << area;
    throw Error(ErrorKind::DegenerateTriangle, msg.str());
  }
  return area;
}

TriangleValidity validateTriangle(const std::array<double, 3>& l, Background bg) {
  auto fail = [](std::string why) { return TriangleValidity{false, std::move(why)}; };
  for (double x : l) {
    if (!std::isfinite(x) || !(x > 0.0)) return fail("edge length must be positive and finite");
  }
  for (int a = 0; a < 3; ++a) {
    if (!(l[a] < l[(a + 1) % 3] + l[(a + 2) % 3])) return fail("triangle inequality");
  }
  if (bg == Background::Spherical) {
    for (double x : l) {
      if (!(x < std::numbers::pi)) return fail("spherical edge length must be < pi");
    }
    if (!(l[0] + l[1] + l[2] < 2.0 * std::numbers::pi)) return fail("spherical perimeter must be < 2 pi");
  }
  return {};
}

TriangleEmbedding embedTriangle(const std::array<double, 3>& l, Background bg) {
  TriangleValidity v = validateTriangle(l, bg);
  if (!v.valid) throw Error(ErrorKind::DegenerateTriangle, v.violation);

  // Angle at corner 0 between sides l[0] (to corner 1) and l[2] (to corner 2).
  double g0 = triangleAngle(l[1], l[0], l[2], bg);
  double cg = std::cos(g0), sg = std::sin(g0);

  TriangleEmbedding emb;
  emb.background = bg;
  switch (bg) {
  case Background::Euclidean:
    emb.p[0] = Vec3(0.0, 0.0, 0.0);
    emb.p[1] = Vec3(l[0], 0.0, 0.0);
    emb.p[2] = Vec3(l[2] * cg, l[2] * sg, 0.0);
    break;
  case Background::Hyperbolic:
    emb.p[0] = Vec3(0.0, 0.0, 1.0);
    emb.p[1] = Vec3(std::sinh(l[0]), 0.0, std::cosh(l[0]));
    emb.p[2] = Vec3(std::sinh(l[2]) * cg, std::sinh(l[2]) * sg, std::cosh(l[2]));
    break;
  case Background::Spherical:
    emb.p[0] = Vec3(0.0, 0.0, 1.0);
    emb.p[1] = Vec3(std::sin(l[0]), 0.0, std::cos(l[0]));
    emb.p[2] = Vec3(std::sin(l[2]) * cg, std::sin(l[2]) * sg, std::cos(l[2]));
    break;
  }
  return emb;
}

Vec3 unitTangentToward(const Vec3& from, const Vec3& to, Background bg) {
  switch (bg) {
  case Background::Euclidean: return (to - from).normalized();
  case Background::Hyperbolic: {
    Vec3 w = to + inner(from, to, bg) * from;
    return w / std::sqrt(inner(w, w, bg));
  }
  case Background::Spherical: {
    Vec3 w = to - from.dot(to) * from;
    return w.normalized();
  }
  }
  return Vec3::Zero();
}

Vec3 pointAlong(const Vec3& from, const Vec3& to, double t, Background bg) {
  Vec3 w = unitTangentToward(from, to, bg);
  switch (bg) {
  case Background::Euclidean: return from + t * w;
  case Background::Hyperbolic: return std::cosh(t) * from + std::sinh(t) * w;
  case Background::Spherical: return std::cos(t) * from + std::sin(t) * w;
  }
  return from;
}

} // namespace dck
