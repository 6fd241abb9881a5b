#pragma once

// Constant-curvature triangle primitives.
//
// Model spaces used throughout the library:
//   Euclidean   points (x, y, 0) in the plane z = 0
//   Hyperbolic  hyperboloid model, u * u = -1 with u_3 > 0, where
//               u * v = u1 v1 + u2 v2 - u3 v3
//   Spherical   unit vectors of R^3 with the ordinary dot product

#include <array>
#include <optional>
#include <string>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace dck {

using Vec3 = Eigen::Vector3d;

enum class Background { Euclidean, Hyperbolic, Spherical };

const char* backgroundName(Background bg);
std::optional<Background> parseBackground(const std::string& name);

// Lorentzian product for Hyperbolic, ordinary dot product otherwise.
double inner(const Vec3& u, const Vec3& v, Background bg);

// Lorentzian cross product u (x) v = J (u x v); *-orthogonal to both inputs.
Vec3 lorentzCross(const Vec3& u, const Vec3& v);

enum class CausalType { Timelike, Lightlike, Spacelike };
CausalType classify(const Vec3& u, double tolerance = 0.0);

// Model distance between two points of the background (both on the model
// surface). Hyperbolic uses cosh d = -p * q, spherical cos d = p . q.
double modelDistance(const Vec3& p, const Vec3& q, Background bg);

// Values of the law-of-cosines cosine this far outside [-1, 1] are clamped;
// anything beyond is a degenerate triangle.
inline constexpr double kCosineClampSlack = 1e-9;

// Angle opposite `opposite`, between the sides `sideA` and `sideB`.
double triangleAngle(double opposite, double sideA, double sideB, Background bg);

// Angles at the three corners of a triangle with lengths[a] the side joining
// corner a and corner a+1 (mod 3).
std::array<double, 3> triangleAngles(const std::array<double, 3>& lengths, Background bg);

// Euclidean: Heron. Hyperbolic: pi - sum. Spherical: sum - pi.
double triangleArea(const std::array<double, 3>& angles, const std::array<double, 3>& lengths,
                    Background bg);

struct TriangleValidity {
  bool valid = true;
  std::string violation; // empty when valid
};

TriangleValidity validateTriangle(const std::array<double, 3>& lengths, Background bg);

// Isometric placement of one triangle in the model. Corner 0 sits at the base
// point (origin / (0,0,1) / north pole), corner 1 along the +x direction and
// corner 2 in the upper half (det(p0, p1, p2) > 0 for the curved models).
struct TriangleEmbedding {
  Background background = Background::Euclidean;
  std::array<Vec3, 3> p;
  int face = -1;
  std::array<int, 3> vertices{-1, -1, -1};
};

TriangleEmbedding embedTriangle(const std::array<double, 3>& lengths, Background bg);

// Unit tangent at `from` pointing toward `to` (Gram-Schmidt in the background
// product), so that cosh(t) from + sinh(t) w (or cos/sin) runs along the
// geodesic by arclength. Euclidean returns the unit direction.
Vec3 unitTangentToward(const Vec3& from, const Vec3& to, Background bg);

// Point at signed distance t from `from` along the geodesic toward `to`.
Vec3 pointAlong(const Vec3& from, const Vec3& to, double t, Background bg);

} // namespace dck
