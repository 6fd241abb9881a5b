#include <doctest.h>

#include <numbers>
#include <random>

#include "dck/errors.h"
#include "dck/fd_oracle.h"
#include "dck/solver.h"
#include "dck/variation.h"
#include "support.h"

using namespace dck;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;
const auto E = Background::Euclidean;
const auto H = Background::Hyperbolic;
const auto S = Background::Spherical;

std::vector<double> randomF(int n, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-radius, radius);
  std::vector<double> f(n);
  for (auto& x : f) x = U(rng);
  return f;
}

std::vector<double> add(std::vector<double> a, const std::vector<double>& b, double s = 1.0) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
  return a;
}
} // namespace

TEST_CASE("functional at the base point") {
  auto t = Triangulation::build(testing::torus7Faces());
  auto c = testing::uniformData(t, E, 0, 1, 0);
  c.f = randomF(7, 0.2, 1);
  auto u = uFromF(c);
  double sum = 0;
  for (double x : u) sum += x;
  CHECK(evaluateFunctional(t, c, u) == Approx(2 * pi * sum).epsilon(1e-15));
}

TEST_CASE("functional is path independent") {
  auto t = Triangulation::build(testing::torus7Faces());
  auto c = testing::uniformData(t, E, 0, 1, 0);
  auto u0 = randomF(7, 0.2, 2), u1 = randomF(7, 0.2, 3);
  auto detourA = add(add(u0, u1), randomF(7, 0.1, 4)), detourB = add(u0, randomF(7, 0.15, 5));
  for (auto& x : detourA) x *= 0.5;
  double straight = evaluateFunctionalPath(t, c, {u0, u1});
  double viaA = evaluateFunctionalPath(t, c, {u0, detourA, u1});
  double viaB = evaluateFunctionalPath(t, c, {u0, detourB, detourA, u1});
  CHECK(std::abs(straight - viaA) < 1e-9);
  CHECK(std::abs(straight - viaB) < 1e-9);

  auto g = Triangulation::build(testing::genus2Faces());
  auto h = testing::uniformData(g, H, 1, 1, 0);
  auto v0 = uFromF(h);
  auto v1 = uFromF(h.withFactors(randomF(10, 0.2, 6)));
  auto v2 = uFromF(h.withFactors(randomF(10, 0.2, 7)));
  CHECK(std::abs(evaluateFunctionalPath(g, h, {v0, v1}) - evaluateFunctionalPath(g, h, {v0, v2, v1})) < 1e-9);
}

TEST_CASE("gradient of the functional is K") {
  auto g = Triangulation::build(testing::genus2Faces());
  auto h = testing::uniformData(g, H, 1, 1, 0);
  auto base = uFromF(h);
  auto at = uFromF(h.withFactors(randomF(10, 0.2, 8)));
  Eigen::VectorXd K = curvaturesAtU(g, h, at);
  Eigen::Map<Eigen::VectorXd> atv(at.data(), 10);
  Eigen::VectorXd dir = Eigen::VectorXd::Random(10);
  auto F = [&](const Eigen::VectorXd& u) {
    return evaluateFunctionalPath(g, h, {base, std::vector<double>(u.data(), u.data() + u.size())});
  };
  CHECK(std::abs(fdDirectional(F, atv, dir) - K.dot(dir)) < 1e-7);
  for (int i = 0; i < 10; i += 3) CHECK(std::abs(fdDerivative(F, atv, i) - K(i)) < 1e-7);
}

TEST_CASE("path leaving the domain") {
  auto t = Triangulation::build(testing::torus7Faces());
  auto c = testing::uniformData(t, E, 0, 1, 0);
  std::vector<double> u0(7, 0.0), u1(7, 0.0);
  // stretch one edge of face 0 until the triangle inequality breaks
  u1[t.face(0)[1]] = 4.0;
  u1[t.face(0)[2]] = -4.0;
  try {
    evaluateFunctionalPath(t, c, {u0, u1});
    FAIL("expected PathLeavesDomain");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PathLeavesDomain);
  }
}

TEST_CASE("flat torus needs no iterations") {
  auto t = Triangulation::build(testing::torus7Faces());
  SolverConfig cfg;
  cfg.targetK.assign(7, 0.0);
  auto res = newtonPrescribedCurvature(t, testing::uniformData(t, E, 0, 1, 0), cfg);
  CHECK(res.trace.status == SolveStatus::Converged);
  CHECK(res.trace.iterations.size() == 1);
}

TEST_CASE("torus from a random start") {
  auto t = Triangulation::build(testing::torus7Faces());
  auto c = testing::uniformData(t, E, 0, 1, 0);
  c.f = randomF(7, 0.3, 9);
  SolverConfig cfg;
  cfg.targetK.assign(7, 0.0);
  auto res = newtonPrescribedCurvature(t, c, cfg);
  CHECK(res.trace.status == SolveStatus::Converged);
  CHECK(res.K.cwiseAbs().maxCoeff() < 1e-10);
  CHECK(res.trace.iterations.size() - 1 <= 10);
  for (double f : res.data.f) CHECK(std::abs(f) < 1e-9);
  for (size_t k = 1; k < res.trace.iterations.size(); ++k) {
    CHECK(res.trace.iterations[k].residual <= res.trace.iterations[k - 1].residual);
  }

  // a constant shift of the start gives the same gauge-fixed answer
  auto shifted = c;
  for (auto& x : shifted.f) x += 0.8;
  auto res2 = newtonPrescribedCurvature(t, shifted, cfg);
  for (int v = 0; v < 7; ++v) CHECK(std::abs(res2.data.f[v] - res.data.f[v]) < 1e-10);
}

TEST_CASE("tetrahedron with K = pi") {
  auto t = Triangulation::build(testing::tetrahedronFaces());
  auto c = testing::uniformData(t, E, 1, 1, 0);
  c.f = randomF(4, 0.3, 10);
  SolverConfig cfg;
  cfg.targetK.assign(4, pi);
  auto res = newtonPrescribedCurvature(t, c, cfg);
  CHECK(res.trace.status == SolveStatus::Converged);
  for (int v = 1; v < 4; ++v) CHECK(std::abs(res.data.f[v] - res.data.f[0]) < 1e-9);
}

TEST_CASE("genus two, hyperbolic, K = 0") {
  auto t = Triangulation::build(testing::genus2Faces());
  auto c = testing::uniformData(t, H, 1, 1, 0);
  c.f = randomF(10, 0.3, 11);
  SolverConfig cfg;
  cfg.targetK.assign(10, 0.0);
  auto res = newtonPrescribedCurvature(t, c, cfg);
  REQUIRE(res.trace.status == SolveStatus::Converged);
  double area = 0;
  for (double a : faceAreas(t, res.data)) area += a;
  CHECK(std::abs(area - 4 * pi) < 1e-8);
  CHECK(res.trace.warnings.empty());

  // quadratic: e_{n+1} / e_n^2 stays bounded once close
  const auto& it = res.trace.iterations;
  for (size_t k = 1; k + 1 < it.size(); ++k) {
    if (it[k].residual < 1e-1 && it[k + 1].residual > 1e-13) CHECK(it[k + 1].residual / (it[k].residual * it[k].residual) < 10.0);
  }
  // the recorded functional decreases toward its minimum
  for (size_t k = 1; k < it.size(); ++k) CHECK(it[k].functional <= it[k - 1].functional + 1e-12);
}

TEST_CASE("spherical solves carry a warning") {
  auto t = Triangulation::build(testing::octahedronFaces());
  auto c = testing::uniformData(t, S, 0, 1, 0);
  c.f = randomF(6, 0.05, 12);
  SolverConfig cfg;
  cfg.targetK.assign(6, 0.0);
  auto res = newtonPrescribedCurvature(t, c, cfg);
  CHECK(res.trace.status == SolveStatus::Converged);
  REQUIRE(res.trace.warnings.size() == 1);
  CHECK(res.trace.warnings[0] == "NoConvexityGuarantee");
  // solutions are only unique up to Moebius maps; check the total area instead
  double area = 0;
  for (double a : faceAreas(t, res.data)) area += a;
  CHECK(area == Approx(4 * pi).epsilon(1e-10));
}

TEST_CASE("infeasible targets") {
  auto torus = Triangulation::build(testing::torus7Faces());
  SolverConfig cfg;
  cfg.targetK.assign(7, 0.1);
  try {
    newtonPrescribedCurvature(torus, testing::uniformData(torus, E, 0, 1, 0), cfg);
    FAIL("expected InfeasibleTarget");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InfeasibleTarget);
  }
  auto g = Triangulation::build(testing::genus2Faces());
  CHECK_FALSE(gaussBonnetFeasibility(g, H, std::vector<double>(10, -4 * pi / 10 - 0.01)).feasible);
  CHECK(gaussBonnetFeasibility(g, H, std::vector<double>(10, 0.0)).feasible);
  auto o = Triangulation::build(testing::octahedronFaces());
  CHECK_FALSE(gaussBonnetFeasibility(o, S, std::vector<double>(6, 4 * pi / 6)).feasible);
  CHECK(gaussBonnetFeasibility(o, S, std::vector<double>(6, 0.0)).feasible);
}

TEST_CASE("iteration limit keeps the trace") {
  auto t = Triangulation::build(testing::genus2Faces());
  auto c = testing::uniformData(t, H, 1, 1, 0);
  SolverConfig cfg;
  cfg.targetK.assign(10, 0.0);
  cfg.maxIterations = 1;
  try {
    newtonPrescribedCurvature(t, c, cfg);
    FAIL("expected IterationLimit");
  } catch (const SolveError& e) {
    CHECK(e.kind() == ErrorKind::IterationLimit);
    CHECK(e.partial().trace.status == SolveStatus::IterationLimit);
    CHECK(e.partial().trace.iterations.size() == 2);
  }
}
