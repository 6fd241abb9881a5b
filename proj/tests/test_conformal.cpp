#include <doctest.h>

#include <numbers>
#include <random>

#include "dck/conformal.h"
#include "dck/errors.h"
#include "dck/variation.h"
#include "support.h"

using namespace dck;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;
constexpr double kAcosh2 = 1.31695789692481671;
constexpr double kHalfAcosh2 = 0.658478948462408354;
constexpr double kInvSqrt3 = 0.577350269189625765;
// -atanh(1/2)
constexpr double kUHalf = -0.549306144334054846;

const auto E = Background::Euclidean;
const auto H = Background::Hyperbolic;
const auto S = Background::Spherical;
} // namespace

TEST_CASE("edge length examples") {
  CHECK(conformalEdgeLength(E, 1, 1, 1, 0, 0) == Approx(2.0).epsilon(1e-15));
  CHECK(conformalEdgeLength(H, 0, 0, 1, 0, 0) == Approx(kAcosh2).epsilon(1e-15));
  CHECK(conformalEdgeLength(S, 0, 0, 0.5, 0, 0) == Approx(pi / 3).epsilon(1e-15));
  try {
    conformalEdgeLength(E, 1, 1, -1, 0, 0);
    FAIL("expected OutOfDomain");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutOfDomain);
  }
}

TEST_CASE("edge length errors name the edge") {
  auto t = Triangulation::build(testing::tetrahedronFaces());
  auto c = testing::uniformData(t, E, 1.0, 1.0, 0.0);
  c.eta[3] = -1.0;
  try {
    edgeLength(t, c, 3);
    FAIL("expected OutOfDomain");
  } catch (const Error& e) {
    auto [i, j] = t.edge(3);
    CHECK(std::string(e.what()).find("{" + std::to_string(i) + ", " + std::to_string(j) + "}") !=
          std::string::npos);
  }
}

TEST_CASE("partial length examples") {
  CHECK(conformalPartialLength(E, 1, 1, 1, 0, 0) == Approx(1.0).epsilon(1e-15));
  double d = conformalPartialLength(H, 0, 0, 1, 0, 0);
  CHECK(std::tanh(d) == Approx(kInvSqrt3).epsilon(1e-15));
  CHECK(d == Approx(kHalfAcosh2).epsilon(1e-14));

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> F(-1, 1), Eta(0.3, 2);
  for (int k = 0; k < 100; ++k) {
    double fi = F(rng), fj = F(rng), eta = Eta(rng);
    double l = conformalEdgeLength(E, 0, 0, eta, fi, fj);
    double dij = conformalPartialLength(E, 0, 0, eta, fi, fj);
    double dji = conformalPartialLength(E, 0, 0, eta, fj, fi);
    CHECK(dij / l == Approx(std::exp(fi + fj) * eta / (l * l)).epsilon(1e-13));
    CHECK(dij + dji == Approx(l).epsilon(1e-13));
  }
}

TEST_CASE("partials sum to lengths and satisfy compatibility") {
  std::mt19937_64 rng(2);
  for (auto bg : {E, H, S}) {
    int done = 0;
    while (done < 200) {
      auto lf = testing::sampleFace(bg, rng);
      if (!lf) continue;
      FacePartials fp = lf->partials();
      auto l = lf->lengths();
      for (int a = 0; a < 3; ++a) CHECK(fp.length(a, (a + 1) % 3) == Approx(l[a]).epsilon(1e-12));
      CHECK(std::abs(compatibilityResidual(fp, bg)) < 1e-12);
      ++done;
    }
  }
}

TEST_CASE("defining property: dl_ij/df_i = g(d_ij)") {
  auto t = Triangulation::build(testing::tetrahedronFaces());
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> F(-0.4, 0.4), A(0.0, 1.5), Eta(0.0, 1.0);
  for (auto bg : {E, H, S}) {
    int done = 0;
    while (done < 25) {
      auto c = testing::uniformData(t, bg, 0.0, 1.0, 0.0);
      for (auto& x : c.f) x = F(rng);
      if (bg == H) {
        for (auto& x : c.alpha) x = 1.0; // circle packing
        for (auto& x : c.eta) x = Eta(rng);
      } else if (bg == E) {
        for (auto& x : c.alpha) x = A(rng);
        for (auto& x : c.eta) x = 0.3 + Eta(rng);
      } else {
        for (auto& x : c.eta) x = 0.2 + 0.5 * Eta(rng);
      }
      if (!validateConformal(t, c).ok()) continue;
      for (int e = 0; e < t.edgeCount(); ++e) CHECK(conformalJacobianCheck(t, c, e) < 1e-8);
      ++done;
    }
  }
}

TEST_CASE("domain validation") {
  auto t = Triangulation::build(testing::octahedronFaces());
  auto c = testing::uniformData(t, S, 0.0, 1.0, 0.0);
  CHECK(validateConformal(t, c).ok());
  c.alpha[3] = 1.0;
  c.f[3] = 0.1;
  auto rep = validateConformal(t, c);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.issues[0].where == "vertex 3");

  auto h = testing::uniformData(t, H, -2.0, 1.0, 0.0);
  CHECK_FALSE(validateConformal(t, h).ok());
}

TEST_CASE("u from f") {
  CHECK(uFromF(H, 0.0, 0.37) == 0.37);
  CHECK(uFromF(S, 0.0, -0.2) == -0.2);
  CHECK(uFromF(E, 2.0, 0.5) == 0.5);
  // alpha = -1, e^{2f} = 3/4: df/du = 1/2 = -tanh u
  double f = 0.5 * std::log(0.75);
  CHECK(dfdu(H, -1.0, f) == Approx(0.5).epsilon(1e-15));
  CHECK(uFromF(H, -1.0, f) == Approx(kUHalf).epsilon(1e-14));
  CHECK(-std::tanh(uFromF(H, -1.0, f)) == Approx(0.5).epsilon(1e-14));
}

TEST_CASE("u <-> f round trip and monotonicity") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> A(-3, 3), F(-2, 2);
  double worst = 0.0;
  int done = 0;
  while (done < 1000) {
    Background bg = (done % 2) ? H : S;
    double alpha = A(rng), f = F(rng);
    double x = 1.0 + (bg == H ? 1.0 : -1.0) * alpha * std::exp(2 * f);
    double x1 = 1.0 + (bg == H ? 1.0 : -1.0) * alpha * std::exp(2 * f + 2e-3);
    if (x <= 1e-6 || x1 <= 1e-6) continue;
    double u = uFromF(bg, alpha, f);
    worst = std::max(worst, std::abs(fFromU(bg, alpha, u) - f));
    CHECK(uFromF(bg, alpha, f + 1e-3) > u);
    ++done;
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("closed-form u agrees with quadrature of du/df") {
  const double alphas[] = {-1.5, -0.3, 0.4, 2.0};
  for (double alpha : alphas) {
    for (auto bg : {H, S}) {
      double sign = bg == H ? 1.0 : -1.0;
      // keep 1 + sign alpha e^{2f} comfortably positive on [f0, f1]
      double f1 = -0.2, f0 = -1.0;
      while (1.0 + sign * alpha * std::exp(2 * f1) < 0.2) f1 -= 0.2, f0 -= 0.2;
      CHECK(uClosedFormQuadratureError(bg, alpha, f0, f1) < 1e-10);
    }
  }
}

TEST_CASE("u is undefined at nonnegative values when alpha != 0") {
  CHECK_THROWS_AS(fFromU(H, 1.0, 0.1), Error);
  CHECK(fFromU(H, 0.0, 0.1) == 0.1);
}

TEST_CASE("du/df stays continuous as alpha -> 0") {
  for (double f : {-0.3, 0.0, 0.4}) {
    for (auto bg : {H, S}) {
      double a = 1.0 / dfdu(bg, 1e-9, f), b = 1.0 / dfdu(bg, -1e-9, f);
      CHECK(a == Approx(1.0).epsilon(1e-8));
      CHECK(b == Approx(1.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("Euclidean scaling") {
  auto t = Triangulation::build(testing::torus7Faces());
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> F(-0.3, 0.3);
  auto c = testing::uniformData(t, E, 0.5, 1.0, 0.0);
  for (auto& x : c.f) x = F(rng);
  auto shifted = c;
  for (auto& x : shifted.f) x += 0.7;
  auto l0 = edgeLengths(t, c), l1 = edgeLengths(t, shifted);
  for (size_t e = 0; e < l0.size(); ++e) CHECK(l1[e] == Approx(std::exp(0.7) * l0[e]).epsilon(1e-13));
  for (int f = 0; f < t.faceCount(); ++f) {
    auto g0 = faceAngles(t, c, f), g1 = faceAngles(t, shifted, f);
    for (int a = 0; a < 3; ++a) CHECK(std::abs(g0[a] - g1[a]) < 1e-12);
  }
}

TEST_CASE("circle packing length laws") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> R(0.1, 2.0), Th(0.0, pi / 2);
  for (int k = 0; k < 200; ++k) {
    double ri = R(rng), rj = R(rng), th = Th(rng);
    double le = conformalEdgeLength(E, 1, 1, std::cos(th), std::log(ri), std::log(rj));
    CHECK(le * le == Approx(ri * ri + rj * rj + 2 * ri * rj * std::cos(th)).epsilon(1e-12));
    double lh = conformalEdgeLength(H, 1, 1, std::cos(th), std::log(std::sinh(ri)), std::log(std::sinh(rj)));
    CHECK(std::cosh(lh) == Approx(std::cosh(ri) * std::cosh(rj) + std::cos(th) * std::sinh(ri) * std::sinh(rj))
                               .epsilon(1e-12));
  }
}
