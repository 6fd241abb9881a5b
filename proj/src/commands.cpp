#include "dck/commands.h"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "dck/solver.h"
#include "dck/variation.h"

namespace dck {

int exitCodeFor(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::Parse: return exit_code::kParse;
  case ErrorKind::IterationLimit:
  case ErrorKind::SingularHessian:
  case ErrorKind::PathLeavesDomain: return exit_code::kNoConvergence;
  case ErrorKind::InfeasibleTarget: return exit_code::kInfeasible;
  default: return exit_code::kValidation;
  }
}

JsonValue errorJson(const Error& e) {
  JsonValue err = JsonValue::object();
  err.set("kind", errorKindName(e.kind()));
  err.set("message", e.detail());
  JsonValue body = JsonValue::object();
  body.set("error", std::move(err));
  return body;
}

CommandOutput guarded(const std::function<CommandOutput()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    return {exitCodeFor(e.kind()), errorJson(e), std::nullopt};
  } catch (const std::exception& e) {
    JsonValue err = JsonValue::object();
    err.set("kind", "Internal");
    err.set("message", e.what());
    JsonValue b = JsonValue::object();
    b.set("error", std::move(err));
    return {exit_code::kInternal, std::move(b), std::nullopt};
  }
}

// --- derivative checks --------------------------------------------------------

namespace {

struct Accumulator {
  CategoryResult r;
  Tolerance tol;

  Accumulator(std::string name, Tolerance t) : tol(t) { r.name = std::move(name); }

  void add(double analytic, double reference) {
    double err = std::abs(analytic - reference);
    double allowed = std::max(tol.absolute, tol.relative * std::abs(reference));
    r.comparisons++;
    r.maxAbsError = std::max(r.maxAbsError, err);
    r.maxRelError = std::max(r.maxRelError, err / std::max(1.0, std::abs(reference)));
    r.worstRatio = std::max(r.worstRatio, err / allowed);
  }
};

Eigen::VectorXd toVec(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> toStd(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

} // namespace

bool DerivativeReport::pass() const {
  for (const auto& c : categories) {
    if (!c.pass()) return false;
  }
  return true;
}

JsonValue DerivativeReport::toJson() const {
  JsonValue cats = JsonValue::array();
  for (const auto& c : categories) {
    JsonValue item = JsonValue::object();
    item.set("category", c.name);
    item.set("applicable", c.applicable);
    item.set("comparisons", c.comparisons);
    item.set("max_abs_error", c.maxAbsError);
    item.set("max_rel_error", c.maxRelError);
    item.set("worst_error_over_tolerance", c.worstRatio);
    item.set("pass", c.pass());
    cats.push(std::move(item));
  }
  JsonValue body = JsonValue::object();
  body.set("pass", pass());
  body.set("categories", std::move(cats));
  return body;
}

DerivativeReport checkDerivatives(const Triangulation& t, const ConformalData& c,
                                  const CheckOptions& opts) {
  const Background bg = c.background;
  const Eigen::VectorXd f0 = toVec(c.f);
  auto withF = [&](const Eigen::VectorXd& f) { return c.withFactors(toStd(f)); };

  PreMetric metric = conformalPreMetric(t, c);
  DualityStructure dual = buildDuality(t, metric, bg);
  if (opts.tamperDuality) opts.tamperDuality(dual);
  std::vector<Eigen::Matrix3d> blocks(t.faceCount());
  for (int f = 0; f < t.faceCount(); ++f) {
    blocks[f] = angleJacobianF(facePartials(t, metric, f), dual.faces[f], bg);
  }

  DerivativeReport report;

  // lengths: d l_ij / d f_i against d_ij, tanh d_ij or tan d_ij
  Accumulator lengths("lengths", {1e-8, 1e-8});
  for (int e = 0; e < t.edgeCount(); ++e) {
    auto [i, j] = t.edge(e);
    for (auto [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
      double d = partialLength(t, c, a, b);
      double analytic = bg == Background::Euclidean ? d : bg == Background::Hyperbolic ? std::tanh(d) : std::tan(d);
      double fd = fdDerivative([&](const Eigen::VectorXd& f) { return edgeLength(t, withF(f), e); }, f0, a, opts.fd);
      lengths.add(analytic, fd);
    }
  }
  report.categories.push_back(lengths.r);

  Accumulator angles("angles", {1e-7, 1e-5});
  Accumulator areas("areas", {1e-7, 1e-5});
  areas.r.applicable = bg != Background::Euclidean;
  for (int face = 0; face < t.faceCount(); ++face) {
    const Face& fv = t.face(face);
    for (int b = 0; b < 3; ++b) {
      for (int a = 0; a < 3; ++a) {
        double fd = fdDerivative(
            [&](const Eigen::VectorXd& f) { return faceAngles(t, withF(f), face)[a]; }, f0, fv[b], opts.fd);
        angles.add(blocks[face](a, b), fd);
      }
      if (areas.r.applicable) {
        AreaGradient g = areaGradientF(faceLengths(t, c, face), blocks[face], bg);
        double fd = fdDerivative(
            [&](const Eigen::VectorXd& f) {
              auto l = faceLengths(t, withF(f), face);
              return triangleArea(triangleAngles(l, bg), l, bg);
            },
            f0, fv[b], opts.fd);
        areas.add(g.excess[b], fd);
      }
    }
  }
  report.categories.push_back(angles.r);
  report.categories.push_back(areas.r);

  // curvature: dK/du
  Accumulator curv("curvature", {1e-7, 1e-5});
  const std::vector<double> u0 = uFromF(c);
  const Eigen::VectorXd u0v = toVec(u0);
  Eigen::MatrixXd J = Eigen::MatrixXd(curvatureJacobianU(t, c, blocks));
  for (int j = 0; j < t.vertexCount(); ++j) {
    for (int i = 0; i < t.vertexCount(); ++i) {
      double fd = fdDerivative(
          [&](const Eigen::VectorXd& u) { return curvaturesAtU(t, c, toStd(u))(i); }, u0v, j, opts.fd);
      curv.add(J(i, j), fd);
    }
  }
  report.categories.push_back(curv.r);

  // functional gradient at a point near the file's u, base point at the file's u
  Accumulator grad("functional_gradient", {1e-7, 0.0});
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> u1 = u0;
  for (double& x : u1) x += 0.01 * unit(rng);
  try {
    functionalIncrement(t, c, u0, u1, 8);
  } catch (const Error&) {
    u1 = u0;
  }
  Eigen::VectorXd K1 = curvaturesAtU(t, c, u1);
  for (int i = 0; i < t.vertexCount(); ++i) {
    double fd = fdDerivative(
        [&](const Eigen::VectorXd& u) { return evaluateFunctionalPath(t, c, {u0, toStd(u)}); },
        toVec(u1), i, opts.fd);
    grad.add(K1(i), fd);
  }
  report.categories.push_back(grad.r);
  return report;
}

// --- commands -----------------------------------------------------------------

namespace {

JsonValue issuesJson(const DomainReport& rep) {
  JsonValue list = JsonValue::array();
  for (const auto& is : rep.issues) {
    JsonValue item = JsonValue::object();
    item.set("where", is.where);
    item.set("what", is.what);
    list.push(std::move(item));
  }
  return list;
}

// Domain check shared by every command. Returns the failure body if any.
std::optional<CommandOutput> domainFailure(const SurfaceFile& s) {
  DomainReport rep = validateConformal(s.mesh, s.data);
  if (rep.ok()) return std::nullopt;
  JsonValue err = JsonValue::object();
  err.set("kind", "ValidationError");
  err.set("message", rep.issues.front().where + ": " + rep.issues.front().what);
  err.set("issues", issuesJson(rep));
  JsonValue body = JsonValue::object();
  body.set("error", std::move(err));
  return CommandOutput{exit_code::kValidation, std::move(body), std::nullopt};
}

JsonValue vec3Json(const Vec3& p) { return JsonValue::array(std::vector<double>{p.x(), p.y(), p.z()}); }

JsonValue gaussBonnetJson(const Triangulation& t, Background bg, const Eigen::VectorXd& K,
                          const std::vector<double>& areas) {
  double sumK = K.sum();
  double sumA = 0.0;
  for (double a : areas) sumA += a;
  double twoPiChi = 2.0 * std::numbers::pi * t.eulerCharacteristic();
  double expected = bg == Background::Euclidean ? twoPiChi
                    : bg == Background::Hyperbolic ? twoPiChi + sumA
                                                   : twoPiChi - sumA;
  JsonValue gb = JsonValue::object();
  gb.set("euler_characteristic", t.eulerCharacteristic());
  gb.set("sum_K", sumK);
  gb.set("sum_area", sumA);
  gb.set("two_pi_chi", twoPiChi);
  gb.set("residual", sumK - expected);
  return gb;
}

JsonValue sparseJson(const Eigen::SparseMatrix<double>& m) {
  JsonValue entries = JsonValue::array();
  for (int col = 0; col < m.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, col); it; ++it) {
      JsonValue item = JsonValue::object();
      item.set("row", static_cast<int>(it.row()));
      item.set("col", static_cast<int>(it.col()));
      item.set("value", it.value());
      entries.push(std::move(item));
    }
  }
  JsonValue out = JsonValue::object();
  out.set("rows", static_cast<int>(m.rows()));
  out.set("cols", static_cast<int>(m.cols()));
  out.set("entries", std::move(entries));
  return out;
}

} // namespace

CommandOutput runValidate(const std::string& input) {
  return guarded([&]() -> CommandOutput {
    SurfaceFile s = loadSurface(input);
    if (auto fail = domainFailure(s)) return *fail;
    PreMetric metric = conformalPreMetric(s.mesh, s.data);
    MetricCertificate cert = certifyMetric(s.mesh, metric, s.data.background);
    DualityStructure dual = buildDuality(s.mesh, metric, s.data.background);

    JsonValue body = JsonValue::object();
    body.set("valid", cert.isMetric());
    body.set("background", backgroundName(s.data.background));
    body.set("vertices", s.mesh.vertexCount());
    body.set("edges", s.mesh.edgeCount());
    body.set("faces", s.mesh.faceCount());
    body.set("euler_characteristic", s.mesh.eulerCharacteristic());
    body.set("max_compatibility_residual", cert.maxResidual);
    body.set("max_concurrency_residual", dual.maxConcurrencyResidual());
    if (!cert.isMetric()) {
      JsonValue err = JsonValue::object();
      err.set("kind", "ValidationError");
      err.set("message", "compatibility residual above tolerance");
      body.set("error", std::move(err));
      return {exit_code::kValidation, std::move(body), std::nullopt};
    }
    return {exit_code::kOk, std::move(body), std::nullopt};
  });
}

CommandOutput runReport(const std::string& input, bool jacobian) {
  return guarded([&]() -> CommandOutput {
    SurfaceFile s = loadSurface(input);
    if (auto fail = domainFailure(s)) return *fail;
    const Triangulation& t = s.mesh;
    const ConformalData& c = s.data;
    CurvatureSystem sys = assembleCurvatureSystem(t, c);

    JsonValue body = JsonValue::object();
    body.set("background", backgroundName(c.background));

    JsonValue lengths = JsonValue::array();
    for (int e = 0; e < t.edgeCount(); ++e) {
      JsonValue item = JsonValue::object();
      item.set("i", t.edge(e)[0]);
      item.set("j", t.edge(e)[1]);
      item.set("length", edgeLength(t, c, e));
      lengths.push(std::move(item));
    }
    body.set("lengths", std::move(lengths));

    JsonValue partials = JsonValue::array();
    for (int oe = 0; oe < t.orientedEdgeCount(); ++oe) {
      auto [i, j] = t.orientedEdgeVertices(oe);
      JsonValue item = JsonValue::object();
      item.set("i", i);
      item.set("j", j);
      item.set("d", partialLength(t, c, i, j));
      partials.push(std::move(item));
    }
    body.set("partial_lengths", std::move(partials));

    JsonValue faces = JsonValue::array();
    for (int f = 0; f < t.faceCount(); ++f) {
      const FaceDuality& fd = sys.duality.faces[f];
      const Face& fv = t.face(f);
      JsonValue item = JsonValue::object();
      item.set("face", f);
      item.set("vertices", JsonValue::array(std::vector<int>(fv.begin(), fv.end())));
      item.set("angles", JsonValue::array(std::vector<double>(sys.angles[f].begin(), sys.angles[f].end())));
      item.set("area", sys.areas[f]);
      JsonValue center = JsonValue::object();
      center.set("point", vec3Json(fd.center.point));
      center.set("beta", fd.center.beta);
      center.set("residual", fd.center.residual);
      item.set("center", std::move(center));
      JsonValue heights = JsonValue::array();
      for (int a = 0; a < 3; ++a) {
        JsonValue h = JsonValue::object();
        h.set("i", fv[a]);
        h.set("j", fv[(a + 1) % 3]);
        h.set("h", fd.heights[a]);
        heights.push(std::move(h));
      }
      item.set("heights", std::move(heights));
      faces.push(std::move(item));
    }
    body.set("faces", std::move(faces));

    JsonValue curv = JsonValue::array();
    for (int v = 0; v < t.vertexCount(); ++v) {
      JsonValue item = JsonValue::object();
      item.set("id", v);
      item.set("K", sys.K(v));
      curv.push(std::move(item));
    }
    body.set("curvatures", std::move(curv));
    body.set("gauss_bonnet", gaussBonnetJson(t, c.background, sys.K, sys.areas));
    if (jacobian) {
      JsonValue jac = sparseJson(sys.jacKU);
      jac.set("relative_asymmetry", relativeAsymmetry(sys.jacKU));
      body.set("jacobian_K_u", std::move(jac));
    }
    return {exit_code::kOk, std::move(body), std::nullopt};
  });
}

CommandOutput runCheckDerivatives(const SurfaceFile& s, const CheckOptions& opts) {
  return guarded([&]() -> CommandOutput {
    if (auto fail = domainFailure(s)) return *fail;
    DerivativeReport rep = checkDerivatives(s.mesh, s.data, opts);
    JsonValue body = rep.toJson();
    return {rep.pass() ? exit_code::kOk : exit_code::kDerivatives, std::move(body), std::nullopt};
  });
}

CommandOutput runCheckDerivatives(const std::string& input, std::uint64_t seed) {
  return guarded([&]() -> CommandOutput {
    SurfaceFile s = loadSurface(input);
    CheckOptions opts;
    opts.seed = seed;
    return runCheckDerivatives(s, opts);
  });
}

CommandOutput runUniformize(const std::string& input, const UniformizeOptions& opts) {
  return guarded([&]() -> CommandOutput {
    SurfaceFile s = loadSurface(input);
    if (auto fail = domainFailure(s)) return *fail;
    const Triangulation& t = s.mesh;
    const int n = t.vertexCount();

    std::vector<double> target;
    std::string choice = opts.target.value_or(s.targetK ? "" : "zero");
    if (choice.empty()) {
      target = *s.targetK;
    } else if (choice == "zero") {
      target.assign(n, 0.0);
    } else if (choice == "uniform") {
      // Euclidean: the constant with the right Gauss-Bonnet sum. Curved: the
      // mean of the initial curvatures.
      double total = s.data.background == Background::Euclidean
                         ? 2.0 * std::numbers::pi * t.eulerCharacteristic()
                         : vertexCurvatures(t, s.data).sum();
      target.assign(n, total / n);
    } else {
      std::ifstream in(resolveInputPath(choice));
      if (!in) throw Error(ErrorKind::Parse, "cannot open target file " + choice);
      std::ostringstream ss;
      ss << in.rdbuf();
      target = parseTargetK(ss.str(), n);
    }

    GaussBonnetCheck gb = gaussBonnetFeasibility(t, s.data.background, target);
    JsonValue gbJson = JsonValue::object();
    gbJson.set("requirement", gb.requirement);
    gbJson.set("sum_target_K", gb.targetSum);
    gbJson.set("two_pi_chi", gb.twoPiChi);
    if (!gb.feasible) {
      JsonValue err = JsonValue::object();
      err.set("kind", "InfeasibleTarget");
      err.set("message", "target curvature violates " + gb.requirement);
      err.set("gauss_bonnet", std::move(gbJson));
      JsonValue body = JsonValue::object();
      body.set("error", std::move(err));
      return {exit_code::kInfeasible, std::move(body), std::nullopt};
    }

    SolverConfig cfg;
    cfg.targetK = target;
    if (s.solver.maxIterations) cfg.maxIterations = *s.solver.maxIterations;
    if (s.solver.gradTolerance) cfg.gradTolerance = *s.solver.gradTolerance;
    if (s.solver.quadraturePoints) cfg.quadraturePoints = *s.solver.quadraturePoints;
    if (opts.maxIterations) cfg.maxIterations = *opts.maxIterations;
    if (opts.tolerance) cfg.gradTolerance = *opts.tolerance;

    auto traceJson = [](const SolveTrace& tr) {
      JsonValue its = JsonValue::array();
      for (const auto& r : tr.iterations) {
        JsonValue item = JsonValue::object();
        item.set("iteration", r.iteration);
        item.set("residual", r.residual);
        item.set("step", r.step);
        item.set("functional", r.functional);
        item.set("domain_backtracks", r.backtracks);
        its.push(std::move(item));
      }
      JsonValue out = JsonValue::object();
      out.set("status", solveStatusName(tr.status));
      out.set("iterations", std::move(its));
      out.set("warnings", JsonValue::array(tr.warnings));
      return out;
    };

    SolveResult res;
    int code = exit_code::kOk;
    std::string message;
    try {
      res = newtonPrescribedCurvature(t, s.data, cfg);
    } catch (const SolveError& e) {
      res = e.partial();
      code = exit_code::kNoConvergence;
      message = e.detail();
    }

    SurfaceFile solved = s;
    solved.data = res.data;
    solved.targetK = target;
    JsonValue body = JsonValue::object();
    body.set("status", solveStatusName(res.trace.status));
    if (!message.empty()) body.set("message", message);
    body.set("final_residual", res.trace.iterations.empty() ? std::nan("") : res.trace.iterations.back().residual);
    body.set("gauss_bonnet", std::move(gbJson));
    body.set("trace", traceJson(res.trace));
    return {code, std::move(body), surfaceToJson(solved)};
  });
}

CommandOutput runConvertUF(const std::string& input) {
  return guarded([&]() -> CommandOutput {
    SurfaceFile s = loadSurface(input);
    JsonValue body = JsonValue::object();
    body.set("converted_from", s.factorsGivenAsU ? "u" : "f");
    return {exit_code::kOk, std::move(body), surfaceToJson(s, true)};
  });
}

} // namespace dck
