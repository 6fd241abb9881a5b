#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dck/commands.h"
#include "dck/conformal.h"
#include "dck/geometry.h"
#include "dck/surface_io.h"
#include "dck/variation.h"

namespace py = pybind11;
using namespace dck;

namespace {
Background toBackground(const std::string& name) {
  auto bg = parseBackground(name);
  if (!bg) throw Error(ErrorKind::Validation, "unknown background '" + name + "'");
  return *bg;
}

py::tuple unpack(const CommandOutput& out) {
  py::object artifact = py::none();
  if (out.artifact) artifact = py::str(out.artifact->dump());
  return py::make_tuple(out.exitCode, out.body.dump(), artifact);
}
} // namespace

PYBIND11_MODULE(_dck, m) {
  static py::exception<Error> dckError(m, "DckError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(dckError.ptr(), e.what());
    }
  });

  m.def("edge_length", [](const std::string& bg, double ai, double aj, double eta, double fi, double fj) {
    return conformalEdgeLength(toBackground(bg), ai, aj, eta, fi, fj);
  });
  m.def("partial_length", [](const std::string& bg, double ai, double aj, double eta, double fi, double fj) {
    return conformalPartialLength(toBackground(bg), ai, aj, eta, fi, fj);
  });
  m.def("u_from_f", [](const std::string& bg, double alpha, double f) { return uFromF(toBackground(bg), alpha, f); });
  m.def("f_from_u", [](const std::string& bg, double alpha, double u) { return fFromU(toBackground(bg), alpha, u); });
  m.def("triangle_angles", [](const std::array<double, 3>& l, const std::string& bg) {
    return triangleAngles(l, toBackground(bg));
  });

  m.def("curvatures", [](const std::string& path) {
    SurfaceFile s = loadSurface(path);
    return Eigen::VectorXd(vertexCurvatures(s.mesh, s.data));
  });
  m.def("curvature_jacobian", [](const std::string& path) {
    SurfaceFile s = loadSurface(path);
    return Eigen::MatrixXd(curvatureJacobianU(s.mesh, s.data));
  });

  m.def("validate", [](const std::string& path) { return unpack(guarded([&] { return runValidate(path); })); });
  m.def("report", [](const std::string& path, bool jacobian) {
    return unpack(guarded([&] { return runReport(path, jacobian); }));
  }, py::arg("path"), py::arg("jacobian") = false);
  m.def("check_derivatives", [](const std::string& path, std::uint64_t seed) {
    return unpack(guarded([&] { return runCheckDerivatives(path, seed); }));
  }, py::arg("path"), py::arg("seed") = 0);
  m.def("uniformize", [](const std::string& path, std::optional<std::string> target, std::optional<double> tolerance,
                         std::optional<int> maxIterations) {
    return unpack(guarded([&] { return runUniformize(path, {target, tolerance, maxIterations}); }));
  }, py::arg("path"), py::arg("target") = py::none(), py::arg("tolerance") = py::none(),
     py::arg("max_iterations") = py::none());
  m.def("convert_uf", [](const std::string& path) { return unpack(guarded([&] { return runConvertUF(path); })); });
}
