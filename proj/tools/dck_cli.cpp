// dck: validate, report on and uniformize discrete conformal surfaces.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dck/commands.h"

namespace {

int emit(const dck::CommandOutput& out, const std::string& outputPath) {
  dck::JsonValue body = out.body;
  const dck::JsonValue* toFile = out.artifact ? &*out.artifact : &body;
  if (!outputPath.empty()) {
    std::ofstream f(outputPath, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << outputPath << "\n";
      return dck::exit_code::kInternal;
    }
    f << toFile->dump();
    if (out.artifact) std::cout << body.dump();
  } else {
    if (out.artifact) body.set("surface", *out.artifact);
    std::cout << body.dump();
  }
  return out.exitCode;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete conformal structures on triangulated surfaces"};
  app.require_subcommand(1);

  std::string input, output, target;
  bool jacobian = false;
  double tolerance = 0.0;
  int maxIter = 0;
  std::uint64_t seed = 0;

  auto addIO = [&](CLI::App* cmd) {
    cmd->add_option("--input,-i", input, "surface file (JSON or OBJ)")->required();
    cmd->add_option("--output,-o", output, "write JSON here instead of standard output");
  };

  auto* validate = app.add_subcommand("validate", "manifold, domain and metric checks");
  addIO(validate);
  auto* report = app.add_subcommand("report", "lengths, angles, curvatures, centers and heights");
  addIO(report);
  report->add_flag("--jacobian", jacobian, "include dK/du as a sparse coordinate list");
  auto* check = app.add_subcommand("check-derivatives", "compare analytic derivatives with finite differences");
  addIO(check);
  check->add_option("--seed", seed, "seed for the randomized functional check");
  auto* uniformize = app.add_subcommand("uniformize", "Newton solve for prescribed curvature");
  addIO(uniformize);
  auto* targetOpt = uniformize->add_option("--target-k", target, "PATH, zero or uniform");
  auto* tolOpt = uniformize->add_option("--tolerance", tolerance, "stop when max |K - K*| is below this");
  auto* iterOpt = uniformize->add_option("--max-iter", maxIter, "Newton iteration limit");
  auto* convert = app.add_subcommand("convert-uf", "write both f and u for every vertex");
  addIO(convert);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : dck::exit_code::kParse;
  }

  dck::CommandOutput out;
  if (validate->parsed()) {
    out = dck::runValidate(input);
  } else if (report->parsed()) {
    out = dck::runReport(input, jacobian);
  } else if (check->parsed()) {
    out = dck::runCheckDerivatives(input, seed);
  } else if (uniformize->parsed()) {
    dck::UniformizeOptions opts;
    if (*targetOpt) opts.target = target;
    if (*tolOpt) opts.tolerance = tolerance;
    if (*iterOpt) opts.maxIterations = maxIter;
    out = dck::runUniformize(input, opts);
  } else {
    out = dck::runConvertUF(input);
  }
  return emit(out, output);
}
