#pragma once

// The command layer behind the dck executable. Each command returns its exit
// code and JSON body instead of printing, so tests can drive it directly.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "dck/conformal.h"
#include "dck/errors.h"
#include "dck/fd_oracle.h"
#include "dck/metric.h"
#include "dck/surface_io.h"

namespace dck {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kInternal = 1;
inline constexpr int kParse = 2;
inline constexpr int kValidation = 3;
inline constexpr int kDerivatives = 4;
inline constexpr int kNoConvergence = 5;
inline constexpr int kInfeasible = 6;
} // namespace exit_code

int exitCodeFor(ErrorKind kind);
JsonValue errorJson(const Error& e);

struct CommandOutput {
  int exitCode = exit_code::kOk;
  JsonValue body;
  std::optional<JsonValue> artifact; // a surface file to write (uniformize, convert-uf)
};

// --- derivative checks --------------------------------------------------------

struct CategoryResult {
  std::string name;
  int comparisons = 0;
  double maxAbsError = 0.0;
  double maxRelError = 0.0; // |a - b| / max(1, |b|)
  double worstRatio = 0.0;  // error / allowed error; pass iff <= 1
  bool applicable = true;
  bool pass() const { return !applicable || worstRatio <= 1.0; }
};

struct DerivativeReport {
  std::vector<CategoryResult> categories;
  bool pass() const;
  JsonValue toJson() const;
};

struct CheckOptions {
  std::uint64_t seed = 0;
  FDConfig fd;
  // Test hook: edits the duality structure before analytic derivatives are
  // built from it.
  std::function<void(DualityStructure&)> tamperDuality;
};

// Compares analytic length, angle, area, curvature and functional-gradient
// derivatives against the FD oracle.
DerivativeReport checkDerivatives(const Triangulation& t, const ConformalData& c,
                                  const CheckOptions& opts = {});

// --- commands -----------------------------------------------------------------

CommandOutput runValidate(const std::string& input);
CommandOutput runReport(const std::string& input, bool jacobian);
CommandOutput runCheckDerivatives(const std::string& input, std::uint64_t seed);
CommandOutput runCheckDerivatives(const SurfaceFile& surface, const CheckOptions& opts);

struct UniformizeOptions {
  std::optional<std::string> target; // PATH, "zero" or "uniform"
  std::optional<double> tolerance;
  std::optional<int> maxIterations;
};

CommandOutput runUniformize(const std::string& input, const UniformizeOptions& opts);
CommandOutput runConvertUF(const std::string& input);

// Runs a command body, turning library errors into their exit code and JSON
// error body.
CommandOutput guarded(const std::function<CommandOutput()>& body);

} // namespace dck
