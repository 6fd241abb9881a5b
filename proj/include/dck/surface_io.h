#pragma once

// JSON surface files and a small deterministic JSON writer.

#include <optional>
#include <string>
#include <vector>

#include "dck/conformal.h"
#include "dck/mesh.h"

namespace dck {

inline constexpr int kSchemaVersion = 1;

struct SolverSettings {
  std::optional<int> maxIterations;
  std::optional<double> gradTolerance;
  std::optional<int> quadraturePoints;
};

struct SurfaceFile {
  int schemaVersion = kSchemaVersion;
  Triangulation mesh;
  ConformalData data;
  std::vector<Face> faces; // as listed in the file
  std::optional<std::vector<double>> targetK;
  SolverSettings solver;
  bool factorsGivenAsU = false;
};

// Malformed input (syntax, missing fields, faces naming unknown vertices or
// unlisted edges) raises Error(Parse). Combinatorial failures raise the
// NonManifold / DuplicateFace errors of Triangulation::build.
SurfaceFile parseSurface(const std::string& text);
SurfaceFile readSurface(const std::string& path);

// Connectivity only: Euclidean, alpha = 0, eta = 1, f = 0.
SurfaceFile readObjConnectivity(const std::string& path);

// Dispatches on the extension (.obj or JSON).
SurfaceFile loadSurface(const std::string& path);

// Relative paths that do not exist are looked up in $DCK_FIXTURES and then in
// the bundled fixtures directory.
std::string resolveInputPath(const std::string& path);

// Per-vertex list of {id, K}, either bare or under "target_K".
std::vector<double> parseTargetK(const std::string& text, int vertexCount);

// --- writing ---------------------------------------------------------------

// Minimal JSON value with ordered objects so output is byte-stable.
class JsonValue {
public:
  enum class Type { Null, Bool, Int, Number, String, Array, Object };

  JsonValue() = default;
  JsonValue(bool b) : type_(Type::Bool), bool_(b) {}
  JsonValue(int i) : type_(Type::Int), int_(i) {}
  JsonValue(long long i) : type_(Type::Int), int_(i) {}
  JsonValue(double d) : type_(Type::Number), number_(d) {}
  JsonValue(const char* s) : type_(Type::String), string_(s) {}
  JsonValue(std::string s) : type_(Type::String), string_(std::move(s)) {}

  static JsonValue array() { JsonValue v; v.type_ = Type::Array; return v; }
  static JsonValue object() { JsonValue v; v.type_ = Type::Object; return v; }
  template <class T> static JsonValue array(const std::vector<T>& xs) {
    JsonValue v = array();
    for (const auto& x : xs) v.push(JsonValue(x));
    return v;
  }

  JsonValue& push(JsonValue v);
  JsonValue& set(const std::string& key, JsonValue v);

  // Doubles use %.17g; non-finite numbers become null.
  std::string dump(int indent = 2) const;

private:
  void write(std::string& out, int indent, int depth) const;

  Type type_ = Type::Null;
  bool bool_ = false;
  long long int_ = 0;
  double number_ = 0.0;
  std::string string_;
  std::vector<JsonValue> items_;
  std::vector<std::pair<std::string, JsonValue>> members_;
};

JsonValue surfaceToJson(const SurfaceFile& s, bool includeU = false);

} // namespace dck
