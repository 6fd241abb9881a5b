#include "dck/surface_io.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dck/errors.h"

#ifndef DCK_DEFAULT_FIXTURES
#define DCK_DEFAULT_FIXTURES "fixtures"
#endif

namespace dck {

namespace {

using nlohmann::json;

[[noreturn]] void parseError(const std::string& msg) { throw Error(ErrorKind::Parse, msg); }

const json& member(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) parseError(where + ": missing \"" + key + "\"");
  return *it;
}

double number(const json& obj, const char* key, const std::string& where) {
  const json& v = member(obj, key, where);
  if (!v.is_number()) parseError(where + ": \"" + key + "\" must be a number");
  return v.get<double>();
}

int integer(const json& obj, const char* key, const std::string& where) {
  const json& v = member(obj, key, where);
  if (!v.is_number_integer()) parseError(where + ": \"" + key + "\" must be an integer");
  return v.get<int>();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string pairName(int i, int j) {
  return "{" + std::to_string(i) + ", " + std::to_string(j) + "}";
}

} // namespace

SurfaceFile parseSurface(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    parseError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) parseError("top level must be an object");

  SurfaceFile s;
  s.schemaVersion = integer(root, "schema_version", "file");
  if (s.schemaVersion != kSchemaVersion) {
    parseError("unsupported schema_version " + std::to_string(s.schemaVersion));
  }
  const json& bgField = member(root, "background", "file");
  if (!bgField.is_string()) parseError("background must be a string");
  auto bg = parseBackground(bgField.get<std::string>());
  if (!bg) parseError("unknown background \"" + bgField.get<std::string>() + "\"");
  s.data.background = *bg;

  // vertices
  const json& verts = member(root, "vertices", "file");
  if (!verts.is_array() || verts.empty()) parseError("vertices must be a non-empty array");
  const int n = static_cast<int>(verts.size());
  std::vector<double> alpha(n), factor(n);
  std::vector<bool> seen(n, false);
  int withU = 0;
  for (size_t k = 0; k < verts.size(); ++k) {
    const json& v = verts[k];
    std::string where = "vertices[" + std::to_string(k) + "]";
    if (!v.is_object()) parseError(where + " must be an object");
    int id = integer(v, "id", where);
    if (id < 0 || id >= n) parseError(where + ": ids must be 0.." + std::to_string(n - 1));
    if (seen[id]) parseError(where + ": duplicate vertex id " + std::to_string(id));
    seen[id] = true;
    alpha[id] = number(v, "alpha", where);
    if (v.contains("f")) {
      factor[id] = number(v, "f", where);
    } else if (v.contains("u")) {
      factor[id] = number(v, "u", where);
      ++withU;
    } else {
      parseError(where + ": missing \"f\" (or \"u\")");
    }
  }
  if (withU != 0 && withU != n) parseError("vertices must all give f or all give u");
  s.factorsGivenAsU = (withU == n);

  // faces
  const json& faces = member(root, "faces", "file");
  if (!faces.is_array() || faces.empty()) parseError("faces must be a non-empty array");
  for (size_t k = 0; k < faces.size(); ++k) {
    const json& f = faces[k];
    std::string where = "face " + std::to_string(k);
    if (!f.is_array() || f.size() != 3) parseError(where + " must be [i, j, k]");
    Face face;
    for (int a = 0; a < 3; ++a) {
      if (!f[a].is_number_integer()) parseError(where + ": vertex ids must be integers");
      face[a] = f[a].get<int>();
      if (face[a] < 0 || face[a] >= n) {
        parseError(where + " references missing vertex " + std::to_string(face[a]));
      }
    }
    s.faces.push_back(face);
  }

  // edges
  const json& edges = member(root, "edges", "file");
  if (!edges.is_array()) parseError("edges must be an array");
  std::map<std::pair<int, int>, double> etaOf;
  for (size_t k = 0; k < edges.size(); ++k) {
    const json& e = edges[k];
    std::string where = "edges[" + std::to_string(k) + "]";
    if (!e.is_object()) parseError(where + " must be an object");
    int i = integer(e, "i", where), j = integer(e, "j", where);
    if (i < 0 || i >= n || j < 0 || j >= n || i == j) parseError(where + ": bad endpoints " + pairName(i, j));
    auto key = std::minmax(i, j);
    if (etaOf.count(key)) parseError(where + ": edge " + pairName(i, j) + " listed twice");
    etaOf[key] = number(e, "eta", where);
  }

  s.mesh = Triangulation::build(s.faces);
  if (s.mesh.vertexCount() != n) {
    throw Error(ErrorKind::Validation, "vertex " + std::to_string(s.mesh.vertexCount()) +
                                           " is not used by any face");
  }
  s.data.alpha = alpha;
  s.data.eta.resize(s.mesh.edgeCount());
  for (int f = 0; f < s.mesh.faceCount(); ++f) {
    for (int e : s.mesh.faceEdges(f)) {
      auto [i, j] = s.mesh.edge(e);
      auto it = etaOf.find({i, j});
      if (it == etaOf.end()) {
        parseError("face " + std::to_string(f) + ": edge " + pairName(i, j) + " is not listed in edges");
      }
      s.data.eta[e] = it->second;
    }
  }
  if (static_cast<int>(etaOf.size()) != s.mesh.edgeCount()) {
    for (const auto& [key, eta] : etaOf) {
      if (s.mesh.findEdge(key.first, key.second) < 0) {
        parseError("edge " + pairName(key.first, key.second) + " belongs to no face");
      }
    }
  }

  s.data.f = factor;
  if (s.factorsGivenAsU) s.data.f = fFromU(s.data, factor);

  if (root.contains("target_K")) {
    s.targetK = parseTargetK(root.dump(), n);
  }
  if (root.contains("solver")) {
    const json& sv = root["solver"];
    if (!sv.is_object()) parseError("solver must be an object");
    if (sv.contains("max_iterations")) s.solver.maxIterations = integer(sv, "max_iterations", "solver");
    if (sv.contains("grad_tolerance")) s.solver.gradTolerance = number(sv, "grad_tolerance", "solver");
    if (sv.contains("quadrature_points")) s.solver.quadraturePoints = integer(sv, "quadrature_points", "solver");
  }
  return s;
}

std::vector<double> parseTargetK(const std::string& text, int vertexCount) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    parseError(std::string("invalid target JSON: ") + e.what());
  }
  const json* list = &root;
  if (root.is_object()) list = &member(root, "target_K", "target");
  if (!list->is_array()) parseError("target_K must be an array of {id, K}");
  if (static_cast<int>(list->size()) != vertexCount) {
    parseError("target_K needs one entry per vertex (" + std::to_string(vertexCount) + ")");
  }
  std::vector<double> K(vertexCount);
  std::vector<bool> seen(vertexCount, false);
  for (size_t k = 0; k < list->size(); ++k) {
    const json& item = (*list)[k];
    std::string where = "target_K[" + std::to_string(k) + "]";
    if (!item.is_object()) parseError(where + " must be an object");
    int id = integer(item, "id", where);
    if (id < 0 || id >= vertexCount || seen[id]) parseError(where + ": bad or repeated id");
    seen[id] = true;
    K[id] = number(item, "K", where);
  }
  return K;
}

SurfaceFile readSurface(const std::string& path) { return parseSurface(slurp(path)); }

SurfaceFile readObjConnectivity(const std::string& path) {
  std::istringstream in(slurp(path));
  std::string line;
  int vertexLines = 0;
  SurfaceFile s;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "v") {
      ++vertexLines;
    } else if (tag == "f") {
      std::vector<int> idx;
      std::string tok;
      while (ls >> tok) {
        try {
          int v = std::stoi(tok.substr(0, tok.find('/')));
          idx.push_back(v > 0 ? v - 1 : vertexLines + v);
        } catch (const std::exception&) {
          parseError("line " + std::to_string(lineNo) + ": bad face index \"" + tok + "\"");
        }
      }
      if (idx.size() != 3) parseError("line " + std::to_string(lineNo) + ": only triangles are supported");
      for (int v : idx) {
        if (v < 0 || v >= vertexLines) {
          parseError("face " + std::to_string(s.faces.size()) + " references missing vertex " + std::to_string(v));
        }
      }
      s.faces.push_back({idx[0], idx[1], idx[2]});
    }
  }
  if (s.faces.empty()) parseError(path + ": no faces");
  s.mesh = Triangulation::build(s.faces);
  if (s.mesh.vertexCount() != vertexLines) {
    throw Error(ErrorKind::Validation, "OBJ has vertices not used by any face");
  }
  s.data.background = Background::Euclidean;
  s.data.alpha.assign(vertexLines, 0.0);
  s.data.f.assign(vertexLines, 0.0);
  s.data.eta.assign(s.mesh.edgeCount(), 1.0);
  return s;
}

SurfaceFile loadSurface(const std::string& path) {
  std::string resolved = resolveInputPath(path);
  std::string ext = std::filesystem::path(resolved).extension().string();
  for (char& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (ext == ".obj") return readObjConnectivity(resolved);
  return readSurface(resolved);
}

std::string resolveInputPath(const std::string& path) {
  namespace fs = std::filesystem;
  fs::path p(path);
  if (fs::exists(p) || p.is_absolute()) return path;
  if (const char* env = std::getenv("DCK_FIXTURES"); env && *env) {
    fs::path candidate = fs::path(env) / p;
    if (fs::exists(candidate)) return candidate.string();
  }
  fs::path bundled = fs::path(DCK_DEFAULT_FIXTURES) / p;
  if (fs::exists(bundled)) return bundled.string();
  return path;
}

// --- JsonValue ---------------------------------------------------------------

JsonValue& JsonValue::push(JsonValue v) {
  if (type_ == Type::Null) type_ = Type::Array;
  items_.push_back(std::move(v));
  return items_.back();
}

JsonValue& JsonValue::set(const std::string& key, JsonValue v) {
  if (type_ == Type::Null) type_ = Type::Object;
  for (auto& [k, existing] : members_) {
    if (k == key) {
      existing = std::move(v);
      return existing;
    }
  }
  members_.emplace_back(key, std::move(v));
  return members_.back().second;
}

std::string JsonValue::dump(int indent) const {
  std::string out;
  write(out, indent, 0);
  out += '\n';
  return out;
}

void JsonValue::write(std::string& out, int indent, int depth) const {
  auto newline = [&](int d) {
    if (indent <= 0) return;
    out += '\n';
    out.append(static_cast<size_t>(indent * d), ' ');
  };
  switch (type_) {
  case Type::Null: out += "null"; break;
  case Type::Bool: out += bool_ ? "true" : "false"; break;
  case Type::Int: out += std::to_string(int_); break;
  case Type::Number: {
    if (!std::isfinite(number_)) {
      out += "null";
      break;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", number_);
    out += buf;
    break;
  }
  case Type::String: out += nlohmann::json(string_).dump(); break;
  case Type::Array: {
    if (items_.empty()) {
      out += "[]";
      break;
    }
    // Arrays of scalars stay on one line.
    bool flat = true;
    for (const auto& it : items_) flat = flat && it.type_ != Type::Array && it.type_ != Type::Object;
    out += '[';
    for (size_t k = 0; k < items_.size(); ++k) {
      if (k) out += flat ? ", " : ",";
      if (!flat) newline(depth + 1);
      items_[k].write(out, indent, depth + 1);
    }
    if (!flat) newline(depth);
    out += ']';
    break;
  }
  case Type::Object: {
    if (members_.empty()) {
      out += "{}";
      break;
    }
    out += '{';
    for (size_t k = 0; k < members_.size(); ++k) {
      if (k) out += ',';
      newline(depth + 1);
      out += nlohmann::json(members_[k].first).dump();
      out += indent > 0 ? ": " : ":";
      members_[k].second.write(out, indent, depth + 1);
    }
    newline(depth);
    out += '}';
    break;
  }
  }
}

JsonValue surfaceToJson(const SurfaceFile& s, bool includeU) {
  JsonValue root = JsonValue::object();
  root.set("schema_version", s.schemaVersion);
  root.set("background", backgroundName(s.data.background));
  JsonValue verts = JsonValue::array();
  std::vector<double> u;
  if (includeU) u = uFromF(s.data);
  for (int v = 0; v < s.mesh.vertexCount(); ++v) {
    JsonValue item = JsonValue::object();
    item.set("id", v);
    item.set("alpha", s.data.alpha[v]);
    item.set("f", s.data.f[v]);
    if (includeU) item.set("u", u[v]);
    verts.push(std::move(item));
  }
  root.set("vertices", std::move(verts));
  JsonValue edges = JsonValue::array();
  for (int e = 0; e < s.mesh.edgeCount(); ++e) {
    JsonValue item = JsonValue::object();
    item.set("i", s.mesh.edge(e)[0]);
    item.set("j", s.mesh.edge(e)[1]);
    item.set("eta", s.data.eta[e]);
    edges.push(std::move(item));
  }
  root.set("edges", std::move(edges));
  JsonValue faces = JsonValue::array();
  for (const Face& f : s.mesh.faces()) faces.push(JsonValue::array(std::vector<int>(f.begin(), f.end())));
  root.set("faces", std::move(faces));
  if (s.targetK) {
    JsonValue tk = JsonValue::array();
    for (size_t v = 0; v < s.targetK->size(); ++v) {
      JsonValue item = JsonValue::object();
      item.set("id", static_cast<int>(v));
      item.set("K", (*s.targetK)[v]);
      tk.push(std::move(item));
    }
    root.set("target_K", std::move(tk));
  }
  if (s.solver.maxIterations || s.solver.gradTolerance || s.solver.quadraturePoints) {
    JsonValue sv = JsonValue::object();
    if (s.solver.maxIterations) sv.set("max_iterations", *s.solver.maxIterations);
    if (s.solver.gradTolerance) sv.set("grad_tolerance", *s.solver.gradTolerance);
    if (s.solver.quadraturePoints) sv.set("quadrature_points", *s.solver.quadraturePoints);
    root.set("solver", std::move(sv));
  }
  return root;
}

} // namespace dck
