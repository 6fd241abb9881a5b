#include "dck/mesh.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "dck/errors.h"

namespace dck {

namespace {

std::string faceString(const Face& f) {
  std::ostringstream s;
  s << "[" << f[0] << ", " << f[1] << ", " << f[2] << "]";
  return s.str();
}

} // namespace

Triangulation Triangulation::build(const std::vector<Face>& faces) {
  Triangulation t;
  t.faces_ = faces;

  int maxVertex = -1;
  std::set<std::array<int, 3>> seen;
  for (size_t fi = 0; fi < faces.size(); ++fi) {
    const Face& f = faces[fi];
    for (int v : f) {
      if (v < 0) throw Error(ErrorKind::NonManifold, "negative vertex id in face " + faceString(f));
      maxVertex = std::max(maxVertex, v);
    }
    if (f[0] == f[1] || f[1] == f[2] || f[2] == f[0]) {
      throw Error(ErrorKind::NonManifold, "face " + faceString(f) + " repeats a vertex");
    }
    std::array<int, 3> key = f;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) {
      throw Error(ErrorKind::DuplicateFace, "face " + faceString(f) + " appears more than once");
    }
  }
  if (faces.empty()) throw Error(ErrorKind::NonManifold, "empty face list");
  t.numVertices_ = maxVertex + 1;

  std::map<std::array<int, 2>, std::vector<int>> edgeToFaces;
  for (size_t fi = 0; fi < faces.size(); ++fi) {
    const Face& f = faces[fi];
    for (int a = 0; a < 3; ++a) {
      int i = f[a], j = f[(a + 1) % 3];
      edgeToFaces[{std::min(i, j), std::max(i, j)}].push_back(static_cast<int>(fi));
    }
  }

  t.edges_.reserve(edgeToFaces.size());
  t.edgeFaces_.reserve(edgeToFaces.size());
  for (const auto& [key, incident] : edgeToFaces) {
    if (incident.size() != 2) {
      std::ostringstream msg;
      msg << "edge {" << key[0] << ", " << key[1] << "} lies in " << incident.size()
          << " faces (closed surfaces need exactly 2)";
      throw Error(ErrorKind::NonManifold, msg.str());
    }
    t.edges_.push_back(key);
    t.edgeFaces_.push_back({incident[0], incident[1]});
  }

  t.faceEdges_.resize(faces.size());
  for (size_t fi = 0; fi < faces.size(); ++fi) {
    for (int a = 0; a < 3; ++a) t.faceEdges_[fi][a] = t.edgeIndex(faces[fi][a], faces[fi][(a + 1) % 3]);
  }

  t.vertexFaces_.assign(t.numVertices_, {});
  t.vertexNeighbors_.assign(t.numVertices_, {});
  for (size_t fi = 0; fi < faces.size(); ++fi) {
    for (int v : faces[fi]) t.vertexFaces_[v].push_back(static_cast<int>(fi));
  }
  for (const auto& e : t.edges_) {
    t.vertexNeighbors_[e[0]].push_back(e[1]);
    t.vertexNeighbors_[e[1]].push_back(e[0]);
  }

  // Manifold condition: the link of each vertex is one cycle.
  for (int v = 0; v < t.numVertices_; ++v) {
    const auto& incident = t.vertexFaces_[v];
    if (incident.empty()) {
      throw Error(ErrorKind::NonManifold, "vertex " + std::to_string(v) + " is not used by any face");
    }
    std::map<int, std::vector<int>> linkAdjacency;
    for (int fi : incident) {
      const Face& f = faces[fi];
      int a = static_cast<int>(std::find(f.begin(), f.end(), v) - f.begin());
      int p = f[(a + 1) % 3], q = f[(a + 2) % 3];
      linkAdjacency[p].push_back(q);
      linkAdjacency[q].push_back(p);
    }
    for (const auto& [w, adj] : linkAdjacency) {
      if (adj.size() != 2) {
        throw Error(ErrorKind::NonManifold, "link of vertex " + std::to_string(v) + " is not a cycle");
      }
    }
    int start = linkAdjacency.begin()->first;
    int prev = -1, cur = start;
    size_t steps = 0;
    do {
      const auto& adj = linkAdjacency[cur];
      int next = (adj[0] != prev) ? adj[0] : adj[1];
      prev = cur;
      cur = next;
      ++steps;
    } while (cur != start && steps <= incident.size());
    if (steps != incident.size()) {
      throw Error(ErrorKind::NonManifold,
                  "link of vertex " + std::to_string(v) + " splits into several cycles");
    }
  }
  return t;
}

int Triangulation::findEdge(int i, int j) const {
  std::array<int, 2> key{std::min(i, j), std::max(i, j)};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return -1;
  return static_cast<int>(it - edges_.begin());
}

int Triangulation::edgeIndex(int i, int j) const {
  int e = findEdge(i, j);
  if (e < 0) {
    throw Error(ErrorKind::Validation,
                "no edge {" + std::to_string(i) + ", " + std::to_string(j) + "}");
  }
  return e;
}

int Triangulation::orientedEdge(int i, int j) const {
  int e = edgeIndex(i, j);
  return i < j ? 2 * e : 2 * e + 1;
}

std::pair<int, int> Triangulation::orientedEdgeVertices(int oe) const {
  const auto& e = edges_[oe / 2];
  return (oe % 2 == 0) ? std::pair{e[0], e[1]} : std::pair{e[1], e[0]};
}

} // namespace dck
