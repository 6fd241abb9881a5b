#pragma once

#include <array>
#include <utility>
#include <vector>

namespace dck {

using Face = std::array<int, 3>;

// Combinatorics of a closed triangulated surface.
//
// Vertices are 0..n-1 and every one of them must be used. Edges get ids in
// lexicographic order of their (min, max) vertex pair. Oriented edge 2e runs
// min -> max, 2e + 1 runs max -> min. Faces keep the input order and the
// input cyclic order of their vertices. Local edge a of a face joins corner a
// and corner a + 1 (mod 3).
class Triangulation {
public:
  Triangulation() = default;

  // Throws Error(NonManifold | DuplicateFace).
  static Triangulation build(const std::vector<Face>& faces);

  int vertexCount() const { return numVertices_; }
  int edgeCount() const { return static_cast<int>(edges_.size()); }
  int orientedEdgeCount() const { return 2 * edgeCount(); }
  int faceCount() const { return static_cast<int>(faces_.size()); }

  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(int f) const { return faces_[f]; }

  // (min, max) vertex pair of edge e.
  const std::array<int, 2>& edge(int e) const { return edges_[e]; }
  // -1 when {i, j} is not an edge.
  int findEdge(int i, int j) const;
  int edgeIndex(int i, int j) const; // throws when missing

  int orientedEdge(int i, int j) const;
  std::pair<int, int> orientedEdgeVertices(int oe) const;

  // Edge ids of local edges (0->1, 1->2, 2->0) of face f.
  const std::array<int, 3>& faceEdges(int f) const { return faceEdges_[f]; }
  const std::array<int, 2>& edgeFaces(int e) const { return edgeFaces_[e]; }

  const std::vector<int>& vertexFaces(int v) const { return vertexFaces_[v]; }
  const std::vector<int>& vertexNeighbors(int v) const { return vertexNeighbors_[v]; }
  int degree(int v) const { return static_cast<int>(vertexNeighbors_[v].size()); }

  int eulerCharacteristic() const { return vertexCount() - edgeCount() + faceCount(); }

private:
  int numVertices_ = 0;
  std::vector<Face> faces_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<std::array<int, 3>> faceEdges_;
  std::vector<std::array<int, 2>> edgeFaces_;
  std::vector<std::vector<int>> vertexFaces_;
  std::vector<std::vector<int>> vertexNeighbors_; // sorted
};

// Free-function spelling used by the Gauss-Bonnet checks.
inline int eulerCharacteristic(const Triangulation& t) { return t.eulerCharacteristic(); }

} // namespace dck
