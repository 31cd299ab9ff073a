#pragma once

#include "theta/curve.hpp"
#include "theta/mesh.hpp"

#include <functional>
#include <limits>
#include <vector>

namespace theta {

/// Shortest-path graph over a mesh: nodes are the mesh vertices plus a fixed
/// number of Steiner points per edge; arcs are the along-edge subsegments
/// plus straight chords between nodes on different sides of a common face.
/// Arcs are enumerated lazily, nothing quadratic is materialized.
class CurveGraph {
 public:
  CurveGraph(std::shared_ptr<const TriMesh> mesh, int steiner_per_edge = 3);

  const TriMesh& mesh() const { return *mesh_; }
  int steiner_per_edge() const { return k_; }
  int node_count() const { return nv_ + k_ * ne_; }

  int vertex_node(int v) const { return v; }
  int steiner_node(int e, int j) const { return nv_ + e * k_ + j; }
  bool is_vertex_node(int n) const { return n < nv_; }
  int node_vertex(int n) const { return n; }
  int node_edge(int n) const { return (n - nv_) / k_; }
  /// Parameter along the canonical edge direction (smaller id -> larger id).
  double node_param(int n) const { return double((n - nv_) % k_ + 1) / (k_ + 1); }

  SurfacePoint node_point(int n) const;
  Vec3 node_position(int n) const;  // requires mesh positions

  struct SearchOptions {
    const Region* region = nullptr;   // restrict to this region's faces
    bool interior_only = false;       // forbid non-endpoint nodes on the region boundary
    const std::vector<char>* forbidden = nullptr;  // extra per-node exclusions
  };

  struct PathResult {
    std::vector<int> nodes;
    double length = std::numeric_limits<double>::infinity();
    bool found = false;
  };

  /// Multi-source / multi-target shortest path; uses an A* bound when the
  /// mesh is embedded. Deterministic under ties.
  PathResult shortest_path(const std::vector<std::pair<int, double>>& sources,
                           const std::vector<int>& targets, const SearchOptions& opt) const;
  PathResult shortest_path(const std::vector<std::pair<int, double>>& sources,
                           const std::vector<int>& targets) const {
    return shortest_path(sources, targets, SearchOptions());
  }

  /// Full Dijkstra distances from the sources (infinity where unreachable).
  std::vector<double> distances(const std::vector<std::pair<int, double>>& sources,
                                const SearchOptions& opt) const;
  std::vector<double> distances(const std::vector<std::pair<int, double>>& sources) const {
    return distances(sources, SearchOptions());
  }

  /// Nodes of a region boundary loop: loop vertices plus the Steiner nodes
  /// of the loop edges.
  std::vector<int> loop_nodes(const Region& region, int loop) const;
  /// All nodes on the faces of a region.
  std::vector<int> region_nodes(const Region& region) const;

  Curve path_curve(const PathResult& path) const;

 private:
  template <typename Fn>
  void for_each_neighbor(int n, const SearchOptions& opt, Fn&& fn) const;
  bool node_admissible(const SearchOptions& opt, int n) const;
  bool node_on_region_boundary(const SearchOptions& opt, int n) const;
  Vec2 node_uv(int n, int f) const;

  std::shared_ptr<const TriMesh> mesh_;
  int k_;
  int nv_;
  int ne_;
};

}  // namespace theta
