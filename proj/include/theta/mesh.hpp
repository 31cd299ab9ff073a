#pragma once

#include "theta/core.hpp"

#include <array>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

namespace theta {

/// Placement of a face inside a face of the root mesh. All derived meshes
/// (refinements, cut embeddings) keep exact 2D coordinates in the frame of
/// the root face they subdivide, so lengths and areas never drift and curves
/// from different derived meshes are directly comparable.
struct FaceChart {
  int root_face = -1;
  std::array<Vec2, 3> corner;
};

/// Where a vertex of a derived mesh sits relative to the root mesh.
struct VertexAnchor {
  enum class Kind : std::uint8_t { RootVertex, RootEdgePoint, FaceInterior };
  Kind kind = Kind::RootVertex;
  int index = -1;     // root vertex id / root edge id / root face id
  double param = 0;   // RootEdgePoint: fraction from edge endpoint u to v
  Vec2 uv{0, 0};      // FaceInterior: chart coordinates in the root face
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool manifold = false;
  bool oriented = false;
  bool connected = false;
  int euler = 0;
  int boundary_loop_count = 0;
  bool is_disk = false;
  bool is_sphere = false;
  bool ok() const { return violations.empty(); }
};

/// Piecewise-flat triangulated surface. Immutable after construction; the
/// metric lives in the edge lengths, embedded positions are optional and
/// only used for generation, A* heuristics and export.
class TriMesh {
 public:
  using FaceV = std::array<int, 3>;

  static std::shared_ptr<const TriMesh> from_positions(std::vector<FaceV> faces,
                                                       std::vector<Vec3> positions);
  /// Intrinsic construction; `lengths` maps unordered vertex pairs to
  /// positive edge lengths and must cover every face side. Positions, when
  /// given, are carried along for export and search heuristics only — the
  /// lengths stay authoritative.
  static std::shared_ptr<const TriMesh> from_lengths(
      int n_vertices, std::vector<FaceV> faces,
      const std::vector<std::pair<std::array<int, 2>, double>>& lengths,
      std::vector<Vec3> positions = {});
  /// Construction for surgery results: charts give the geometry, `root`
  /// is the mesh the chart coordinates refer to.
  static std::shared_ptr<const TriMesh> derived(int n_vertices, std::vector<FaceV> faces,
                                                std::vector<FaceChart> charts,
                                                std::vector<VertexAnchor> anchors,
                                                std::shared_ptr<const TriMesh> root);

  int vertex_count() const { return nv_; }
  int face_count() const { return static_cast<int>(faces_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const FaceV& face(int f) const { return faces_[f]; }
  const std::vector<FaceV>& faces() const { return faces_; }

  std::array<int, 2> edge_vertices(int e) const { return edges_[e]; }
  int edge_between(int u, int v) const;
  double edge_length(int e) const { return edge_length_[e]; }
  /// Faces incident to an edge; second entry is -1 on the boundary.
  std::array<int, 2> edge_faces(int e) const { return edge_faces_[e]; }
  bool boundary_edge(int e) const { return edge_faces_[e][1] < 0; }
  const std::array<int, 3>& face_edges(int f) const { return face_edges_[f]; }
  const std::vector<int>& vertex_edges(int v) const { return vertex_edges_[v]; }
  const std::vector<int>& vertex_faces(int v) const { return vertex_faces_[v]; }
  bool boundary_vertex(int v) const;

  double face_area(int f) const { return face_area_[f]; }
  double total_area() const { return total_area_; }

  const FaceChart& chart(int f) const { return charts_[f]; }
  const VertexAnchor& anchor(int v) const { return anchors_[v]; }
  /// Chart coordinates of a vertex inside one of its faces.
  Vec2 vertex_uv(int f, int v) const;
  int face_corner(int f, int v) const;

  /// The mesh whose faces the charts refer to (this mesh when self-rooted).
  const TriMesh* root() const { return root_ ? root_.get() : this; }
  std::shared_ptr<const TriMesh> root_ptr(const std::shared_ptr<const TriMesh>& self) const {
    return root_ ? root_ : self;
  }
  bool self_rooted() const { return root_ == nullptr; }

  bool has_positions() const { return !positions_.empty(); }
  const Vec3& position(int v) const { return positions_[v]; }
  const std::vector<Vec3>& positions() const { return positions_; }

  /// Total angle deficit (2pi minus incident corner angles) over the given
  /// interior vertices; used by the flatness test.
  double angle_deficit(int v) const;
  double corner_angle(int f, int corner) const;

 private:
  TriMesh() = default;
  void build_connectivity();
  void build_charts_from_lengths();
  void finish();

  int nv_ = 0;
  std::vector<FaceV> faces_;
  std::vector<std::array<int, 2>> edges_;           // canonical u < v
  std::vector<double> edge_length_;
  std::vector<std::array<int, 2>> edge_faces_;
  std::vector<std::array<int, 3>> face_edges_;      // edge opposite corner i... see cpp
  std::vector<std::vector<int>> vertex_edges_;
  std::vector<std::vector<int>> vertex_faces_;
  std::vector<double> face_area_;
  double total_area_ = 0;
  std::vector<FaceChart> charts_;
  std::vector<VertexAnchor> anchors_;
  std::vector<Vec3> positions_;
  std::shared_ptr<const TriMesh> root_;
  std::unordered_map<std::uint64_t, int> edge_index_;
};

ValidationReport validate(const TriMesh& mesh);

/// Midpoint 1->4 subdivision applied `depth` times; intrinsic lengths are
/// inherited from the flat faces, so the area is preserved exactly.
std::shared_ptr<const TriMesh> refine(const std::shared_ptr<const TriMesh>& mesh, int depth);

/// Connected sub-surface given by a face subset. Immutable.
class Region {
 public:
  Region(std::shared_ptr<const TriMesh> mesh, std::vector<int> faces);
  static Region whole(std::shared_ptr<const TriMesh> mesh);

  const TriMesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const TriMesh>& mesh_ptr() const { return mesh_; }
  const std::vector<int>& faces() const { return faces_; }
  int face_count() const { return static_cast<int>(faces_.size()); }
  bool contains_face(int f) const { return f >= 0 && f < (int)in_region_.size() && in_region_[f]; }
  bool contains_vertex(int v) const;
  bool contains_edge(int e) const;  // at least one incident face in region
  bool interior_edge(int e) const;  // both incident faces in region
  double area() const { return area_; }

  /// Boundary loops as closed vertex chains, oriented with the region on
  /// the left. Each loop starts at its smallest vertex id; loops sorted.
  const std::vector<std::vector<int>>& boundary_loops() const { return loops_; }
  double boundary_length(int loop) const;
  double total_boundary_length() const;
  bool boundary_has_vertex(int v) const { return v < (int)on_boundary_.size() && on_boundary_[v]; }
  bool has_pinch() const { return has_pinch_; }

  int euler_characteristic() const { return euler_; }
  bool is_disk() const { return euler_ == 1 && loops_.size() == 1 && !has_pinch_; }
  bool is_annulus() const { return euler_ == 0 && loops_.size() == 2 && !has_pinch_; }
  bool is_sphere() const { return euler_ == 2 && loops_.empty(); }

  /// Total angle deficit over interior vertices, for the flatness test.
  double interior_angle_deficit() const;

 private:
  std::shared_ptr<const TriMesh> mesh_;
  std::vector<int> faces_;
  std::vector<char> in_region_;
  std::vector<char> vertex_in_;
  std::vector<char> on_boundary_;
  std::vector<std::vector<int>> loops_;
  double area_ = 0;
  int euler_ = 0;
  bool has_pinch_ = false;
};

}  // namespace theta
