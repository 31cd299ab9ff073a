#pragma once

#include "theta/mesh.hpp"

#include <string>
#include <vector>

namespace theta {

/// A point on the surface, expressed relative to the root mesh so that
/// curves produced on different surgery descendants remain comparable.
struct SurfacePoint {
  enum class Kind : std::uint8_t { Vertex, EdgePoint, FacePoint };
  Kind kind = Kind::Vertex;
  int index = -1;    // root vertex / root edge / root face
  double param = 0;  // EdgePoint: fraction along the root edge (from min id)
  int face = -1;     // a root face containing the point
  Vec2 uv{0, 0};     // chart coordinates in `face`

  bool same_as(const SurfacePoint& o, double tol) const;
};

/// Open or closed polyline on the surface. Points are root-anchored;
/// consecutive points always share a root face.
struct Curve {
  std::vector<SurfacePoint> pts;
  bool closed = false;
  double length = 0;

  int segment_count() const {
    if (pts.size() < 2) return 0;
    return closed ? static_cast<int>(pts.size()) : static_cast<int>(pts.size()) - 1;
  }
  bool is_point() const { return pts.size() == 1 || length <= 0; }
};

/// Root-anchored point from a vertex of `mesh` (which may be a descendant
/// of the root).
SurfacePoint point_from_vertex(const TriMesh& mesh, int v);
/// Root-anchored point at parameter t along a (derived) mesh edge, measured
/// from the smaller vertex id end.
SurfacePoint point_on_edge(const TriMesh& mesh, int e, double t);

/// uv coordinates of a point in a specific root face (the point must lie in
/// that face's closure).
Vec2 uv_in_root_face(const TriMesh& root, const SurfacePoint& p, int root_face);
/// A root face shared by both points; -1 if none.
int shared_root_face(const TriMesh& root, const SurfacePoint& a, const SurfacePoint& b);

double segment_length(const TriMesh& root, const SurfacePoint& a, const SurfacePoint& b);

Curve make_curve(const TriMesh& root, std::vector<SurfacePoint> pts, bool closed);
Curve curve_from_vertex_chain(const TriMesh& mesh, const std::vector<int>& chain, bool closed);

double recompute_length(const TriMesh& root, const Curve& c);

/// Point at arclength s from the start of the curve.
SurfacePoint point_along(const TriMesh& root, const Curve& c, double s);

/// Resample to n points at uniform arclength (closed curves: n segments).
Curve resample_uniform(const TriMesh& root, const Curve& c, int n);

/// True when the curve has no self-intersections away from shared segment
/// endpoints. `scale` sets the coincidence tolerance.
bool curve_is_simple(const TriMesh& root, const Curve& c, double scale, std::string* why = nullptr);

/// True when the two curves meet at most in the given shared endpoints.
bool curves_interior_disjoint(const TriMesh& root, const Curve& a, const Curve& b, double scale,
                              std::string* why = nullptr);

/// Largest distance from any sample of `a` to the nearest sample of `b`
/// measured in chart space; a cheap closeness diagnostic, not a metric.
double sample_hausdorff(const TriMesh& root, const Curve& a, const Curve& b);

}  // namespace theta
