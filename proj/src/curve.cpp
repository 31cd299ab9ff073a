#include "theta/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace theta {

bool SurfacePoint::same_as(const SurfacePoint& o, double tol) const {
  if (kind == Kind::Vertex && o.kind == Kind::Vertex) return index == o.index;
  if (kind == Kind::EdgePoint && o.kind == Kind::EdgePoint && index == o.index)
    return std::abs(param - o.param) <= tol;
  if (face == o.face) return (uv - o.uv).norm() <= tol;
  return false;
}

namespace {

SurfacePoint from_anchor(const TriMesh& root, const VertexAnchor& a) {
  SurfacePoint p;
  switch (a.kind) {
    case VertexAnchor::Kind::RootVertex: {
      p.kind = SurfacePoint::Kind::Vertex;
      p.index = a.index;
      p.face = root.vertex_faces(a.index).front();
      p.uv = root.vertex_uv(p.face, a.index);
      break;
    }
    case VertexAnchor::Kind::RootEdgePoint: {
      p.kind = SurfacePoint::Kind::EdgePoint;
      p.index = a.index;
      p.param = a.param;
      p.face = root.edge_faces(a.index)[0];
      const auto [u, v] = root.edge_vertices(a.index);
      p.uv = (1 - a.param) * root.vertex_uv(p.face, u) + a.param * root.vertex_uv(p.face, v);
      break;
    }
    case VertexAnchor::Kind::FaceInterior: {
      p.kind = SurfacePoint::Kind::FacePoint;
      p.index = a.index;
      p.face = a.index;
      p.uv = a.uv;
      break;
    }
  }
  return p;
}

// Snap a point expressed in a root face to a vertex or edge of that face
// when it lies on the boundary (within tol relative to the face scale).
SurfacePoint classify_in_face(const TriMesh& root, int root_face, const Vec2& uv) {
  const FaceChart& ch = root.chart(root_face);
  const auto& fc = root.face(root_face);
  double scale = 0;
  for (int i = 0; i < 3; ++i)
    scale = std::max(scale, (ch.corner[i] - ch.corner[(i + 1) % 3]).norm());
  const double tol = kParamSnapTol * scale;
  for (int i = 0; i < 3; ++i) {
    if ((uv - ch.corner[i]).norm() <= tol) {
      SurfacePoint p;
      p.kind = SurfacePoint::Kind::Vertex;
      p.index = fc[i];
      p.face = root_face;
      p.uv = ch.corner[i];
      return p;
    }
  }
  for (int i = 0; i < 3; ++i) {
    const Vec2 a = ch.corner[i], b = ch.corner[(i + 1) % 3];
    const Vec2 d = b - a;
    const double len2 = d.squaredNorm();
    const double t = (uv - a).dot(d) / len2;
    if (t < -kParamSnapTol || t > 1 + kParamSnapTol) continue;
    const Vec2 foot = a + t * d;
    if ((uv - foot).norm() <= tol) {
      const int e = root.edge_between(fc[i], fc[(i + 1) % 3]);
      SurfacePoint p;
      p.kind = SurfacePoint::Kind::EdgePoint;
      p.index = e;
      // params are measured from the smaller endpoint id
      p.param = root.edge_vertices(e)[0] == fc[i] ? t : 1 - t;
      p.param = std::clamp(p.param, 0.0, 1.0);
      p.face = root_face;
      p.uv = foot;
      return p;
    }
  }
  SurfacePoint p;
  p.kind = SurfacePoint::Kind::FacePoint;
  p.index = root_face;
  p.face = root_face;
  p.uv = uv;
  return p;
}

}  // namespace

SurfacePoint point_from_vertex(const TriMesh& mesh, int v) {
  return from_anchor(*mesh.root(), mesh.anchor(v));
}

SurfacePoint point_on_edge(const TriMesh& mesh, int e, double t) {
  const TriMesh& root = *mesh.root();
  const auto [u, v] = mesh.edge_vertices(e);
  if (t <= kParamSnapTol) return point_from_vertex(mesh, u);
  if (t >= 1 - kParamSnapTol) return point_from_vertex(mesh, v);
  const VertexAnchor& au = mesh.anchor(u);
  const VertexAnchor& av = mesh.anchor(v);
  auto param_on = [&root](const VertexAnchor& a, int e2) -> double {
    if (a.kind == VertexAnchor::Kind::RootEdgePoint && a.index == e2) return a.param;
    if (a.kind == VertexAnchor::Kind::RootVertex) {
      const auto ev = root.edge_vertices(e2);
      if (ev[0] == a.index) return 0.0;
      if (ev[1] == a.index) return 1.0;
    }
    return -1.0;
  };
  int candidate_edge = -1;
  if (au.kind == VertexAnchor::Kind::RootEdgePoint) candidate_edge = au.index;
  if (av.kind == VertexAnchor::Kind::RootEdgePoint) {
    if (candidate_edge >= 0 && av.index != candidate_edge)
      candidate_edge = -1;
    else if (candidate_edge < 0)
      candidate_edge = av.index;
  }
  if (au.kind == VertexAnchor::Kind::RootVertex && av.kind == VertexAnchor::Kind::RootVertex)
    candidate_edge = root.edge_between(au.index, av.index);
  if (candidate_edge >= 0) {
    const double tu = param_on(au, candidate_edge);
    const double tv = param_on(av, candidate_edge);
    if (tu >= 0 && tv >= 0) {
      SurfacePoint p;
      p.kind = SurfacePoint::Kind::EdgePoint;
      p.index = candidate_edge;
      p.param = (1 - t) * tu + t * tv;
      p.face = root.edge_faces(candidate_edge)[0];
      const auto [ru, rv] = root.edge_vertices(candidate_edge);
      p.uv = (1 - p.param) * root.vertex_uv(p.face, ru) + p.param * root.vertex_uv(p.face, rv);
      return p;
    }
  }
  // interior of a root face
  const int f = mesh.edge_faces(e)[0];
  const int root_face = mesh.chart(f).root_face;
  const Vec2 uvu = mesh.chart(f).corner[mesh.face_corner(f, u)];
  const Vec2 uvv = mesh.chart(f).corner[mesh.face_corner(f, v)];
  return classify_in_face(root, root_face, (1 - t) * uvu + t * uvv);
}

Vec2 uv_in_root_face(const TriMesh& root, const SurfacePoint& p, int root_face) {
  switch (p.kind) {
    case SurfacePoint::Kind::Vertex:
      return root.vertex_uv(root_face, p.index);
    case SurfacePoint::Kind::EdgePoint: {
      const auto [u, v] = root.edge_vertices(p.index);
      return (1 - p.param) * root.vertex_uv(root_face, u) + p.param * root.vertex_uv(root_face, v);
    }
    case SurfacePoint::Kind::FacePoint:
      require(p.face == root_face, "uv_in_root_face: face point queried in a different face");
      return p.uv;
  }
  return Vec2(0, 0);
}

namespace {
template <typename Fn>
void for_each_candidate_face(const TriMesh& root, const SurfacePoint& p, Fn&& fn) {
  switch (p.kind) {
    case SurfacePoint::Kind::Vertex:
      for (int f : root.vertex_faces(p.index)) fn(f);
      break;
    case SurfacePoint::Kind::EdgePoint:
      for (int f : root.edge_faces(p.index))
        if (f >= 0) fn(f);
      break;
    case SurfacePoint::Kind::FacePoint:
      fn(p.index);
      break;
  }
}
}  // namespace

int shared_root_face(const TriMesh& root, const SurfacePoint& a, const SurfacePoint& b) {
  int best = -1;
  for_each_candidate_face(root, a, [&](int fa) {
    if (best >= 0) return;
    for_each_candidate_face(root, b, [&](int fb) {
      if (best < 0 && fa == fb) best = fa;
    });
  });
  return best;
}

double segment_length(const TriMesh& root, const SurfacePoint& a, const SurfacePoint& b) {
  const int f = shared_root_face(root, a, b);
  require(f >= 0, "segment_length: points do not share a root face");
  return (uv_in_root_face(root, a, f) - uv_in_root_face(root, b, f)).norm();
}

Curve make_curve(const TriMesh& root, std::vector<SurfacePoint> pts, bool closed) {
  Curve c;
  const double tol = kParamSnapTol;
  for (auto& p : pts) {
    if (!c.pts.empty() && c.pts.back().same_as(p, tol)) continue;
    c.pts.push_back(p);
  }
  if (closed && c.pts.size() > 1 && c.pts.front().same_as(c.pts.back(), tol)) c.pts.pop_back();
  c.closed = closed;
  c.length = recompute_length(root, c);
  return c;
}

Curve curve_from_vertex_chain(const TriMesh& mesh, const std::vector<int>& chain, bool closed) {
  std::vector<SurfacePoint> pts;
  pts.reserve(chain.size());
  for (int v : chain) pts.push_back(point_from_vertex(mesh, v));
  return make_curve(*mesh.root(), std::move(pts), closed);
}

double recompute_length(const TriMesh& root, const Curve& c) {
  double sum = 0;
  const int n = static_cast<int>(c.pts.size());
  for (int i = 0; i + 1 < n; ++i) sum += segment_length(root, c.pts[i], c.pts[i + 1]);
  if (c.closed && n > 1) sum += segment_length(root, c.pts[n - 1], c.pts[0]);
  return sum;
}

SurfacePoint point_along(const TriMesh& root, const Curve& c, double s) {
  require(!c.pts.empty(), "point_along: empty curve");
  const int segs = c.segment_count();
  if (segs == 0 || s <= 0) return c.pts[0];
  double acc = 0;
  for (int i = 0; i < segs; ++i) {
    const SurfacePoint& a = c.pts[i];
    const SurfacePoint& b = c.pts[(i + 1) % c.pts.size()];
    const double l = segment_length(root, a, b);
    if (acc + l >= s || i == segs - 1) {
      const double t = l > 0 ? std::clamp((s - acc) / l, 0.0, 1.0) : 0.0;
      if (t <= 0) return a;
      if (t >= 1) return b;
      const int f = shared_root_face(root, a, b);
      const Vec2 uv = (1 - t) * uv_in_root_face(root, a, f) + t * uv_in_root_face(root, b, f);
      return classify_in_face(root, f, uv);
    }
    acc += l;
  }
  return c.pts.back();
}

Curve resample_uniform(const TriMesh& root, const Curve& c, int n) {
  require(n >= 2, "resample_uniform: n >= 2");
  const double L = c.length;
  std::vector<SurfacePoint> pts;
  if (c.closed) {
    for (int i = 0; i < n; ++i) pts.push_back(point_along(root, c, L * i / n));
  } else {
    for (int i = 0; i < n; ++i) pts.push_back(point_along(root, c, L * i / (n - 1)));
  }
  return make_curve(root, std::move(pts), c.closed);
}

namespace {

struct Seg {
  Vec2 a, b;
  int idx;
};

bool segments_cross(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2, double eps) {
  auto orient = [](const Vec2& a, const Vec2& b, const Vec2& c) {
    return (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
  };
  auto on_segment = [eps](const Vec2& a, const Vec2& b, const Vec2& p) {
    const Vec2 d = b - a;
    const double len2 = d.squaredNorm();
    if (len2 <= eps * eps) return (p - a).norm() <= eps;
    const double t = std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
    return (a + t * d - p).norm() <= eps;
  };
  const double s = std::max({(p2 - p1).norm(), (q2 - q1).norm(), eps});
  const double band = eps * s;
  const double o1 = orient(p1, p2, q1);
  const double o2 = orient(p1, p2, q2);
  const double o3 = orient(q1, q2, p1);
  const double o4 = orient(q1, q2, p2);
  if (((o1 > band && o2 < -band) || (o1 < -band && o2 > band)) &&
      ((o3 > band && o4 < -band) || (o3 < -band && o4 > band)))
    return true;
  if (std::abs(o1) <= band && on_segment(p1, p2, q1)) return true;
  if (std::abs(o2) <= band && on_segment(p1, p2, q2)) return true;
  if (std::abs(o3) <= band && on_segment(q1, q2, p1)) return true;
  if (std::abs(o4) <= band && on_segment(q1, q2, p2)) return true;
  return false;
}

// Segments of a curve bucketed per root face; a segment along a root edge is
// pushed into both incident faces.
void bucket_segments(const TriMesh& root, const Curve& c, std::map<int, std::vector<Seg>>& out) {
  const int n = static_cast<int>(c.pts.size());
  const int segs = c.segment_count();
  for (int i = 0; i < segs; ++i) {
    const SurfacePoint& a = c.pts[i];
    const SurfacePoint& b = c.pts[(i + 1) % n];
    int shared_edge = -1;
    if (a.kind == SurfacePoint::Kind::EdgePoint && b.kind == SurfacePoint::Kind::EdgePoint &&
        a.index == b.index)
      shared_edge = a.index;
    else if (a.kind == SurfacePoint::Kind::Vertex && b.kind == SurfacePoint::Kind::EdgePoint) {
      const auto ev = root.edge_vertices(b.index);
      if (ev[0] == a.index || ev[1] == a.index) shared_edge = b.index;
    } else if (b.kind == SurfacePoint::Kind::Vertex && a.kind == SurfacePoint::Kind::EdgePoint) {
      const auto ev = root.edge_vertices(a.index);
      if (ev[0] == b.index || ev[1] == b.index) shared_edge = a.index;
    } else if (a.kind == SurfacePoint::Kind::Vertex && b.kind == SurfacePoint::Kind::Vertex) {
      shared_edge = root.edge_between(a.index, b.index);
    }
    if (shared_edge >= 0) {
      for (int f : root.edge_faces(shared_edge)) {
        if (f < 0) continue;
        out[f].push_back({uv_in_root_face(root, a, f), uv_in_root_face(root, b, f), i});
      }
    } else {
      const int f = shared_root_face(root, a, b);
      require(f >= 0, "bucket_segments: segment endpoints share no root face");
      out[f].push_back({uv_in_root_face(root, a, f), uv_in_root_face(root, b, f), i});
    }
  }
}

bool segments_adjacent(const Curve& c, int i, int j) {
  const int segs = c.segment_count();
  const int d = std::abs(i - j);
  if (d <= 1) return true;
  return c.closed && d == segs - 1;
}

}  // namespace

bool curve_is_simple(const TriMesh& root, const Curve& c, double scale, std::string* why) {
  if (c.pts.size() < 3) return true;
  const double eps = 1e-9 * std::max(scale, 1e-12);
  std::map<int, std::vector<Seg>> buckets;
  bucket_segments(root, c, buckets);
  for (const auto& [f, segs] : buckets) {
    for (size_t i = 0; i < segs.size(); ++i)
      for (size_t j = i + 1; j < segs.size(); ++j) {
        const Seg& A = segs[i];
        const Seg& B = segs[j];
        if (A.idx == B.idx) continue;
        if (segments_adjacent(c, A.idx, B.idx)) continue;
        if (segments_cross(A.a, A.b, B.a, B.b, eps / std::max(scale, 1e-12))) {
          if (why) {
            std::ostringstream os;
            os << "segments " << A.idx << " and " << B.idx << " intersect in root face " << f;
            *why = os.str();
          }
          return false;
        }
      }
  }
  return true;
}

bool curves_interior_disjoint(const TriMesh& root, const Curve& a, const Curve& b, double scale,
                              std::string* why) {
  const double eps = 1e-9 * std::max(scale, 1e-12);
  const double rel = eps / std::max(scale, 1e-12);
  std::vector<SurfacePoint> allowed;
  if (!a.closed && !a.pts.empty()) {
    allowed.push_back(a.pts.front());
    allowed.push_back(a.pts.back());
  }
  if (!b.closed && !b.pts.empty()) {
    allowed.push_back(b.pts.front());
    allowed.push_back(b.pts.back());
  }
  auto near_allowed = [&](const Vec2& p, int f) {
    for (const auto& q : allowed) {
      bool in_face = false;
      for_each_candidate_face(root, q, [&](int qf) { in_face |= (qf == f); });
      if (in_face && (uv_in_root_face(root, q, f) - p).norm() <= 64 * eps) return true;
    }
    return false;
  };
  std::map<int, std::vector<Seg>> ba, bb;
  bucket_segments(root, a, ba);
  bucket_segments(root, b, bb);
  for (const auto& [f, sa] : ba) {
    auto it = bb.find(f);
    if (it == bb.end()) continue;
    for (const Seg& A : sa)
      for (const Seg& B : it->second) {
        if (!segments_cross(A.a, A.b, B.a, B.b, rel)) continue;
        // tolerate contact at an allowed shared endpoint: shrink both
        // segments away from it and re-test
        auto trim = [&](Vec2 p, const Vec2& q) {
          if (near_allowed(p, f)) {
            const Vec2 d = q - p;
            const double l = d.norm();
            if (l > 256 * eps) p += d * (128 * eps / l);
          }
          return p;
        };
        const Vec2 a1 = trim(A.a, A.b), a2 = trim(A.b, A.a);
        const Vec2 b1 = trim(B.a, B.b), b2 = trim(B.b, B.a);
        if (!segments_cross(a1, a2, b1, b2, rel)) continue;
        if (why) {
          std::ostringstream os;
          os << "curves intersect in root face " << f << " (segments " << A.idx << ", " << B.idx
             << ")";
          *why = os.str();
        }
        return false;
      }
  }
  return true;
}

double sample_hausdorff(const TriMesh& root, const Curve& a, const Curve& b) {
  double worst = 0;
  for (const auto& p : a.pts) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : b.pts) {
      const int f = shared_root_face(root, p, q);
      if (f < 0) continue;
      best = std::min(best, (uv_in_root_face(root, p, f) - uv_in_root_face(root, q, f)).norm());
    }
    if (std::isfinite(best)) worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace theta
