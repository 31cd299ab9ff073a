#include "theta/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace theta {

CurveGraph::CurveGraph(std::shared_ptr<const TriMesh> mesh, int steiner_per_edge)
    : mesh_(std::move(mesh)), k_(steiner_per_edge) {
  require(k_ >= 0, "CurveGraph: steiner_per_edge >= 0");
  nv_ = mesh_->vertex_count();
  ne_ = mesh_->edge_count();
}

SurfacePoint CurveGraph::node_point(int n) const {
  if (is_vertex_node(n)) return point_from_vertex(*mesh_, n);
  return point_on_edge(*mesh_, node_edge(n), node_param(n));
}

Vec3 CurveGraph::node_position(int n) const {
  if (is_vertex_node(n)) return mesh_->position(n);
  const int e = node_edge(n);
  const double t = node_param(n);
  const auto [u, v] = mesh_->edge_vertices(e);
  return (1 - t) * mesh_->position(u) + t * mesh_->position(v);
}

Vec2 CurveGraph::node_uv(int n, int f) const {
  if (is_vertex_node(n)) return mesh_->vertex_uv(f, n);
  const int e = node_edge(n);
  const double t = node_param(n);
  const auto [u, v] = mesh_->edge_vertices(e);
  return (1 - t) * mesh_->vertex_uv(f, u) + t * mesh_->vertex_uv(f, v);
}

bool CurveGraph::node_admissible(const SearchOptions& opt, int n) const {
  if (opt.forbidden && (*opt.forbidden)[n]) return false;
  if (!opt.region) return true;
  if (is_vertex_node(n)) return opt.region->contains_vertex(n);
  return opt.region->contains_edge(node_edge(n));
}

bool CurveGraph::node_on_region_boundary(const SearchOptions& opt, int n) const {
  if (!opt.region) return false;
  if (is_vertex_node(n)) return opt.region->boundary_has_vertex(n);
  return !opt.region->interior_edge(node_edge(n));
}

template <typename Fn>
void CurveGraph::for_each_neighbor(int n, const SearchOptions& opt, Fn&& fn) const {
  const TriMesh& m = *mesh_;
  auto edge_ok = [&](int e) {
    if (!opt.region) return true;
    if (opt.interior_only) return opt.region->interior_edge(e);
    return opt.region->contains_edge(e);
  };
  auto face_ok = [&](int f) { return f >= 0 && (!opt.region || opt.region->contains_face(f)); };
  auto emit_face_chords = [&](int f, int skip_edge, int skip_vertex) {
    const Vec2 from_uv = node_uv(n, f);
    const auto& fe = m.face_edges(f);
    const auto& fc = m.face(f);
    for (int i = 0; i < 3; ++i) {
      if (fc[i] != skip_vertex) {
        const int nb = vertex_node(fc[i]);
        if (nb != n) fn(nb, (from_uv - node_uv(nb, f)).norm());
      }
      const int e = fe[i];
      if (e == skip_edge) continue;
      if (skip_vertex >= 0) {
        // collinear with an edge through the vertex; the along-edge chain
        // already covers it
        const auto ev = m.edge_vertices(e);
        if (ev[0] == skip_vertex || ev[1] == skip_vertex) continue;
      }
      for (int j = 0; j < k_; ++j) {
        const int nb = steiner_node(e, j);
        fn(nb, (from_uv - node_uv(nb, f)).norm());
      }
    }
  };
  if (is_vertex_node(n)) {
    const int v = n;
    for (int e : m.vertex_edges(v)) {
      if (!edge_ok(e)) continue;
      const auto [a, b] = m.edge_vertices(e);
      const int other = a == v ? b : a;
      const double len = m.edge_length(e);
      if (k_ == 0) {
        fn(vertex_node(other), len);
      } else {
        const double spacing = len / (k_ + 1);
        const int j = (a == v) ? 0 : k_ - 1;  // nearest Steiner node
        fn(steiner_node(e, j), spacing);
      }
    }
    for (int f : m.vertex_faces(v)) {
      if (!face_ok(f)) continue;
      emit_face_chords(f, -1, v);
    }
  } else {
    const int e = node_edge(n);
    const int j = (n - nv_) % k_;
    const auto [a, b] = m.edge_vertices(e);
    const double len = m.edge_length(e);
    const double spacing = len / (k_ + 1);
    if (edge_ok(e)) {
      if (j == 0) fn(vertex_node(a), spacing);
      else fn(steiner_node(e, j - 1), spacing);
      if (j == k_ - 1) fn(vertex_node(b), spacing);
      else fn(steiner_node(e, j + 1), spacing);
    }
    for (int f : m.edge_faces(e)) {
      if (!face_ok(f)) continue;
      emit_face_chords(f, e, -1);
    }
  }
}

namespace {
struct QItem {
  double key;
  double dist;
  int node;
  bool operator>(const QItem& o) const {
    if (key != o.key) return key > o.key;
    if (dist != o.dist) return dist > o.dist;
    return node > o.node;
  }
};
}  // namespace

CurveGraph::PathResult CurveGraph::shortest_path(
    const std::vector<std::pair<int, double>>& sources, const std::vector<int>& targets,
    const SearchOptions& opt) const {
  PathResult res;
  if (sources.empty() || targets.empty()) return res;
  const int N = node_count();
  std::vector<double> dist(N, std::numeric_limits<double>::infinity());
  std::vector<int> prev(N, -1);
  std::vector<char> closed(N, 0), is_target(N, 0), is_endpoint(N, 0);
  for (int t : targets) {
    is_target[t] = 1;
    is_endpoint[t] = 1;
  }
  for (const auto& [s, d0] : sources) is_endpoint[s] = 1;

  const bool astar = mesh_->has_positions();
  Vec3 centroid(0, 0, 0);
  double radius = 0;
  if (astar) {
    for (int t : targets) centroid += node_position(t);
    centroid /= double(targets.size());
    for (int t : targets) radius = std::max(radius, (node_position(t) - centroid).norm());
  }
  auto heuristic = [&](int n) {
    if (!astar) return 0.0;
    return std::max(0.0, (node_position(n) - centroid).norm() - radius);
  };

  std::priority_queue<QItem, std::vector<QItem>, std::greater<QItem>> pq;
  for (const auto& [s, d0] : sources) {
    if (!node_admissible(opt, s)) continue;
    if (d0 < dist[s]) {
      dist[s] = d0;
      pq.push({d0 + heuristic(s), d0, s});
    }
  }
  int goal = -1;
  while (!pq.empty()) {
    const QItem it = pq.top();
    pq.pop();
    const int u = it.node;
    if (closed[u] || it.dist > dist[u]) continue;
    closed[u] = 1;
    if (is_target[u]) {
      goal = u;
      break;
    }
    // boundary nodes may only start or end an interior path
    if (opt.interior_only && node_on_region_boundary(opt, u) && !is_endpoint[u]) continue;
    for_each_neighbor(u, opt, [&](int v, double w) {
      if (closed[v] || !node_admissible(opt, v)) return;
      if (opt.interior_only && node_on_region_boundary(opt, v) && !is_endpoint[v]) return;
      const double nd = it.dist + w;
      if (nd < dist[v]) {
        dist[v] = nd;
        prev[v] = u;
        pq.push({nd + heuristic(v), nd, v});
      }
    });
  }
  if (goal < 0) return res;
  res.found = true;
  res.length = dist[goal];
  for (int n = goal; n >= 0; n = prev[n]) res.nodes.push_back(n);
  std::reverse(res.nodes.begin(), res.nodes.end());
  return res;
}

std::vector<double> CurveGraph::distances(const std::vector<std::pair<int, double>>& sources,
                                          const SearchOptions& opt) const {
  const int N = node_count();
  std::vector<double> dist(N, std::numeric_limits<double>::infinity());
  std::vector<char> closed(N, 0);
  std::priority_queue<QItem, std::vector<QItem>, std::greater<QItem>> pq;
  for (const auto& [s, d0] : sources) {
    if (!node_admissible(opt, s)) continue;
    if (d0 < dist[s]) {
      dist[s] = d0;
      pq.push({d0, d0, s});
    }
  }
  while (!pq.empty()) {
    const QItem it = pq.top();
    pq.pop();
    const int u = it.node;
    if (closed[u] || it.dist > dist[u]) continue;
    closed[u] = 1;
    if (opt.interior_only && node_on_region_boundary(opt, u)) continue;
    for_each_neighbor(u, opt, [&](int v, double w) {
      if (closed[v] || !node_admissible(opt, v)) return;
      const double nd = it.dist + w;
      if (nd < dist[v]) {
        dist[v] = nd;
        pq.push({nd, nd, v});
      }
    });
  }
  return dist;
}

std::vector<int> CurveGraph::loop_nodes(const Region& region, int loop) const {
  std::vector<int> out;
  const auto& l = region.boundary_loops()[loop];
  const TriMesh& m = *mesh_;
  for (size_t i = 0; i < l.size(); ++i) {
    out.push_back(vertex_node(l[i]));
    const int e = m.edge_between(l[i], l[(i + 1) % l.size()]);
    require(e >= 0, "loop_nodes: broken boundary loop");
    for (int j = 0; j < k_; ++j) out.push_back(steiner_node(e, j));
  }
  return out;
}

std::vector<int> CurveGraph::region_nodes(const Region& region) const {
  std::vector<int> out;
  for (int v = 0; v < nv_; ++v)
    if (region.contains_vertex(v)) out.push_back(vertex_node(v));
  for (int e = 0; e < ne_; ++e)
    if (region.contains_edge(e))
      for (int j = 0; j < k_; ++j) out.push_back(steiner_node(e, j));
  return out;
}

Curve CurveGraph::path_curve(const PathResult& path) const {
  std::vector<SurfacePoint> pts;
  pts.reserve(path.nodes.size());
  for (int n : path.nodes) pts.push_back(node_point(n));
  return make_curve(*mesh_->root(), std::move(pts), false);
}

}  // namespace theta
