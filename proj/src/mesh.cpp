#include "theta/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

namespace theta {

namespace {
std::uint64_t edge_key(int u, int v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}
}  // namespace

int TriMesh::edge_between(int u, int v) const {
  auto it = edge_index_.find(edge_key(u, v));
  return it == edge_index_.end() ? -1 : it->second;
}

bool TriMesh::boundary_vertex(int v) const {
  for (int e : vertex_edges_[v])
    if (boundary_edge(e)) return true;
  return false;
}

int TriMesh::face_corner(int f, int v) const {
  const auto& fc = faces_[f];
  for (int i = 0; i < 3; ++i)
    if (fc[i] == v) return i;
  return -1;
}

Vec2 TriMesh::vertex_uv(int f, int v) const {
  const int c = face_corner(f, v);
  require(c >= 0, "vertex_uv: vertex not in face");
  return charts_[f].corner[c];
}

double TriMesh::corner_angle(int f, int corner) const {
  const auto& ch = charts_[f];
  const Vec2 a = ch.corner[(corner + 1) % 3] - ch.corner[corner];
  const Vec2 b = ch.corner[(corner + 2) % 3] - ch.corner[corner];
  const double la = a.norm(), lb = b.norm();
  if (la <= 0 || lb <= 0) return 0;
  double c = a.dot(b) / (la * lb);
  c = std::clamp(c, -1.0, 1.0);
  return std::acos(c);
}

double TriMesh::angle_deficit(int v) const {
  double sum = 0;
  for (int f : vertex_faces_[v]) sum += corner_angle(f, face_corner(f, v));
  return 2.0 * M_PI - sum;
}

void TriMesh::build_connectivity() {
  edges_.clear();
  edge_faces_.clear();
  face_edges_.assign(faces_.size(), {-1, -1, -1});
  edge_index_.clear();
  vertex_edges_.assign(nv_, {});
  vertex_faces_.assign(nv_, {});
  for (int f = 0; f < (int)faces_.size(); ++f) {
    const auto& fc = faces_[f];
    for (int i = 0; i < 3; ++i) {
      const int u = fc[i], v = fc[(i + 1) % 3];
      const auto key = edge_key(u, v);
      auto it = edge_index_.find(key);
      int e;
      if (it == edge_index_.end()) {
        e = static_cast<int>(edges_.size());
        edge_index_.emplace(key, e);
        edges_.push_back({std::min(u, v), std::max(u, v)});
        edge_faces_.push_back({f, -1});
        vertex_edges_[u].push_back(e);
        vertex_edges_[v].push_back(e);
      } else {
        e = it->second;
        if (edge_faces_[e][1] < 0 && edge_faces_[e][0] != f)
          edge_faces_[e][1] = f;
        else if (edge_faces_[e][0] != f && edge_faces_[e][1] != f)
          edge_faces_[e][1] = -2;  // over-used edge; flagged by validate
      }
      face_edges_[f][i] = e;  // edge i joins corners i and i+1
    }
    for (int i = 0; i < 3; ++i) vertex_faces_[fc[i]].push_back(f);
  }
}

void TriMesh::build_charts_from_lengths() {
  charts_.resize(faces_.size());
  for (int f = 0; f < (int)faces_.size(); ++f) {
    const double l01 = edge_length_[face_edges_[f][0]];
    const double l12 = edge_length_[face_edges_[f][1]];
    const double l20 = edge_length_[face_edges_[f][2]];
    FaceChart& ch = charts_[f];
    ch.root_face = f;
    ch.corner[0] = Vec2(0, 0);
    ch.corner[1] = Vec2(l01, 0);
    const double x = (l01 * l01 + l20 * l20 - l12 * l12) / (2.0 * l01);
    const double y2 = l20 * l20 - x * x;
    ch.corner[2] = Vec2(x, y2 > 0 ? std::sqrt(y2) : 0.0);
  }
}

void TriMesh::finish() {
  face_area_.resize(faces_.size());
  total_area_ = 0;
  for (int f = 0; f < (int)faces_.size(); ++f) {
    const double l01 = edge_length_[face_edges_[f][0]];
    const double l12 = edge_length_[face_edges_[f][1]];
    const double l20 = edge_length_[face_edges_[f][2]];
    face_area_[f] = heron_area(l01, l12, l20);
    total_area_ += face_area_[f];
  }
}

std::shared_ptr<const TriMesh> TriMesh::from_positions(std::vector<FaceV> faces,
                                                       std::vector<Vec3> positions) {
  auto m = std::shared_ptr<TriMesh>(new TriMesh());
  m->nv_ = static_cast<int>(positions.size());
  m->faces_ = std::move(faces);
  m->positions_ = std::move(positions);
  m->build_connectivity();
  m->edge_length_.resize(m->edges_.size());
  for (int e = 0; e < (int)m->edges_.size(); ++e) {
    const auto [u, v] = m->edges_[e];
    m->edge_length_[e] = (m->positions_[u] - m->positions_[v]).norm();
  }
  m->build_charts_from_lengths();
  m->anchors_.resize(m->nv_);
  for (int v = 0; v < m->nv_; ++v)
    m->anchors_[v] = VertexAnchor{VertexAnchor::Kind::RootVertex, v, 0, Vec2(0, 0)};
  m->finish();
  return m;
}

std::shared_ptr<const TriMesh> TriMesh::from_lengths(
    int n_vertices, std::vector<FaceV> faces,
    const std::vector<std::pair<std::array<int, 2>, double>>& lengths,
    std::vector<Vec3> positions) {
  auto m = std::shared_ptr<TriMesh>(new TriMesh());
  m->nv_ = n_vertices;
  m->faces_ = std::move(faces);
  if (!positions.empty()) {
    require((int)positions.size() == n_vertices, "from_lengths: positions size mismatch");
    m->positions_ = std::move(positions);
  }
  m->build_connectivity();
  m->edge_length_.assign(m->edges_.size(), -1.0);
  for (const auto& [uv, len] : lengths) {
    const int e = m->edge_between(uv[0], uv[1]);
    require(e >= 0, "from_lengths: length given for a non-edge");
    m->edge_length_[e] = len;
  }
  for (int e = 0; e < (int)m->edges_.size(); ++e)
    require(m->edge_length_[e] > 0, "from_lengths: missing or non-positive edge length");
  m->build_charts_from_lengths();
  m->anchors_.resize(m->nv_);
  for (int v = 0; v < m->nv_; ++v)
    m->anchors_[v] = VertexAnchor{VertexAnchor::Kind::RootVertex, v, 0, Vec2(0, 0)};
  m->finish();
  return m;
}

std::shared_ptr<const TriMesh> TriMesh::derived(int n_vertices, std::vector<FaceV> faces,
                                                std::vector<FaceChart> charts,
                                                std::vector<VertexAnchor> anchors,
                                                std::shared_ptr<const TriMesh> root) {
  auto m = std::shared_ptr<TriMesh>(new TriMesh());
  m->nv_ = n_vertices;
  m->faces_ = std::move(faces);
  m->charts_ = std::move(charts);
  m->anchors_ = std::move(anchors);
  m->root_ = std::move(root);
  m->build_connectivity();
  m->edge_length_.resize(m->edges_.size());
  for (int e = 0; e < (int)m->edges_.size(); ++e) {
    const auto [u, v] = m->edges_[e];
    const int f = m->edge_faces_[e][0];
    const int cu = m->face_corner(f, u), cv = m->face_corner(f, v);
    m->edge_length_[e] = (m->charts_[f].corner[cu] - m->charts_[f].corner[cv]).norm();
  }
  if (m->root_->has_positions()) {
    m->positions_.resize(m->nv_);
    std::vector<char> done(m->nv_, 0);
    const TriMesh& rt = *m->root_;
    for (int f = 0; f < (int)m->faces_.size(); ++f) {
      const FaceChart& ch = m->charts_[f];
      const auto& rf = rt.face(ch.root_face);
      const FaceChart& rch = rt.chart(ch.root_face);
      // barycentric in the root chart
      const Vec2 p0 = rch.corner[0], p1 = rch.corner[1], p2 = rch.corner[2];
      const double det = (p1 - p0).x() * (p2 - p0).y() - (p1 - p0).y() * (p2 - p0).x();
      for (int i = 0; i < 3; ++i) {
        const int v = m->faces_[f][i];
        if (done[v]) continue;
        const Vec2 q = ch.corner[i] - p0;
        const double b1 = (q.x() * (p2 - p0).y() - q.y() * (p2 - p0).x()) / det;
        const double b2 = ((p1 - p0).x() * q.y() - (p1 - p0).y() * q.x()) / det;
        m->positions_[v] =
            (1 - b1 - b2) * rt.position(rf[0]) + b1 * rt.position(rf[1]) + b2 * rt.position(rf[2]);
        done[v] = 1;
      }
    }
  }
  m->finish();
  return m;
}

ValidationReport validate(const TriMesh& mesh) {
  ValidationReport r;
  auto flag = [&r](const std::string& s) { r.violations.push_back(s); };

  for (int f = 0; f < mesh.face_count(); ++f) {
    const auto& fc = mesh.face(f);
    for (int i = 0; i < 3; ++i) {
      if (fc[i] < 0 || fc[i] >= mesh.vertex_count()) flag("face " + std::to_string(f) + ": vertex id out of range");
      if (fc[i] == fc[(i + 1) % 3]) flag("face " + std::to_string(f) + ": repeated vertex");
    }
  }
  for (int e = 0; e < mesh.edge_count(); ++e) {
    if (!(mesh.edge_length(e) > 0)) flag("edge " + std::to_string(e) + ": non-positive length");
  }
  for (int f = 0; f < mesh.face_count(); ++f) {
    const double a = mesh.edge_length(mesh.face_edges(f)[0]);
    const double b = mesh.edge_length(mesh.face_edges(f)[1]);
    const double c = mesh.edge_length(mesh.face_edges(f)[2]);
    if (!(a + b > c && b + c > a && c + a > b))
      flag("face " + std::to_string(f) + ": triangle inequality violated (" + std::to_string(a) +
           ", " + std::to_string(b) + ", " + std::to_string(c) + ")");
  }

  r.manifold = true;
  r.oriented = true;
  for (int e = 0; e < mesh.edge_count(); ++e) {
    if (mesh.edge_faces(e)[1] == -2) {
      r.manifold = false;
      flag("edge " + std::to_string(e) + ": more than two incident faces");
    }
  }
  // orientation: every interior edge must be traversed once in each direction
  if (r.manifold) {
    for (int e = 0; e < mesh.edge_count(); ++e) {
      const auto ef = mesh.edge_faces(e);
      if (ef[1] < 0) continue;
      const auto [u, v] = mesh.edge_vertices(e);
      auto dir = [&](int f) {
        const auto& fc = mesh.face(f);
        for (int i = 0; i < 3; ++i)
          if (fc[i] == u && fc[(i + 1) % 3] == v) return +1;
        return -1;
      };
      if (dir(ef[0]) == dir(ef[1])) {
        r.oriented = false;
        flag("edge " + std::to_string(e) + ": inconsistent face orientations");
      }
    }
  }
  // manifold vertex links: incident faces of each vertex form a single fan
  if (r.manifold) {
    for (int v = 0; v < mesh.vertex_count(); ++v) {
      const auto& vf = mesh.vertex_faces(v);
      if (vf.empty()) {
        flag("vertex " + std::to_string(v) + ": isolated");
        continue;
      }
      int boundary_incidences = 0;
      for (int e : mesh.vertex_edges(v))
        if (mesh.boundary_edge(e)) ++boundary_incidences;
      if (boundary_incidences != 0 && boundary_incidences != 2) {
        r.manifold = false;
        flag("vertex " + std::to_string(v) + ": non-manifold link");
        continue;
      }
      // fan walk
      std::vector<char> seen(vf.size(), 0);
      int start = 0;  // for boundary vertices start at a boundary-edge face
      auto next_face = [&](int f, int via_edge) {
        const auto ef = mesh.edge_faces(via_edge);
        return ef[0] == f ? ef[1] : ef[0];
      };
      if (boundary_incidences == 2) {
        for (int i = 0; i < (int)vf.size(); ++i) {
          bool has_bnd = false;
          for (int k = 0; k < 3; ++k) {
            const int e = mesh.face_edges(vf[i])[k];
            const auto ev = mesh.edge_vertices(e);
            if ((ev[0] == v || ev[1] == v) && mesh.boundary_edge(e)) has_bnd = true;
          }
          if (has_bnd) { start = i; break; }
        }
      }
      int count = 0, f = vf[start], prev_edge = -1;
      while (f >= 0) {
        int idx = -1;
        for (int i = 0; i < (int)vf.size(); ++i)
          if (vf[i] == f && !seen[i]) { idx = i; break; }
        if (idx < 0) break;
        seen[idx] = 1;
        ++count;
        int advance = -1;
        for (int k = 0; k < 3; ++k) {
          const int e = mesh.face_edges(f)[k];
          const auto ev = mesh.edge_vertices(e);
          if (ev[0] != v && ev[1] != v) continue;
          if (e == prev_edge) continue;
          const int nf = next_face(f, e);
          if (nf >= 0) {
            bool unseen = false;
            for (int i = 0; i < (int)vf.size(); ++i)
              if (vf[i] == nf && !seen[i]) unseen = true;
            if (unseen) { advance = e; break; }
          }
        }
        if (advance < 0) break;
        prev_edge = advance;
        f = next_face(f, advance);
      }
      if (count != (int)vf.size()) {
        r.manifold = false;
        flag("vertex " + std::to_string(v) + ": disconnected fan");
      }
    }
  }
  // connectivity across edges
  r.connected = true;
  if (mesh.face_count() > 0) {
    std::vector<char> vis(mesh.face_count(), 0);
    std::queue<int> q;
    q.push(0);
    vis[0] = 1;
    int n = 0;
    while (!q.empty()) {
      const int f = q.front();
      q.pop();
      ++n;
      for (int k = 0; k < 3; ++k) {
        const auto ef = mesh.edge_faces(mesh.face_edges(f)[k]);
        for (int nf : ef)
          if (nf >= 0 && !vis[nf]) { vis[nf] = 1; q.push(nf); }
      }
    }
    if (n != mesh.face_count()) {
      r.connected = false;
      flag("mesh is not connected");
    }
  }

  r.euler = mesh.vertex_count() - mesh.edge_count() + mesh.face_count();
  // boundary loops
  if (r.manifold && r.oriented) {
    std::vector<int> out(mesh.vertex_count(), -1);
    int boundary_edges = 0;
    for (int f = 0; f < mesh.face_count(); ++f) {
      const auto& fc = mesh.face(f);
      for (int i = 0; i < 3; ++i) {
        const int e = mesh.face_edges(f)[i];
        if (mesh.boundary_edge(e)) {
          out[fc[i]] = fc[(i + 1) % 3];
          ++boundary_edges;
        }
      }
    }
    std::vector<char> used(mesh.vertex_count(), 0);
    for (int v = 0; v < mesh.vertex_count(); ++v) {
      if (out[v] < 0 || used[v]) continue;
      int w = v;
      do {
        used[w] = 1;
        w = out[w];
      } while (w >= 0 && w != v && !used[w]);
      ++r.boundary_loop_count;
    }
    (void)boundary_edges;
  }
  if (r.ok()) {
    r.is_disk = (r.euler == 1 && r.boundary_loop_count == 1);
    r.is_sphere = (r.euler == 2 && r.boundary_loop_count == 0);
    if (!r.is_disk && !r.is_sphere)
      flag("surface is neither a disk (chi=1) nor a sphere (chi=2): chi=" +
           std::to_string(r.euler) + ", boundary loops=" + std::to_string(r.boundary_loop_count));
  }
  return r;
}

std::shared_ptr<const TriMesh> refine(const std::shared_ptr<const TriMesh>& mesh, int depth) {
  require(depth >= 0, "refine: negative depth");
  std::shared_ptr<const TriMesh> cur = mesh;
  for (int it = 0; it < depth; ++it) {
    const TriMesh& m = *cur;
    const int nv = m.vertex_count();
    std::vector<TriMesh::FaceV> faces;
    faces.reserve(m.face_count() * 4);
    std::vector<std::pair<std::array<int, 2>, double>> lengths;
    auto midpoint_of = [&](int e) { return nv + e; };
    std::vector<Vec3> positions;
    if (m.has_positions()) {
      positions = m.positions();
      positions.resize(nv + m.edge_count());
      for (int e = 0; e < m.edge_count(); ++e) {
        const auto [u, v] = m.edge_vertices(e);
        positions[midpoint_of(e)] = 0.5 * (m.position(u) + m.position(v));
      }
    }
    std::vector<char> half_done(m.edge_count(), 0);
    for (int f = 0; f < m.face_count(); ++f) {
      const auto& fc = m.face(f);
      const auto& fe = m.face_edges(f);
      const int mab = midpoint_of(fe[0]), mbc = midpoint_of(fe[1]), mca = midpoint_of(fe[2]);
      faces.push_back({fc[0], mab, mca});
      faces.push_back({mab, fc[1], mbc});
      faces.push_back({mca, mbc, fc[2]});
      faces.push_back({mab, mbc, mca});
      for (int i = 0; i < 3; ++i) {
        const int e = fe[i];
        if (!half_done[e]) {
          half_done[e] = 1;
          const auto [u, v] = m.edge_vertices(e);
          lengths.push_back({{u, midpoint_of(e)}, 0.5 * m.edge_length(e)});
          lengths.push_back({{v, midpoint_of(e)}, 0.5 * m.edge_length(e)});
        }
      }
      // midlines are parallel to the opposite side at half length
      lengths.push_back({{mab, mbc}, 0.5 * m.edge_length(fe[2])});
      lengths.push_back({{mbc, mca}, 0.5 * m.edge_length(fe[0])});
      lengths.push_back({{mca, mab}, 0.5 * m.edge_length(fe[1])});
    }
    cur = TriMesh::from_lengths(nv + m.edge_count(), std::move(faces), lengths,
                                std::move(positions));
  }
  return cur;
}

Region::Region(std::shared_ptr<const TriMesh> mesh, std::vector<int> faces)
    : mesh_(std::move(mesh)), faces_(std::move(faces)) {
  std::sort(faces_.begin(), faces_.end());
  faces_.erase(std::unique(faces_.begin(), faces_.end()), faces_.end());
  require(!faces_.empty(), "Region: empty face set");
  const TriMesh& m = *mesh_;
  in_region_.assign(m.face_count(), 0);
  for (int f : faces_) {
    require(f >= 0 && f < m.face_count(), "Region: face id out of range");
    in_region_[f] = 1;
  }
  // edge-connectivity
  {
    std::vector<char> vis(m.face_count(), 0);
    std::queue<int> q;
    q.push(faces_[0]);
    vis[faces_[0]] = 1;
    int n = 0;
    while (!q.empty()) {
      const int f = q.front();
      q.pop();
      ++n;
      for (int k = 0; k < 3; ++k)
        for (int nf : m.edge_faces(m.face_edges(f)[k]))
          if (nf >= 0 && in_region_[nf] && !vis[nf]) { vis[nf] = 1; q.push(nf); }
    }
    require(n == (int)faces_.size(), "Region: face subset is not edge-connected");
  }
  area_ = 0;
  vertex_in_.assign(m.vertex_count(), 0);
  for (int f : faces_) {
    area_ += m.face_area(f);
    for (int v : m.face(f)) vertex_in_[v] = 1;
  }
  // Euler characteristic of the subcomplex
  int V = 0, E = 0;
  for (int v = 0; v < m.vertex_count(); ++v) V += vertex_in_[v];
  for (int e = 0; e < m.edge_count(); ++e) E += contains_edge(e) ? 1 : 0;
  euler_ = V - E + (int)faces_.size();
  // boundary loops: directed sides with outside (or missing) twin
  on_boundary_.assign(m.vertex_count(), 0);
  std::vector<int> out(m.vertex_count(), -1);
  for (int f : faces_) {
    const auto& fc = m.face(f);
    for (int i = 0; i < 3; ++i) {
      const int e = m.face_edges(f)[i];
      const auto ef = m.edge_faces(e);
      const int other = ef[0] == f ? ef[1] : ef[0];
      if (other < 0 || !in_region_[other]) {
        const int u = fc[i], v = fc[(i + 1) % 3];
        if (out[u] != -1) has_pinch_ = true;
        out[u] = v;
        on_boundary_[u] = 1;
        on_boundary_[v] = 1;
      }
    }
  }
  std::vector<char> used(m.vertex_count(), 0);
  std::vector<std::pair<int, std::vector<int>>> loops;
  for (int v = 0; v < m.vertex_count(); ++v) {
    if (out[v] < 0 || used[v]) continue;
    std::vector<int> loop;
    int w = v;
    int guard = 0;
    do {
      loop.push_back(w);
      used[w] = 1;
      w = out[w];
      if (++guard > m.vertex_count() + 1) { has_pinch_ = true; break; }
    } while (w != v && w >= 0 && !used[w]);
    // canonical start: smallest vertex id
    const auto mn = std::min_element(loop.begin(), loop.end());
    std::rotate(loop.begin(), mn, loop.end());
    loops.push_back({loop[0], std::move(loop)});
  }
  std::sort(loops.begin(), loops.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [k, l] : loops) loops_.push_back(std::move(l));
}

Region Region::whole(std::shared_ptr<const TriMesh> mesh) {
  std::vector<int> all(mesh->face_count());
  std::iota(all.begin(), all.end(), 0);
  return Region(std::move(mesh), std::move(all));
}

bool Region::contains_vertex(int v) const {
  return v >= 0 && v < (int)vertex_in_.size() && vertex_in_[v];
}

bool Region::contains_edge(int e) const {
  for (int f : mesh_->edge_faces(e))
    if (f >= 0 && in_region_[f]) return true;
  return false;
}

bool Region::interior_edge(int e) const {
  const auto ef = mesh_->edge_faces(e);
  return ef[0] >= 0 && ef[1] >= 0 && in_region_[ef[0]] && in_region_[ef[1]];
}

double Region::boundary_length(int loop) const {
  const auto& l = loops_[loop];
  double sum = 0;
  for (size_t i = 0; i < l.size(); ++i) {
    const int e = mesh_->edge_between(l[i], l[(i + 1) % l.size()]);
    require(e >= 0, "boundary_length: broken loop");
    sum += mesh_->edge_length(e);
  }
  return sum;
}

double Region::total_boundary_length() const {
  double sum = 0;
  for (size_t i = 0; i < loops_.size(); ++i) sum += boundary_length((int)i);
  return sum;
}

double Region::interior_angle_deficit() const {
  double sum = 0;
  const TriMesh& m = *mesh_;
  for (int v = 0; v < m.vertex_count(); ++v) {
    if (!vertex_in_[v] || on_boundary_[v]) continue;
    // interior to the region only if every incident face is in the region
    bool interior = true;
    for (int f : m.vertex_faces(v))
      if (!in_region_[f]) { interior = false; break; }
    if (!interior) continue;
    sum += std::abs(m.angle_deficit(v));
  }
  return sum;
}

}  // namespace theta
