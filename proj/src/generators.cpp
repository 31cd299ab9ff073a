#include "theta/generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace theta {

namespace {

std::shared_ptr<const TriMesh> grid_mesh(int nx, int ny,
                                         const std::function<Vec3(double, double)>& xy) {
  std::vector<Vec3> pos;
  pos.reserve((nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      pos.push_back(xy(static_cast<double>(i) / nx, static_cast<double>(j) / ny));
  auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  std::vector<TriMesh::FaceV> faces;
  faces.reserve(2 * nx * ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return TriMesh::from_positions(std::move(faces), std::move(pos));
}

std::shared_ptr<const TriMesh> scaled_to_area(const std::shared_ptr<const TriMesh>& m,
                                              double target_area) {
  const double s = std::sqrt(target_area / m->total_area());
  std::vector<Vec3> pos = m->positions();
  for (auto& p : pos) p *= s;
  std::vector<TriMesh::FaceV> faces = m->faces();
  return TriMesh::from_positions(std::move(faces), std::move(pos));
}

struct SphereTri {
  std::vector<Vec3> pos;   // unit sphere directions
  std::vector<TriMesh::FaceV> faces;
};

SphereTri icosahedron_directions() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> p = {
      {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
  for (auto& v : p) v.normalize();
  std::vector<TriMesh::FaceV> f = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  return {std::move(p), std::move(f)};
}

SphereTri subdivide_on_sphere(SphereTri s, int depth) {
  for (int it = 0; it < depth; ++it) {
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto itm = mid.find(key);
      if (itm != mid.end()) return itm->second;
      const int v = static_cast<int>(s.pos.size());
      s.pos.push_back((s.pos[a] + s.pos[b]).normalized());
      mid.emplace(key, v);
      return v;
    };
    std::vector<TriMesh::FaceV> next;
    next.reserve(s.faces.size() * 4);
    for (const auto& f : s.faces) {
      const int ab = midpoint(f[0], f[1]), bc = midpoint(f[1], f[2]), ca = midpoint(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    s.faces = std::move(next);
  }
  return s;
}

}  // namespace

std::shared_ptr<const TriMesh> gen_square(int n) {
  require(n >= 1, "gen_square: n >= 1");
  return grid_mesh(n, n, [](double u, double v) { return Vec3(u, v, 0); });
}

std::shared_ptr<const TriMesh> gen_rectangle(double w, double h, int n) {
  require(n >= 1 && w > 0 && h > 0, "gen_rectangle: bad arguments");
  int nx = n, ny = n;
  if (w >= h)
    ny = std::max(1, static_cast<int>(std::lround(n * h / w)));
  else
    nx = std::max(1, static_cast<int>(std::lround(n * w / h)));
  return grid_mesh(nx, ny, [w, h](double u, double v) { return Vec3(u * w, v * h, 0); });
}

std::shared_ptr<const TriMesh> gen_trapezoid(double a, double b, double h, double skew, int n) {
  require(n >= 1 && a > 0 && b > 0 && h > 0, "gen_trapezoid: bad arguments");
  return grid_mesh(n, n, [=](double u, double v) {
    const double x0 = u * a;
    const double x1 = skew + u * b;
    return Vec3((1 - v) * x0 + v * x1, v * h, 0);
  });
}

std::shared_ptr<const TriMesh> gen_icosphere(int depth, double target_area) {
  require(depth >= 0 && target_area > 0, "gen_icosphere: bad arguments");
  SphereTri s = subdivide_on_sphere(icosahedron_directions(), depth);
  auto m = TriMesh::from_positions(std::move(s.faces), std::move(s.pos));
  return scaled_to_area(m, target_area);
}

std::shared_ptr<const TriMesh> gen_ellipsoid(double a, double b, double c, int depth,
                                             double target_area) {
  require(a > 0 && b > 0 && c > 0, "gen_ellipsoid: semi-axes must be positive");
  SphereTri s = subdivide_on_sphere(icosahedron_directions(), depth);
  for (auto& p : s.pos) p = Vec3(a * p.x(), b * p.y(), c * p.z());
  auto m = TriMesh::from_positions(std::move(s.faces), std::move(s.pos));
  return scaled_to_area(m, target_area);
}

std::shared_ptr<const TriMesh> gen_fingers(int m, int depth, double target_area) {
  require(m >= 1, "gen_fingers: m >= 1");
  SphereTri s = subdivide_on_sphere(icosahedron_directions(), depth);
  const double tilt = 0.9, width = 0.32, height = 1.3;
  std::vector<Vec3> dirs;
  for (int j = 0; j < m; ++j) {
    const double phi = 2.0 * M_PI * j / m;
    dirs.emplace_back(std::sin(tilt) * std::cos(phi), std::sin(tilt) * std::sin(phi),
                      std::cos(tilt));
  }
  for (auto& p : s.pos) {
    double r = 1.0;
    for (const auto& d : dirs) {
      const double ang = std::acos(std::clamp(p.dot(d), -1.0, 1.0));
      r += height * std::exp(-(ang * ang) / (width * width));
    }
    p *= r;
  }
  auto mesh = TriMesh::from_positions(std::move(s.faces), std::move(s.pos));
  return scaled_to_area(mesh, target_area);
}

std::shared_ptr<const TriMesh> gen_cylinder(double c, double h, int nx, int ny) {
  require(nx >= 3 && ny >= 1 && c > 0 && h > 0, "gen_cylinder: bad arguments");
  const int nv = nx * (ny + 1);
  auto id = [nx](int i, int j) { return j * nx + (i % nx); };
  std::vector<TriMesh::FaceV> faces;
  std::vector<std::pair<std::array<int, 2>, double>> lengths;
  const double dx = c / nx, dy = h / ny, diag = std::hypot(dx, dy);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
      lengths.push_back({{id(i, j), id(i + 1, j)}, dx});
      lengths.push_back({{id(i, j + 1), id(i + 1, j + 1)}, dx});
      lengths.push_back({{id(i, j), id(i, j + 1)}, dy});
      lengths.push_back({{id(i + 1, j), id(i + 1, j + 1)}, dy});
      lengths.push_back({{id(i, j), id(i + 1, j + 1)}, diag});
    }
  const double R = c / (2.0 * M_PI);
  std::vector<Vec3> pos(nv);
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double t = 2.0 * M_PI * i / nx;
      pos[id(i, j)] = Vec3(R * std::cos(t), R * std::sin(t), j * dy);
    }
  return TriMesh::from_lengths(nv, std::move(faces), lengths, std::move(pos));
}

std::shared_ptr<const TriMesh> gen_pillow(int n) {
  require(n >= 2, "gen_pillow: n >= 2");
  const int side = n + 1;
  auto idx = [side](int i, int j) { return j * side + i; };
  const int nv_front = side * side;
  // back sheet reuses the boundary ring, duplicates the interior
  std::vector<int> back(side * side, -1);
  int next = nv_front;
  for (int j = 0; j < side; ++j)
    for (int i = 0; i < side; ++i) {
      if (i == 0 || j == 0 || i == side - 1 || j == side - 1)
        back[idx(i, j)] = idx(i, j);
      else
        back[idx(i, j)] = next++;
    }
  std::vector<Vec3> pos(next);
  for (int j = 0; j < side; ++j)
    for (int i = 0; i < side; ++i) {
      const Vec3 p(static_cast<double>(i) / n, static_cast<double>(j) / n, 0);
      pos[idx(i, j)] = p;
      pos[back[idx(i, j)]] = p;
    }
  std::vector<TriMesh::FaceV> faces;
  std::vector<std::pair<std::array<int, 2>, double>> lengths;
  auto add_len = [&](int u, int v, double l) { lengths.push_back({{u, v}, l}); };
  const double dx = 1.0 / n, diag = dx * std::sqrt(2.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int a = idx(i, j), b = idx(i + 1, j), c = idx(i + 1, j + 1), d = idx(i, j + 1);
      faces.push_back({a, b, c});
      faces.push_back({a, c, d});
      add_len(a, b, dx), add_len(b, c, dx), add_len(c, d, dx), add_len(d, a, dx), add_len(a, c, diag);
      const int a2 = back[a], b2 = back[b], c2 = back[c], d2 = back[d];
      add_len(a2, b2, dx), add_len(b2, c2, dx), add_len(c2, d2, dx), add_len(d2, a2, dx);
      // avoid doubling the front diagonal when both its endpoints sit on
      // the shared ring (corner cells)
      if (a2 != a || c2 != c) {
        faces.push_back({a2, c2, b2});
        faces.push_back({a2, d2, c2});
        add_len(a2, c2, diag);
      } else {
        faces.push_back({a2, d2, b2});
        faces.push_back({b2, d2, c2});
        add_len(b2, d2, diag);
      }
    }
  return TriMesh::from_lengths(next, std::move(faces), lengths, std::move(pos));
}

std::shared_ptr<const TriMesh> gen_octahedron() {
  std::vector<Vec3> pos = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  std::vector<TriMesh::FaceV> faces = {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4},
                                       {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
  return TriMesh::from_positions(std::move(faces), std::move(pos));
}

std::shared_ptr<const TriMesh> gen_icosahedron() {
  SphereTri s = icosahedron_directions();
  return TriMesh::from_positions(std::move(s.faces), std::move(s.pos));
}

}  // namespace theta
