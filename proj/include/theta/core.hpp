#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace theta {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

// Relative tolerance used for exact-by-construction quantities (areas,
// lengths recomputed through charts).
inline constexpr double kExactRelTol = 1e-9;
// Snapping tolerance for curve parameters along edges, relative to the
// edge length.
inline constexpr double kParamSnapTol = 1e-9;

struct theta_error : std::runtime_error {
  explicit theta_error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw theta_error(what);
}

/// Numerically guarded Heron area from the three side lengths.
inline double heron_area(double a, double b, double c) {
  // sort a >= b >= c
  if (a < b) std::swap(a, b);
  if (b < c) std::swap(b, c);
  if (a < b) std::swap(a, b);
  const double s = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
  return s > 0.0 ? 0.25 * std::sqrt(s) : 0.0;
}

/// Number of worker threads, capped by the THETA_SWEEP_THREADS env var.
int worker_threads();

/// Runs fn(i) for i in [0, n). Results must not depend on scheduling; the
/// candidate searches that use this reduce with deterministic argmin.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace theta
