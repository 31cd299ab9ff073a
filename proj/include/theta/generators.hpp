#pragma once

#include "theta/mesh.hpp"

namespace theta {

/// Flat axis-aligned unit square, n x n cells, two triangles per cell.
std::shared_ptr<const TriMesh> gen_square(int n);

/// Flat w x h rectangle; the grid is n cells along the longer side with the
/// cell aspect kept near 1.
std::shared_ptr<const TriMesh> gen_rectangle(double w, double h, int n);

/// Planar trapezoid with horizontal sides a (bottom) and b (top), height h,
/// top side shifted by `skew`.
std::shared_ptr<const TriMesh> gen_trapezoid(double a, double b, double h, double skew, int n);

/// Subdivided icosahedron projected to the round sphere, chord-length
/// metric, scaled to the requested total area.
std::shared_ptr<const TriMesh> gen_icosphere(int depth, double target_area);

/// Icosphere mapped onto an ellipsoid with semi-axes a, b, c, then scaled
/// to the requested total area.
std::shared_ptr<const TriMesh> gen_ellipsoid(double a, double b, double c, int depth,
                                             double target_area);

/// Sphere with m tubular fingers; adversarial input that forces branching
/// sweeps. Scaled to the requested total area.
std::shared_ptr<const TriMesh> gen_fingers(int m, int depth, double target_area = 1.0);

/// Intrinsically flat cylinder (annulus) of circumference c and height h.
/// Positions roll it into 3D; the metric is the exact flat one.
std::shared_ptr<const TriMesh> gen_cylinder(double c, double h, int nx, int ny);

/// Two unit squares glued along their boundaries: a piecewise-flat sphere
/// of area 2 with four cone points.
std::shared_ptr<const TriMesh> gen_pillow(int n);

/// Regular octahedron with edge length sqrt(2).
std::shared_ptr<const TriMesh> gen_octahedron();

std::shared_ptr<const TriMesh> gen_icosahedron();

}  // namespace theta
