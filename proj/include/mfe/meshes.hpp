#pragma once

#include <cstdint>
#include <vector>

#include "mfe/geometry.hpp"

namespace mfe::meshes {

/// Closed polygon inscribed in the circle, `segments` edges (k=1, d=2).
SimplicialManifold circle(const Point& center, double radius, int segments);

/// Closed regular polygon boundary with `sides` edges, rotated by `phase` radians.
SimplicialManifold polygon_boundary(const Point& center, double radius, int sides, double phase = 0.0);

/// Triangle fan approximating the disk by an inscribed regular polygon (k=d=2).
SimplicialManifold disk(const Point& center, double radius, int segments);

/// Ball of radius r around center: interval (d=1), disk fan (d=2), or cones
/// from the center over a subdivided icosahedron (d=3). `resolution` is the
/// number of boundary segments (d=2) or icosphere subdivision levels (d=3).
SimplicialManifold ball(int d, const Point& center, double radius, int resolution);

/// [0,1]^2 as two triangles.
SimplicialManifold unit_square();

/// [0,1]^d as one box cell.
SimplicialManifold unit_box(int d);

/// Straight segment from a to b in R^d, split into `pieces` equal parts.
SimplicialManifold segment(const Point& a, const Point& b, int d, int pieces = 1);

/// Isolated points (k=0).
SimplicialManifold point_set(const std::vector<Point>& points, int d);

/// Barycentric subdivision of every simplex ((k+1)! children each); vertex
/// values are extended linearly.
ManifoldFunction refine_barycentric(const ManifoldFunction& mf);

}  // namespace mfe::meshes

namespace mfe {

/// Points drawn from the normalized Hausdorff measure of the manifold
/// (cells chosen proportionally to their measure, uniform inside a cell),
/// with the interpolated manifold-function value at each point.
struct PointSamples {
  std::vector<Point> points;
  std::vector<double> values;
};

PointSamples sample_uniform(const ManifoldFunction& mf, std::size_t count, std::uint64_t seed);

}  // namespace mfe
