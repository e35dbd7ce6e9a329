#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mfe/types.hpp"

namespace mfe {

/// Vertex indices of one cell. A k-simplex uses the first k+1 entries; a box
/// cell uses two (opposite corners lo, hi).
using Cell = std::array<int, 4>;

enum class CellType { Simplex, Box };

/// A compact k-dimensional set in [0,1]^d given as a union of flat cells,
/// carrying the k-dimensional Hausdorff measure. For k = 0 the cells are
/// single points and the measure is counting measure.
///
/// Construction checks structure only (dimensions, index ranges, cell
/// arity); geometric conditions are reported by validate_manifold.
class SimplicialManifold {
 public:
  static SimplicialManifold create(int d, int k, std::vector<Point> vertices, std::vector<Cell> cells,
                                   CellType type = CellType::Simplex);

  int ambient_dim() const { return d_; }
  int intrinsic_dim() const { return k_; }
  CellType cell_type() const { return type_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Cell>& cells() const { return cells_; }
  /// Vertices per cell: k+1 for simplices, 2 for boxes.
  int cell_arity() const { return type_ == CellType::Box ? 2 : k_ + 1; }

  /// Measure of cell i (length/area/volume, 1 for a point).
  double cell_measure(std::size_t i) const;

 private:
  SimplicialManifold() = default;

  int d_ = 0;
  int k_ = 0;
  CellType type_ = CellType::Simplex;
  std::vector<Point> vertices_;
  std::vector<Cell> cells_;
};

/// A manifold with one sample per vertex, interpolated linearly on simplices
/// (box cells use the mean of their two corner samples).
struct ManifoldFunction {
  SimplicialManifold manifold;
  std::vector<double> values;

  static ManifoldFunction create(SimplicialManifold manifold, std::vector<double> values);
  /// Vertex values taken from a field evaluated at each vertex.
  template <typename F>
  static ManifoldFunction sample(SimplicialManifold manifold, F&& field) {
    std::vector<double> v;
    v.reserve(manifold.vertices().size());
    for (const Point& p : manifold.vertices()) v.push_back(field(coords(p, manifold.ambient_dim())));
    return create(std::move(manifold), std::move(v));
  }
  /// Constant value c on every vertex.
  static ManifoldFunction constant(SimplicialManifold manifold, double c);
};

/// sqrt(det(J^T J)) / k! for the edge matrix J of a k-simplex embedded in R^d;
/// 1 for a single point. Throws degenerate-simplex when the result vanishes.
double simplex_measure(std::span<const Point> corners, int d);

/// Total k-dimensional Hausdorff measure (pairwise summation in cell order).
double hausdorff_measure(const SimplicialManifold& manifold);

/// Fixed-order pairwise summation; used wherever results must not depend on
/// accumulation order beyond the input order.
double pairwise_sum(std::span<const double> values);

struct QuadratureNode {
  Point x{};
  double weight = 0.0;
  std::uint32_t cell = 0;
  /// Interpolation of vertex data at x: sum_i lambda[i] * values[vertex[i]].
  std::array<int, 4> vertex{};
  std::array<double, 4> lambda{};
};

struct QuadratureRule {
  int degree = 0;
  std::vector<QuadratureNode> nodes;
};

/// Largest per-cell polynomial degree quadrature_nodes accepts.
inline constexpr int kMaxQuadratureDegree = 256;

/// Quadrature over the manifold exact for polynomials of total degree
/// <= `degree` on every cell: vertex points for k = 0, Gauss-Legendre on
/// segments, tabulated symmetric rules (degree <= 2) or collapsed-coordinate
/// Gauss product rules for triangles and tetrahedra, tensor Gauss on boxes.
QuadratureRule quadrature_nodes(const SimplicialManifold& manifold, int degree);

/// Interpolated manifold-function value at a quadrature node. Written as
/// v0 + sum lambda_i (v_i - v0) so constant data is reproduced exactly.
inline double interpolate(const ManifoldFunction& mf, const QuadratureNode& node, int arity) {
  const double v0 = mf.values[node.vertex[0]];
  double v = 0.0;
  for (int i = 1; i < arity; ++i) v += node.lambda[i] * (mf.values[node.vertex[i]] - v0);
  return v0 + v;
}

enum class Severity { Fatal, Warning, Advisory };

struct ValidationIssue {
  Severity severity;
  std::string code;  ///< containment, non-finite, degenerate, duplicate-vertex, boundary-contact, overlap
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool has_fatal() const;
  bool has(const std::string& code) const;
  std::string summary() const;
};

/// Diagnostics for a manifold. `periodic` adds the interior-only requirement
/// of the Fourier basis (no vertex may touch the boundary of [0,1]^d). The
/// intersection condition between cells is only checked heuristically:
/// duplicated cells are flagged as advisory overlap.
ValidationReport validate_manifold(const SimplicialManifold& manifold, bool periodic = false);

}  // namespace mfe
