#include "mfe/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <Eigen/Dense>

#include "mfe/error.hpp"
#include "mfe/gauss.hpp"

namespace mfe {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

/// Reference rule on the unit k-simplex: barycentric coordinates and the
/// fraction of the cell measure carried by each node.
struct ReferenceNode {
  std::array<double, 4> lambda{};
  double fraction = 0.0;
};

std::vector<ReferenceNode> segment_rule(int degree) {
  const GaussRule1d g = gauss_legendre(gauss_count_for_degree(degree));
  std::vector<ReferenceNode> out;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) out.push_back({{1.0 - g.nodes[i], g.nodes[i], 0.0, 0.0}, g.weights[i]});
  return out;
}

std::vector<ReferenceNode> triangle_rule(int degree) {
  if (degree <= 1) return {{{1.0 / 3, 1.0 / 3, 1.0 / 3, 0.0}, 1.0}};
  if (degree == 2) {
    const double a = 2.0 / 3, b = 1.0 / 6;
    return {{{a, b, b, 0.0}, 1.0 / 3}, {{b, a, b, 0.0}, 1.0 / 3}, {{b, b, a, 0.0}, 1.0 / 3}};
  }
  // Collapsed coordinates xi1 = u, xi2 = v (1 - u), Jacobian (1 - u).
  const GaussRule1d gu = gauss_legendre(gauss_count_for_degree(degree + 1));
  const GaussRule1d gv = gauss_legendre(gauss_count_for_degree(degree));
  std::vector<ReferenceNode> out;
  for (std::size_t i = 0; i < gu.nodes.size(); ++i) {
    const double u = gu.nodes[i];
    for (std::size_t j = 0; j < gv.nodes.size(); ++j) {
      const double xi1 = u, xi2 = gv.nodes[j] * (1.0 - u);
      out.push_back({{1.0 - xi1 - xi2, xi1, xi2, 0.0}, 2.0 * gu.weights[i] * gv.weights[j] * (1.0 - u)});
    }
  }
  return out;
}

std::vector<ReferenceNode> tetrahedron_rule(int degree) {
  if (degree <= 1) return {{{0.25, 0.25, 0.25, 0.25}, 1.0}};
  if (degree == 2) {
    const double b = (5.0 - std::sqrt(5.0)) / 20.0, a = 1.0 - 3.0 * b;
    return {{{a, b, b, b}, 0.25}, {{b, a, b, b}, 0.25}, {{b, b, a, b}, 0.25}, {{b, b, b, a}, 0.25}};
  }
  // xi1 = u, xi2 = v (1-u), xi3 = w (1-u)(1-v), Jacobian (1-u)^2 (1-v).
  const GaussRule1d gu = gauss_legendre(gauss_count_for_degree(degree + 2));
  const GaussRule1d gv = gauss_legendre(gauss_count_for_degree(degree + 1));
  const GaussRule1d gw = gauss_legendre(gauss_count_for_degree(degree));
  std::vector<ReferenceNode> out;
  for (std::size_t i = 0; i < gu.nodes.size(); ++i) {
    const double u = gu.nodes[i];
    for (std::size_t j = 0; j < gv.nodes.size(); ++j) {
      const double v = gv.nodes[j];
      for (std::size_t l = 0; l < gw.nodes.size(); ++l) {
        const double xi1 = u, xi2 = v * (1.0 - u), xi3 = gw.nodes[l] * (1.0 - u) * (1.0 - v);
        const double frac = 6.0 * gu.weights[i] * gv.weights[j] * gw.weights[l] * (1.0 - u) * (1.0 - u) * (1.0 - v);
        out.push_back({{1.0 - xi1 - xi2 - xi3, xi1, xi2, xi3}, frac});
      }
    }
  }
  return out;
}

double pairwise_sum_range(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum_range(v, h) + pairwise_sum_range(v + h, n - h);
}

}  // namespace

double pairwise_sum(std::span<const double> values) { return pairwise_sum_range(values.data(), values.size()); }

SimplicialManifold SimplicialManifold::create(int d, int k, std::vector<Point> vertices, std::vector<Cell> cells,
                                              CellType type) {
  if (d < 1 || d > kMaxDim)
    fail(ErrorKind::Data, "unsupported-dimension", "ambient dimension must be in [1,3], got " + std::to_string(d));
  if (k < 0 || k > d)
    fail(ErrorKind::Data, "invalid-manifold", "intrinsic dimension " + std::to_string(k) + " outside [0," +
                                                  std::to_string(d) + "]");
  if (type == CellType::Box && k != d)
    fail(ErrorKind::Data, "invalid-manifold", "box cells require k == d");
  if (vertices.empty()) fail(ErrorKind::Data, "invalid-manifold", "manifold has no vertices");
  if (k == 0 && cells.empty()) {
    for (std::size_t i = 0; i < vertices.size(); ++i) cells.push_back({static_cast<int>(i), 0, 0, 0});
  }
  if (cells.empty()) fail(ErrorKind::Data, "invalid-manifold", "manifold has no cells");
  for (Point& p : vertices)
    for (int j = d; j < kMaxDim; ++j) p[j] = 0.0;

  SimplicialManifold m;
  m.d_ = d;
  m.k_ = k;
  m.type_ = type;
  const int arity = m.cell_arity();
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (int i = 0; i < arity; ++i) {
      if (cells[c][i] < 0 || cells[c][i] >= static_cast<int>(vertices.size()))
        fail(ErrorKind::Data, "invalid-manifold",
             "cell " + std::to_string(c) + " references vertex " + std::to_string(cells[c][i]));
    }
    for (int i = arity; i < 4; ++i) cells[c][i] = 0;
  }
  m.vertices_ = std::move(vertices);
  m.cells_ = std::move(cells);
  return m;
}

double SimplicialManifold::cell_measure(std::size_t i) const {
  const Cell& c = cells_.at(i);
  if (type_ == CellType::Box) {
    double v = 1.0;
    for (int j = 0; j < d_; ++j) v *= std::abs(vertices_[c[1]][j] - vertices_[c[0]][j]);
    if (!(v > 0.0)) fail(ErrorKind::Data, "degenerate-simplex", "box cell " + std::to_string(i) + " has zero volume");
    return v;
  }
  std::array<Point, 4> corners{};
  for (int a = 0; a <= k_; ++a) corners[a] = vertices_[c[a]];
  return simplex_measure(std::span<const Point>(corners.data(), k_ + 1), d_);
}

double simplex_measure(std::span<const Point> corners, int d) {
  const int k = static_cast<int>(corners.size()) - 1;
  if (k < 0 || k > d) fail(ErrorKind::Usage, "invalid-manifold", "simplex needs between 1 and d+1 corners");
  if (k == 0) return 1.0;
  Eigen::MatrixXd jac(d, k);
  double scale = 0.0;
  for (int a = 0; a < k; ++a)
    for (int j = 0; j < d; ++j) {
      jac(j, a) = corners[a + 1][j] - corners[0][j];
      scale = std::max(scale, std::abs(jac(j, a)));
    }
  const double det = (jac.transpose() * jac).determinant();
  const double measure = std::sqrt(std::max(det, 0.0)) / factorial(k);
  if (!(scale > 0.0) || !(measure > 1e-14 * std::pow(scale, k)))
    fail(ErrorKind::Data, "degenerate-simplex", "simplex has zero " + std::to_string(k) + "-dimensional measure");
  return measure;
}

double hausdorff_measure(const SimplicialManifold& manifold) {
  std::vector<double> parts(manifold.cells().size());
  for (std::size_t i = 0; i < parts.size(); ++i) parts[i] = manifold.cell_measure(i);
  return pairwise_sum(parts);
}

ManifoldFunction ManifoldFunction::create(SimplicialManifold manifold, std::vector<double> values) {
  if (values.size() != manifold.vertices().size())
    fail(ErrorKind::Data, "invalid-manifold-function",
         std::to_string(values.size()) + " values for " + std::to_string(manifold.vertices().size()) + " vertices");
  for (double v : values)
    if (!std::isfinite(v)) fail(ErrorKind::Data, "invalid-manifold-function", "non-finite vertex value");
  return ManifoldFunction{std::move(manifold), std::move(values)};
}

ManifoldFunction ManifoldFunction::constant(SimplicialManifold manifold, double c) {
  std::vector<double> v(manifold.vertices().size(), c);
  return create(std::move(manifold), std::move(v));
}

QuadratureRule quadrature_nodes(const SimplicialManifold& manifold, int degree) {
  if (degree < 1) fail(ErrorKind::Usage, "degree-unsupported", "quadrature degree must be >= 1");
  if (degree > kMaxQuadratureDegree)
    fail(ErrorKind::Usage, "degree-unsupported", "quadrature degree " + std::to_string(degree) + " exceeds " +
                                                     std::to_string(kMaxQuadratureDegree));
  const int d = manifold.ambient_dim();
  const int k = manifold.intrinsic_dim();
  QuadratureRule rule;
  rule.degree = degree;

  if (manifold.cell_type() == CellType::Box) {
    const GaussRule1d g = gauss_legendre(gauss_count_for_degree(degree));
    const std::size_t q = g.nodes.size();
    std::size_t per_cell = 1;
    for (int j = 0; j < d; ++j) per_cell *= q;
    rule.nodes.reserve(per_cell * manifold.cells().size());
    for (std::size_t c = 0; c < manifold.cells().size(); ++c) {
      const Cell& cell = manifold.cells()[c];
      const Point& lo = manifold.vertices()[cell[0]];
      const Point& hi = manifold.vertices()[cell[1]];
      const double measure = manifold.cell_measure(c);
      for (std::size_t t = 0; t < per_cell; ++t) {
        QuadratureNode node;
        std::size_t rest = t;
        double frac = 1.0;
        for (int j = d - 1; j >= 0; --j) {
          const std::size_t i = rest % q;
          rest /= q;
          node.x[j] = lo[j] + g.nodes[i] * (hi[j] - lo[j]);
          frac *= g.weights[i];
        }
        node.weight = measure * frac;
        node.cell = static_cast<std::uint32_t>(c);
        node.vertex = {cell[0], cell[1], 0, 0};
        node.lambda = {0.5, 0.5, 0.0, 0.0};
        rule.nodes.push_back(node);
      }
    }
    return rule;
  }

  std::vector<ReferenceNode> ref;
  switch (k) {
    case 0: ref = {{{1.0, 0.0, 0.0, 0.0}, 1.0}}; break;
    case 1: ref = segment_rule(degree); break;
    case 2: ref = triangle_rule(degree); break;
    default: ref = tetrahedron_rule(degree); break;
  }
  rule.nodes.reserve(ref.size() * manifold.cells().size());
  for (std::size_t c = 0; c < manifold.cells().size(); ++c) {
    const Cell& cell = manifold.cells()[c];
    const double measure = manifold.cell_measure(c);
    for (const ReferenceNode& r : ref) {
      QuadratureNode node;
      for (int a = 0; a <= k; ++a)
        for (int j = 0; j < d; ++j) node.x[j] += r.lambda[a] * manifold.vertices()[cell[a]][j];
      node.weight = measure * r.fraction;
      node.cell = static_cast<std::uint32_t>(c);
      node.vertex = cell;
      node.lambda = r.lambda;
      rule.nodes.push_back(node);
    }
  }
  return rule;
}

bool ValidationReport::has_fatal() const {
  return std::any_of(issues.begin(), issues.end(), [](const ValidationIssue& i) { return i.severity == Severity::Fatal; });
}

bool ValidationReport::has(const std::string& code) const {
  return std::any_of(issues.begin(), issues.end(), [&](const ValidationIssue& i) { return i.code == code; });
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const ValidationIssue& i : issues) {
    const char* sev = i.severity == Severity::Fatal ? "fatal" : i.severity == Severity::Warning ? "warning" : "advisory";
    os << sev << " [" << i.code << "] " << i.message << '\n';
  }
  return os.str();
}

ValidationReport validate_manifold(const SimplicialManifold& manifold, bool periodic) {
  ValidationReport report;
  const int d = manifold.ambient_dim();
  const auto& verts = manifold.vertices();
  constexpr double kTouch = 1e-12;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    bool finite = true, inside = true, touches = false;
    for (int j = 0; j < d; ++j) {
      const double v = verts[i][j];
      finite = finite && std::isfinite(v);
      inside = inside && v >= 0.0 && v <= 1.0;
      touches = touches || v <= kTouch || v >= 1.0 - kTouch;
    }
    if (!finite) {
      report.issues.push_back({Severity::Fatal, "non-finite", "vertex " + std::to_string(i) + " has a non-finite coordinate"});
    } else if (!inside) {
      report.issues.push_back({Severity::Fatal, "containment", "vertex " + std::to_string(i) + " lies outside [0,1]^d"});
    } else if (periodic && touches) {
      report.issues.push_back(
          {Severity::Warning, "boundary-contact", "vertex " + std::to_string(i) + " touches the boundary of [0,1]^d"});
    }
  }

  std::vector<std::size_t> order(verts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return verts[a] < verts[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (verts[order[i]] == verts[order[i - 1]])
      report.issues.push_back({Severity::Warning, "duplicate-vertex",
                               "vertices " + std::to_string(order[i - 1]) + " and " + std::to_string(order[i]) +
                                   " coincide"});
  }

  if (manifold.intrinsic_dim() >= 1) {
    for (std::size_t c = 0; c < manifold.cells().size(); ++c) {
      try {
        manifold.cell_measure(c);
      } catch (const Error&) {
        report.issues.push_back({Severity::Warning, "degenerate", "cell " + std::to_string(c) + " has zero measure"});
      }
    }
  }

  std::map<std::array<int, 4>, std::size_t> seen;
  const int arity = manifold.cell_arity();
  for (std::size_t c = 0; c < manifold.cells().size(); ++c) {
    std::array<int, 4> key{-1, -1, -1, -1};
    std::copy_n(manifold.cells()[c].begin(), arity, key.begin());
    std::sort(key.begin(), key.begin() + arity);
    auto [it, inserted] = seen.emplace(key, c);
    if (!inserted)
      report.issues.push_back({Severity::Advisory, "overlap",
                               "cells " + std::to_string(it->second) + " and " + std::to_string(c) +
                                   " share all vertices"});
  }
  return report;
}

}  // namespace mfe
