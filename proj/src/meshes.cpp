#include "mfe/meshes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "mfe/error.hpp"
#include "mfe/random.hpp"

namespace mfe::meshes {

namespace {

void require_positive(int v, const char* what) {
  if (v < 1) fail(ErrorKind::Usage, "invalid-mesh-parameter", std::string(what) + " must be >= 1");
}

}  // namespace

SimplicialManifold polygon_boundary(const Point& center, double radius, int sides, double phase) {
  if (sides < 3) fail(ErrorKind::Usage, "invalid-mesh-parameter", "polygon needs at least 3 sides");
  std::vector<Point> v(sides);
  std::vector<Cell> c(sides);
  for (int i = 0; i < sides; ++i) {
    const double t = phase + 2.0 * std::numbers::pi * i / sides;
    v[i] = {center[0] + radius * std::cos(t), center[1] + radius * std::sin(t), 0.0};
    c[i] = {i, (i + 1) % sides, 0, 0};
  }
  return SimplicialManifold::create(2, 1, std::move(v), std::move(c));
}

SimplicialManifold circle(const Point& center, double radius, int segments) {
  return polygon_boundary(center, radius, segments, 0.0);
}

SimplicialManifold disk(const Point& center, double radius, int segments) {
  if (segments < 3) fail(ErrorKind::Usage, "invalid-mesh-parameter", "disk needs at least 3 boundary segments");
  std::vector<Point> v(segments + 1);
  std::vector<Cell> c(segments);
  v[0] = {center[0], center[1], 0.0};
  for (int i = 0; i < segments; ++i) {
    const double t = 2.0 * std::numbers::pi * i / segments;
    v[i + 1] = {center[0] + radius * std::cos(t), center[1] + radius * std::sin(t), 0.0};
    c[i] = {0, i + 1, (i + 1) % segments + 1, 0};
  }
  return SimplicialManifold::create(2, 2, std::move(v), std::move(c));
}

namespace {

SimplicialManifold icosphere_ball(const Point& center, double radius, int levels) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<std::array<double, 3>> dirs = {{-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
                                             {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
                                             {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
  std::vector<std::array<int, 3>> faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                           {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                           {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                           {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  auto normalize = [](std::array<double, 3> p) {
    const double n = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    return std::array<double, 3>{p[0] / n, p[1] / n, p[2] / n};
  };
  for (auto& d : dirs) d = normalize(d);
  for (int level = 0; level < levels; ++level) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      dirs.push_back(normalize({dirs[a][0] + dirs[b][0], dirs[a][1] + dirs[b][1], dirs[a][2] + dirs[b][2]}));
      const int id = static_cast<int>(dirs.size()) - 1;
      midpoint.emplace(key, id);
      return id;
    };
    std::vector<std::array<int, 3>> next;
    for (const auto& f : faces) {
      const int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }
  std::vector<Point> v;
  v.push_back(center);
  for (const auto& d : dirs)
    v.push_back({center[0] + radius * d[0], center[1] + radius * d[1], center[2] + radius * d[2]});
  std::vector<Cell> cells;
  for (const auto& f : faces) cells.push_back({0, f[0] + 1, f[1] + 1, f[2] + 1});
  return SimplicialManifold::create(3, 3, std::move(v), std::move(cells));
}

}  // namespace

SimplicialManifold ball(int d, const Point& center, double radius, int resolution) {
  require_positive(resolution, "resolution");
  switch (d) {
    case 1: return segment({center[0] - radius, 0, 0}, {center[0] + radius, 0, 0}, 1, 1);
    case 2: return disk(center, radius, std::max(resolution, 3));
    case 3: return icosphere_ball(center, radius, resolution);
    default: fail(ErrorKind::Usage, "unsupported-dimension", "ball dimension must be 1, 2 or 3");
  }
}

SimplicialManifold unit_square() {
  return SimplicialManifold::create(2, 2, {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}, {{0, 1, 2, 0}, {0, 2, 3, 0}});
}

SimplicialManifold unit_box(int d) {
  Point hi{};
  for (int j = 0; j < d; ++j) hi[j] = 1.0;
  return SimplicialManifold::create(d, d, {Point{}, hi}, {{0, 1, 0, 0}}, CellType::Box);
}

SimplicialManifold segment(const Point& a, const Point& b, int d, int pieces) {
  require_positive(pieces, "pieces");
  std::vector<Point> v(pieces + 1);
  std::vector<Cell> c(pieces);
  for (int i = 0; i <= pieces; ++i) {
    const double t = static_cast<double>(i) / pieces;
    for (int j = 0; j < d; ++j) v[i][j] = (1.0 - t) * a[j] + t * b[j];
  }
  for (int i = 0; i < pieces; ++i) c[i] = {i, i + 1, 0, 0};
  return SimplicialManifold::create(d, 1, std::move(v), std::move(c));
}

SimplicialManifold point_set(const std::vector<Point>& points, int d) {
  return SimplicialManifold::create(d, 0, points, {});
}

ManifoldFunction refine_barycentric(const ManifoldFunction& mf) {
  const SimplicialManifold& m = mf.manifold;
  if (m.cell_type() != CellType::Simplex)
    fail(ErrorKind::Usage, "invalid-manifold", "barycentric refinement applies to simplicial cells only");
  const int k = m.intrinsic_dim();
  const int d = m.ambient_dim();
  if (k == 0) return mf;

  std::vector<Point> verts;
  std::vector<double> values;
  std::map<std::vector<int>, int> barycenter_of;
  auto barycenter = [&](std::vector<int> subset) {
    std::sort(subset.begin(), subset.end());
    auto it = barycenter_of.find(subset);
    if (it != barycenter_of.end()) return it->second;
    Point p{};
    double val = 0.0;
    for (int v : subset) {
      for (int j = 0; j < d; ++j) p[j] += m.vertices()[v][j] / subset.size();
      val += mf.values[v] / subset.size();
    }
    verts.push_back(p);
    values.push_back(val);
    const int id = static_cast<int>(verts.size()) - 1;
    barycenter_of.emplace(subset, id);
    return id;
  };

  std::vector<Cell> cells;
  for (const Cell& cell : m.cells()) {
    std::vector<int> perm(k + 1);
    for (int i = 0; i <= k; ++i) perm[i] = i;
    do {
      Cell child{};
      std::vector<int> subset;
      for (int i = 0; i <= k; ++i) {
        subset.push_back(cell[perm[i]]);
        child[i] = barycenter(subset);
      }
      cells.push_back(child);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return ManifoldFunction::create(SimplicialManifold::create(d, k, std::move(verts), std::move(cells)),
                                  std::move(values));
}

}  // namespace mfe::meshes

namespace mfe {

PointSamples sample_uniform(const ManifoldFunction& mf, std::size_t count, std::uint64_t seed) {
  const SimplicialManifold& m = mf.manifold;
  const std::size_t ncell = m.cells().size();
  std::vector<double> cdf(ncell);
  double acc = 0.0;
  for (std::size_t c = 0; c < ncell; ++c) {
    acc += m.cell_measure(c);
    cdf[c] = acc;
  }
  Rng rng(seed);
  PointSamples out;
  out.points.reserve(count);
  out.values.reserve(count);
  const int d = m.ambient_dim();
  const int arity = m.cell_arity();
  for (std::size_t s = 0; s < count; ++s) {
    const double target = rng.uniform() * acc;
    std::size_t c = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), target) - cdf.begin());
    c = std::min(c, ncell - 1);
    const Cell& cell = m.cells()[c];
    Point p{};
    double value = 0.0;
    if (m.cell_type() == CellType::Box) {
      const Point& lo = m.vertices()[cell[0]];
      const Point& hi = m.vertices()[cell[1]];
      for (int j = 0; j < d; ++j) p[j] = lo[j] + rng.uniform() * (hi[j] - lo[j]);
      value = 0.5 * (mf.values[cell[0]] + mf.values[cell[1]]);
    } else {
      // Flat Dirichlet weights from normalized exponential draws.
      std::array<double, 4> lambda{};
      double total = 0.0;
      for (int a = 0; a < arity; ++a) {
        lambda[a] = -std::log(1.0 - rng.uniform());
        total += lambda[a];
      }
      for (int a = 0; a < arity; ++a) {
        lambda[a] /= total;
        for (int j = 0; j < d; ++j) p[j] += lambda[a] * m.vertices()[cell[a]][j];
        value += lambda[a] * mf.values[cell[a]];
      }
    }
    for (int j = 0; j < d; ++j) p[j] = std::clamp(p[j], 0.0, 1.0);
    out.points.push_back(p);
    out.values.push_back(value);
  }
  return out;
}

}  // namespace mfe
