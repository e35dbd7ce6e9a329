#include "mfe/encoder.hpp"

#include <cmath>

#include "mfe/error.hpp"

namespace mfe {

std::string to_string(Normalization n) { return n == Normalization::Raw ? "raw" : "measure-normalized"; }

Normalization normalization_from_string(const std::string& s) {
  if (s == "raw") return Normalization::Raw;
  if (s == "measure-normalized") return Normalization::MeasureNormalized;
  fail(ErrorKind::Data, "parse-error", "unknown normalization '" + s + "'");
}

std::string to_string(IntegrationMethod m) { return m == IntegrationMethod::Quadrature ? "quadrature" : "monte-carlo"; }

IntegrationMethod method_from_string(const std::string& s) {
  if (s == "quadrature") return IntegrationMethod::Quadrature;
  if (s == "monte-carlo") return IntegrationMethod::MonteCarlo;
  fail(ErrorKind::Data, "parse-error", "unknown integration method '" + s + "'");
}

bool EncodedVector::has_block(const std::string& name) const {
  for (const Block& b : blocks)
    if (b.name == name) return true;
  return false;
}

const std::vector<double>& EncodedVector::block(const std::string& name) const {
  for (const Block& b : blocks)
    if (b.name == name) return b.values;
  fail(ErrorKind::Usage, "block-not-present", "encoded vector has no block '" + name + "'");
}

std::vector<double>& EncodedVector::block(const std::string& name) {
  return const_cast<std::vector<double>&>(static_cast<const EncodedVector&>(*this).block(name));
}

std::vector<double> EncodedVector::flattened() const {
  std::vector<double> out;
  for (const Block& b : blocks) out.insert(out.end(), b.values.begin(), b.values.end());
  return out;
}

int default_encode_degree(const BasisSpec& basis) {
  const int d = basis.dim(), n = basis.order();
  return basis.family() == Family::LegendreTensor ? d * (n - 1) + 2 : d * (2 * n + 2);
}

namespace {

void check_compatible(const ManifoldFunction& mf, const BasisSpec& basis) {
  const SimplicialManifold& m = mf.manifold;
  if (m.ambient_dim() != basis.dim())
    fail(ErrorKind::Usage, "dimension-mismatch", "manifold lives in d=" + std::to_string(m.ambient_dim()) +
                                                     " but basis has d=" + std::to_string(basis.dim()));
  const ValidationReport report = validate_manifold(m, basis.family() == Family::FourierTensor);
  if (report.has("containment") || report.has("non-finite"))
    fail(ErrorKind::Data, "invalid-manifold", report.summary());
  if (report.has("boundary-contact"))
    fail(ErrorKind::Data, "periodic-boundary-contact",
         "the Fourier basis requires manifolds in the interior of [0,1]^d");
}

struct Integrals {
  std::vector<double> shape;
  std::vector<double> function;
  std::size_t nodes = 0;
};

Integrals integrate(const ManifoldFunction& mf, const BasisSpec& basis, int degree, const ScalarField* shape_weight) {
  const SimplicialManifold& m = mf.manifold;
  const QuadratureRule rule = quadrature_nodes(m, degree);
  const std::size_t kappa = basis.size();
  const int d = basis.dim();
  const int arity = m.cell_arity();
  Integrals out{std::vector<double>(kappa, 0.0), std::vector<double>(kappa, 0.0), rule.nodes.size()};
  std::vector<double> phi(kappa);
  for (const QuadratureNode& node : rule.nodes) {
    const std::span<const double> x(node.x.data(), d);
    eval_all(basis, x, phi);
    const double ws = node.weight * (shape_weight ? (*shape_weight)(x) : 1.0);
    const double wf = node.weight * interpolate(mf, node, arity);
    for (std::size_t i = 0; i < kappa; ++i) {
      out.shape[i] += ws * phi[i];
      out.function[i] += wf * phi[i];
    }
  }
  return out;
}

int resolve_degree(const BasisSpec& basis, const EncodeOptions& options) {
  return options.degree > 0 ? options.degree : default_encode_degree(basis);
}

}  // namespace

EncodedVector encode(const ManifoldFunction& mf, const BasisSpec& basis, const EncodeOptions& options) {
  check_compatible(mf, basis);
  const int degree = resolve_degree(basis, options);
  Integrals in = integrate(mf, basis, degree, options.shape_weight);
  EncodedVector ev{basis, mf.manifold.intrinsic_dim(), Normalization::Raw, {}, {}};
  ev.provenance = {IntegrationMethod::Quadrature, degree, in.nodes, 0, false};
  ev.blocks.push_back({kShapeBlock, std::move(in.shape)});
  ev.blocks.push_back({kFunctionBlock, std::move(in.function)});
  return ev;
}

void JointManifoldFunction::add(ManifoldFunction mf) {
  const int k = mf.manifold.intrinsic_dim();
  if (parts[k]) fail(ErrorKind::Usage, "duplicate-dimension", "joint input already has a " + std::to_string(k) + "-dimensional part");
  const int d = ambient_dim();
  if (d != 0 && d != mf.manifold.ambient_dim())
    fail(ErrorKind::Usage, "dimension-mismatch", "joint parts must share the ambient dimension");
  parts[k] = std::move(mf);
}

int JointManifoldFunction::ambient_dim() const {
  for (const auto& p : parts)
    if (p) return p->manifold.ambient_dim();
  return 0;
}

EncodedVector encode_joint(const JointManifoldFunction& jmf, const BasisSpec& basis, const EncodeOptions& options) {
  const std::size_t kappa = basis.size();
  const int degree = resolve_degree(basis, options);
  std::vector<double> shape(kappa, 0.0), function(kappa, 0.0);
  std::size_t nodes = 0;
  bool any = false;
  for (std::size_t k = 0; k < jmf.parts.size(); ++k) {
    if (!jmf.parts[k]) continue;
    const ManifoldFunction& mf = *jmf.parts[k];
    if (mf.manifold.intrinsic_dim() != static_cast<int>(k))
      fail(ErrorKind::Usage, "dimension-mismatch", "joint slot " + std::to_string(k) + " holds a manifold of another dimension");
    check_compatible(mf, basis);
    any = true;
    const double inv = 1.0 / hausdorff_measure(mf.manifold);
    const Integrals in = integrate(mf, basis, degree, options.shape_weight);
    nodes += in.nodes;
    for (std::size_t i = 0; i < kappa; ++i) {
      shape[i] += inv * in.shape[i];
      function[i] += inv * in.function[i];
    }
  }
  if (!any) fail(ErrorKind::Usage, "all-empty", "joint manifold function has no parts");
  EncodedVector ev{basis, -1, Normalization::MeasureNormalized, {}, {}};
  ev.provenance = {IntegrationMethod::Quadrature, degree, nodes, 0, false};
  ev.blocks.push_back({kShapeBlock, std::move(shape)});
  ev.blocks.push_back({kFunctionBlock, std::move(function)});
  return ev;
}

std::vector<double> normalized_shape(const SimplicialManifold& manifold, const BasisSpec& basis, int degree) {
  const ManifoldFunction mf = ManifoldFunction::constant(manifold, 0.0);
  check_compatible(mf, basis);
  Integrals in = integrate(mf, basis, degree > 0 ? degree : default_encode_degree(basis), nullptr);
  const double inv = 1.0 / hausdorff_measure(manifold);
  for (double& v : in.shape) v *= inv;
  return std::move(in.shape);
}

EncodedVector encode_measured(const ManifoldFunction& mf, const WeightedSamples& mu, const BasisSpec& basis,
                              const EncodeOptions& options) {
  check_compatible(mf, basis);
  const std::size_t n = mu.points.size();
  if (mu.masses.size() != n || mu.values.size() != n)
    fail(ErrorKind::Usage, "dimension-mismatch", "sample points, masses and values must have equal length");
  if (n == 0) fail(ErrorKind::Usage, "weight-normalization", "measure has no samples");
  std::vector<double> masses(mu.masses);
  for (double w : masses)
    if (!(w >= 0.0)) fail(ErrorKind::Usage, "weight-normalization", "masses must be non-negative");
  const double total = pairwise_sum(masses);
  if (std::abs(total - 1.0) > 1e-9)
    fail(ErrorKind::Usage, "weight-normalization", "masses sum to " + std::to_string(total) + ", expected 1");

  const std::size_t kappa = basis.size();
  const int degree = resolve_degree(basis, options);
  std::vector<double> shape = normalized_shape(mf.manifold, basis, degree);
  std::vector<double> measure(kappa, 0.0), function(kappa, 0.0), phi(kappa);
  for (std::size_t s = 0; s < n; ++s) {
    eval_all(basis, coords(mu.points[s], basis.dim()), phi);
    const double wm = mu.masses[s];
    const double wf = mu.masses[s] * mu.values[s];
    for (std::size_t i = 0; i < kappa; ++i) {
      measure[i] += wm * phi[i];
      function[i] += wf * phi[i];
    }
  }
  EncodedVector ev{basis, mf.manifold.intrinsic_dim(), Normalization::MeasureNormalized, {}, {}};
  ev.provenance = {IntegrationMethod::Quadrature, degree, n, 0, false};
  ev.blocks.push_back({kShapeBlock, std::move(shape)});
  ev.blocks.push_back({kMeasureBlock, std::move(measure)});
  ev.blocks.push_back({kFunctionBlock, std::move(function)});
  return ev;
}

EncodedVector encode_measured(const ManifoldFunction& mf, std::span<const double> vertex_masses, const BasisSpec& basis,
                              const EncodeOptions& options) {
  if (vertex_masses.size() != mf.values.size())
    fail(ErrorKind::Usage, "dimension-mismatch", "one mass per vertex required");
  WeightedSamples mu{mf.manifold.vertices(), {vertex_masses.begin(), vertex_masses.end()}, mf.values};
  return encode_measured(mf, mu, basis, options);
}

EncodedVector encode_pointcloud(std::span<const Point> points, std::span<const double> values, const BasisSpec& basis,
                                std::uint64_t seed_tag, std::optional<std::vector<double>> shape) {
  if (points.empty()) fail(ErrorKind::Usage, "empty-cloud", "point cloud has no points");
  if (values.size() != points.size())
    fail(ErrorKind::Usage, "dimension-mismatch", "one value per point required");
  const std::size_t kappa = basis.size();
  if (shape && shape->size() != kappa) fail(ErrorKind::Usage, "dimension-mismatch", "shape block length != kappa");
  std::vector<double> measure(kappa, 0.0), function(kappa, 0.0), phi(kappa);
  for (std::size_t s = 0; s < points.size(); ++s) {
    eval_all(basis, coords(points[s], basis.dim()), phi);
    for (std::size_t i = 0; i < kappa; ++i) {
      measure[i] += phi[i];
      function[i] += values[s] * phi[i];
    }
  }
  const double inv = 1.0 / static_cast<double>(points.size());
  for (std::size_t i = 0; i < kappa; ++i) {
    measure[i] *= inv;
    function[i] *= inv;
  }
  EncodedVector ev{basis, 0, Normalization::MeasureNormalized, {}, {}};
  ev.provenance = {IntegrationMethod::MonteCarlo, 0, points.size(), seed_tag, !shape.has_value()};
  if (shape) ev.blocks.push_back({kShapeBlock, std::move(*shape)});
  ev.blocks.push_back({kMeasureBlock, std::move(measure)});
  ev.blocks.push_back({kFunctionBlock, std::move(function)});
  return ev;
}

void require_uniform_normalization(std::span<const EncodedVector> vectors) {
  if (vectors.empty()) return;
  for (const EncodedVector& v : vectors) {
    if (!(v.basis == vectors.front().basis))
      fail(ErrorKind::Data, "mixed-basis", "encoded vectors were produced under different bases");
    if (v.normalization != vectors.front().normalization)
      fail(ErrorKind::Data, "mixed-normalization", "encoded vectors mix raw and measure-normalized encodings");
  }
}

}  // namespace mfe
