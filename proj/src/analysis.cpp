#include "mfe/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "mfe/decoder.hpp"
#include "mfe/error.hpp"
#include "mfe/meshes.hpp"

namespace mfe {

double estimate_rate(std::span<const double> errors, std::span<const double> ns, double floor) {
  if (errors.size() != ns.size()) fail(ErrorKind::Usage, "dimension-mismatch", "errors and ns differ in length");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (errors[i] > floor && std::isfinite(errors[i])) {
      lx.push_back(std::log(ns[i]));
      ly.push_back(std::log(errors[i]));
    }
  }
  if (lx.size() < 3)
    fail(ErrorKind::Numerical, "insufficient-points",
         "need at least 3 errors above the floor, got " + std::to_string(lx.size()));
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i], my += ly[i];
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (!(sxx > 0.0)) fail(ErrorKind::Numerical, "insufficient-points", "abscissae are not distinct");
  return sxy / sxx;
}

DirectPairing direct_pairing(const ManifoldFunction& mf, const ScalarField& phi, int degree) {
  const QuadratureRule rule = quadrature_nodes(mf.manifold, degree);
  const int d = mf.manifold.ambient_dim();
  const int arity = mf.manifold.cell_arity();
  std::vector<double> shape(rule.nodes.size()), function(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const QuadratureNode& node = rule.nodes[i];
    const double v = node.weight * phi(std::span<const double>(node.x.data(), d));
    shape[i] = v;
    function[i] = v * interpolate(mf, node, arity);
  }
  return {pairwise_sum(shape), pairwise_sum(function)};
}

DirectPairing oracle_pairing(const ManifoldFunction& mf, const ScalarField& phi, int study_degree) {
  const std::size_t target = 4 * mf.manifold.cells().size();
  ManifoldFunction fine = mf;
  if (mf.manifold.intrinsic_dim() > 0 && mf.manifold.cell_type() == CellType::Simplex) {
    while (fine.manifold.cells().size() < target) fine = meshes::refine_barycentric(fine);
  }
  return direct_pairing(fine, phi, std::min(4 * study_degree, kMaxQuadratureDegree));
}

std::vector<double> RateStudy::errors(const std::string& test_fn, const std::string& block) const {
  std::vector<double> out;
  for (const RateRow& r : rows)
    if (r.test_fn == test_fn && r.block == block) out.push_back(r.error);
  return out;
}

double RateStudy::slope(const std::string& test_fn, const std::string& block) const {
  const std::vector<double> e = errors(test_fn, block);
  if (std::all_of(e.begin(), e.end(), [](double v) { return v <= kErrorFloor; }))
    fail(ErrorKind::Numerical, "all-errors-at-floor",
         "every error for " + test_fn + "/" + block + " is at the floor; the test function lies in the span");
  std::vector<double> nd(ns.begin(), ns.end());
  return estimate_rate(e, nd);
}

bool RateStudy::all_at_floor() const {
  return std::all_of(rows.begin(), rows.end(), [](const RateRow& r) { return r.at_floor; });
}

RateStudy convergence_study(const ManifoldFunction& mf, Family family, int s, std::span<const StudyFunction> tests,
                            std::span<const int> n_list, bool allow_short) {
  if (n_list.size() < (allow_short ? 1u : 3u))
    fail(ErrorKind::Usage, "insufficient-points", "a rate study needs at least 3 orders");
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1]) fail(ErrorKind::Usage, "invalid-order", "n values must be strictly increasing");
  const int d = mf.manifold.ambient_dim();

  // Oracles at the finest study degree.
  const BasisSpec finest = BasisSpec::make(family, n_list.back(), d);
  std::vector<DirectPairing> oracles;
  for (const StudyFunction& t : tests)
    oracles.push_back(t.oracle ? *t.oracle : oracle_pairing(mf, t.field, default_encode_degree(finest)));

  RateStudy study;
  study.family = family;
  study.s = s;
  study.ns.assign(n_list.begin(), n_list.end());
  for (int n : n_list) {
    const BasisSpec basis = BasisSpec::make(family, n, d);
    const EncodedVector ev = encode(mf, basis);
    const GramMatrix gram = gram_hs(basis, s);
    const DualRepresentation dual(ev, gram);
    for (std::size_t t = 0; t < tests.size(); ++t) {
      const Eigen::VectorXd c = dual.test_coefficients(tests[t].field);
      for (const char* block : {kShapeBlock, kFunctionBlock}) {
        const double reference = std::string(block) == kShapeBlock ? oracles[t].shape : oracles[t].function;
        const double err = std::abs(pair_coefficients(dual, block, c) - reference);
        study.rows.push_back({n, 2 * basis.size(), block, tests[t].field.name, err, err <= kErrorFloor});
      }
    }
  }
  return study;
}

std::vector<ConsistencyRow> consistency_check(const Point& x, std::span<const double> radii, const BasisSpec& basis,
                                              const ScalarField& f, int resolution) {
  const int d = basis.dim();
  const std::size_t kappa = basis.size();
  std::vector<double> phi_x(kappa);
  eval_all(basis, coords(x, d), phi_x);
  const double fx = f(coords(x, d));
  std::vector<ConsistencyRow> rows;
  for (double r : radii) {
    if (!(r > 0.0)) fail(ErrorKind::Usage, "invalid-radius", "radii must be positive");
    for (int j = 0; j < d; ++j)
      if (x[j] - r < 0.0 || x[j] + r > 1.0)
        fail(ErrorKind::Usage, "ball-exits-domain", "ball of radius " + std::to_string(r) + " leaves [0,1]^d");
    SimplicialManifold ball = meshes::ball(d, x, r, d == 3 ? std::max(1, std::min(resolution, 3)) : resolution);
    const ManifoldFunction mf = ManifoldFunction::sample(std::move(ball), [&](std::span<const double> p) { return f(p); });
    EncodeOptions opt;
    opt.degree = default_encode_degree(basis) + 2;
    JointManifoldFunction jmf;
    jmf.add(mf);
    const EncodedVector ev = encode_joint(jmf, basis, opt);
    ConsistencyRow row{r, 0.0, 0.0};
    const std::vector<double>& shape = ev.block(kShapeBlock);
    const std::vector<double>& func = ev.block(kFunctionBlock);
    for (std::size_t m = 0; m < kappa; ++m) {
      row.shape_deviation = std::max(row.shape_deviation, std::abs(shape[m] - phi_x[m]));
      row.function_deviation = std::max(row.function_deviation, std::abs(func[m] - fx * phi_x[m]));
    }
    rows.push_back(row);
  }
  return rows;
}

std::uint64_t mc_seed(std::uint64_t base_seed, std::size_t samples, int repetition) {
  // splitmix64 finalizer over the combined key.
  std::uint64_t z = base_seed + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(samples) * 1000003ull +
                                                         static_cast<std::uint64_t>(repetition) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

McStudy mc_vs_quadrature(const ManifoldFunction& mf, const BasisSpec& basis, std::span<const std::size_t> sample_counts,
                         int seeds, std::uint64_t base_seed) {
  if (seeds < 1) fail(ErrorKind::Usage, "invalid-seeds", "at least one seed is required");
  const std::size_t kappa = basis.size();
  const int degree = default_encode_degree(basis);
  const std::vector<double> measure_ref = normalized_shape(mf.manifold, basis, degree);
  const EncodedVector raw = encode(mf, basis);
  const double inv = 1.0 / hausdorff_measure(mf.manifold);
  std::vector<double> function_ref = raw.block(kFunctionBlock);
  for (double& v : function_ref) v *= inv;

  McStudy study;
  for (std::size_t count : sample_counts) {
    if (count < 1) fail(ErrorKind::Usage, "empty-cloud", "sample counts must be positive");
    double sm = 0.0, sf = 0.0, sx = 0.0;
    for (int rep = 0; rep < seeds; ++rep) {
      const std::uint64_t seed = mc_seed(base_seed, count, rep);
      const PointSamples samples = sample_uniform(mf, count, seed);
      const EncodedVector ev = encode_pointcloud(samples.points, samples.values, basis, seed);
      double em = 0.0, ef = 0.0;
      const std::vector<double>& mb = ev.block(kMeasureBlock);
      const std::vector<double>& fb = ev.block(kFunctionBlock);
      for (std::size_t m = 0; m < kappa; ++m) {
        em = std::max(em, std::abs(mb[m] - measure_ref[m]));
        ef = std::max(ef, std::abs(fb[m] - function_ref[m]));
      }
      sm += em * em;
      sf += ef * ef;
      sx += std::max(em, ef) * std::max(em, ef);
    }
    study.rows.push_back({count, std::sqrt(sm / seeds), std::sqrt(sf / seeds), std::sqrt(sx / seeds)});
  }
  if (study.rows.size() >= 3) {
    std::vector<double> e, n;
    for (const McRow& r : study.rows) {
      e.push_back(r.rms_max);
      n.push_back(static_cast<double>(r.samples));
    }
    study.slope = estimate_rate(e, n, 0.0);
  }
  return study;
}

}  // namespace mfe
