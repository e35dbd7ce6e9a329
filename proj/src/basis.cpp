#include "mfe/basis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "mfe/error.hpp"
#include "mfe/gauss.hpp"

namespace mfe {

namespace {

constexpr double kDomainSlack = 1e-12;

void check_point(const BasisSpec& spec, std::span<const double> x) {
  if (static_cast<int>(x.size()) != spec.dim())
    fail(ErrorKind::Usage, "dimension-mismatch", "point has " + std::to_string(x.size()) + " coordinates, basis expects " +
                                                     std::to_string(spec.dim()));
  for (double v : x)
    if (!(v >= -kDomainSlack && v <= 1.0 + kDomainSlack))
      fail(ErrorKind::Usage, "point-out-of-domain", "coordinate " + std::to_string(v) + " outside [0,1]");
}

void check_index(const BasisSpec& spec, std::size_t m) {
  if (m >= spec.size())
    fail(ErrorKind::Usage, "index-out-of-range",
         "basis index " + std::to_string(m) + " >= kappa = " + std::to_string(spec.size()));
}

void legendre_table(int count, double x, int max_deriv, std::span<double> out) {
  const double t = 2.0 * x - 1.0;
  // Unnormalized P_i^{(j)}(t) first; out is reused as storage.
  for (int j = 0; j <= max_deriv; ++j) {
    double* row = out.data() + static_cast<std::size_t>(j) * count;
    const double* prev = j > 0 ? out.data() + static_cast<std::size_t>(j - 1) * count : nullptr;
    if (j == 0) {
      row[0] = 1.0;
      if (count > 1) row[1] = t;
      for (int i = 1; i + 1 < count; ++i) row[i + 1] = ((2.0 * i + 1.0) * t * row[i] - i * row[i - 1]) / (i + 1.0);
    } else {
      row[0] = 0.0;
      if (count > 1) row[1] = (j == 1) ? 1.0 : 0.0;
      for (int i = 1; i + 1 < count; ++i) row[i + 1] = row[i - 1] + (2.0 * i + 1.0) * prev[i];
    }
  }
  double chain = 1.0;
  for (int j = 0; j <= max_deriv; ++j) {
    double* row = out.data() + static_cast<std::size_t>(j) * count;
    for (int i = 0; i < count; ++i) row[i] *= std::sqrt(2.0 * i + 1.0) * chain;
    chain *= 2.0;
  }
}

void fourier_table(int count, double x, int max_deriv, std::span<double> out) {
  const double root2 = std::numbers::sqrt2;
  for (int j = 0; j <= max_deriv; ++j) out[static_cast<std::size_t>(j) * count] = (j == 0) ? 1.0 : 0.0;
  for (int i = 1; i < count; ++i) {
    const int k = fourier_wavenumber(i);
    const double omega = 2.0 * std::numbers::pi * k;
    const double c = std::cos(omega * x);
    const double s = std::sin(omega * x);
    const bool is_cos = (i % 2 == 1);
    double scale = root2;
    for (int j = 0; j <= max_deriv; ++j) {
      // d^j cos = omega^j cos(. + j pi/2); d^j sin = omega^j sin(. + j pi/2)
      double v = 0.0;
      switch (j % 4) {
        case 0: v = is_cos ? c : s; break;
        case 1: v = is_cos ? -s : c; break;
        case 2: v = is_cos ? -c : -s; break;
        default: v = is_cos ? s : -c; break;
      }
      out[static_cast<std::size_t>(j) * count + i] = scale * v;
      scale *= omega;
    }
  }
}

}  // namespace

std::string to_string(Family family) { return family == Family::LegendreTensor ? "legendre" : "fourier"; }

Family family_from_string(std::string_view name) {
  if (name == "legendre") return Family::LegendreTensor;
  if (name == "fourier") return Family::FourierTensor;
  fail(ErrorKind::Usage, "unknown-family", "'" + std::string(name) + "' (expected legendre or fourier)");
}

BasisSpec::BasisSpec(Family family, int n, int d)
    : family_(family), n_(n), d_(d), per_axis_(family == Family::LegendreTensor ? n : 2 * n - 1), size_(1) {
  for (int j = 0; j < d; ++j) size_ *= static_cast<std::size_t>(per_axis_);
}

BasisSpec BasisSpec::make(Family family, int n, int d) {
  if (n < 1) fail(ErrorKind::Usage, "invalid-order", "basis order must be >= 1, got " + std::to_string(n));
  if (d < 1 || d > kMaxDim)
    fail(ErrorKind::Usage, "unsupported-dimension", "dimension must be in [1,3], got " + std::to_string(d));
  return BasisSpec(family, n, d);
}

MultiIndex BasisSpec::multi_index(std::size_t m) const {
  check_index(*this, m);
  MultiIndex idx{};
  for (int j = d_ - 1; j >= 0; --j) {
    idx[j] = static_cast<int>(m % per_axis_);
    m /= per_axis_;
  }
  return idx;
}

std::size_t BasisSpec::flat_index(const MultiIndex& idx) const {
  std::size_t m = 0;
  for (int j = 0; j < d_; ++j) {
    if (idx[j] < 0 || idx[j] >= per_axis_)
      fail(ErrorKind::Usage, "index-out-of-range", "per-axis index " + std::to_string(idx[j]) + " out of range");
    m = m * per_axis_ + static_cast<std::size_t>(idx[j]);
  }
  return m;
}

void eval_1d_table(Family family, int count, double x, int max_deriv, std::span<double> out) {
  if (max_deriv < 0 || max_deriv > kMaxSobolevOrder)
    fail(ErrorKind::Usage, "unsupported-order", "derivative order " + std::to_string(max_deriv) + " not supported");
  if (family == Family::LegendreTensor)
    legendre_table(count, x, max_deriv, out);
  else
    fourier_table(count, x, max_deriv, out);
}

double eval_basis(const BasisSpec& spec, std::size_t m, std::span<const double> x) {
  return eval_basis_deriv(spec, m, x, MultiIndex{});
}

double eval_basis_deriv(const BasisSpec& spec, std::size_t m, std::span<const double> x, const MultiIndex& alpha) {
  check_index(spec, m);
  check_point(spec, x);
  const MultiIndex idx = spec.multi_index(m);
  const int pa = spec.per_axis();
  std::vector<double> table;
  double v = 1.0;
  for (int j = 0; j < spec.dim(); ++j) {
    if (alpha[j] < 0 || alpha[j] > kMaxSobolevOrder)
      fail(ErrorKind::Usage, "unsupported-order", "derivative order " + std::to_string(alpha[j]) + " not supported");
    table.assign(static_cast<std::size_t>(alpha[j] + 1) * pa, 0.0);
    eval_1d_table(spec.family(), pa, x[j], alpha[j], table);
    v *= table[static_cast<std::size_t>(alpha[j]) * pa + idx[j]];
  }
  return v;
}

void eval_all(const BasisSpec& spec, std::span<const double> x, std::span<double> out) {
  check_point(spec, x);
  const int pa = spec.per_axis();
  std::array<double, 1024> stack{};
  std::vector<double> heap;
  std::span<double> axis_vals;
  if (pa <= static_cast<int>(stack.size())) {
    axis_vals = std::span<double>(stack.data(), pa);
  } else {
    heap.resize(pa);
    axis_vals = heap;
  }
  eval_1d_table(spec.family(), pa, x[0], 0, axis_vals);
  std::copy(axis_vals.begin(), axis_vals.end(), out.begin());
  std::size_t len = pa;
  for (int j = 1; j < spec.dim(); ++j) {
    eval_1d_table(spec.family(), pa, x[j], 0, axis_vals);
    // Expand in place from the back so earlier entries stay readable.
    for (std::size_t a = len; a-- > 0;) {
      const double head = out[a];
      for (int b = pa - 1; b >= 0; --b) out[a * pa + b] = head * axis_vals[b];
    }
    len *= pa;
  }
}

std::vector<MultiIndex> derivative_orders(int d, int s) {
  std::vector<MultiIndex> result;
  for (int total = 0; total <= s; ++total) {
    MultiIndex a{};
    // Enumerate all alpha with sum == total, lexicographically descending in the first axis.
    std::function<void(int, int)> rec = [&](int axis, int remaining) {
      if (axis == d - 1) {
        a[axis] = remaining;
        result.push_back(a);
        return;
      }
      for (int v = remaining; v >= 0; --v) {
        a[axis] = v;
        rec(axis + 1, remaining - v);
      }
    };
    rec(0, total);
  }
  return result;
}

GramMatrix::GramMatrix(BasisSpec spec, int s, Eigen::MatrixXd entries)
    : spec_(spec), s_(s), entries_(std::move(entries)), factor_(entries_) {
  if (factor_.info() != Eigen::Success)
    fail(ErrorKind::Numerical, "non-spd", "H^" + std::to_string(s) + " Gram matrix is not positive definite");
}

Eigen::VectorXd GramMatrix::solve(const Eigen::VectorXd& rhs) const {
  if (rhs.size() != entries_.rows())
    fail(ErrorKind::Usage, "dimension-mismatch", "right-hand side length does not match Gram size");
  Eigen::VectorXd c = factor_.solve(rhs);
  if (!c.allFinite()) fail(ErrorKind::Numerical, "solver-failure", "Gram solve produced non-finite coefficients");
  return c;
}

GramMatrix gram_hs(const BasisSpec& spec, int s) {
  if (s < 0 || s > kMaxSobolevOrder)
    fail(ErrorKind::Usage, "unsupported-order", "Sobolev order " + std::to_string(s) + " outside [0,4]");
  const int pa = spec.per_axis();
  // One-dimensional H^0 inner products of a-th derivatives: axis[a](i,l).
  std::vector<Eigen::MatrixXd> axis(s + 1, Eigen::MatrixXd::Zero(pa, pa));
  if (spec.family() == Family::LegendreTensor) {
    const int q = (2 * spec.order() + 2 * s + 1) / 2 + 2;
    const GaussRule1d rule = gauss_legendre(q);
    std::vector<double> table(static_cast<std::size_t>(s + 1) * pa);
    for (int node = 0; node < q; ++node) {
      eval_1d_table(spec.family(), pa, rule.nodes[node], s, table);
      for (int a = 0; a <= s; ++a) {
        const double* row = table.data() + static_cast<std::size_t>(a) * pa;
        for (int i = 0; i < pa; ++i)
          for (int l = 0; l < pa; ++l) axis[a](i, l) += rule.weights[node] * row[i] * row[l];
      }
    }
  } else {
    for (int a = 0; a <= s; ++a)
      for (int i = 0; i < pa; ++i) axis[a](i, i) = std::pow(2.0 * std::numbers::pi * fourier_wavenumber(i), 2.0 * a);
  }

  const std::size_t kappa = spec.size();
  const std::vector<MultiIndex> orders = derivative_orders(spec.dim(), s);
  std::vector<MultiIndex> idx(kappa);
  for (std::size_t m = 0; m < kappa; ++m) idx[m] = spec.multi_index(m);

  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(kappa, kappa);
  const bool diagonal = spec.family() == Family::FourierTensor;
  for (std::size_t m = 0; m < kappa; ++m) {
    for (std::size_t l = diagonal ? m : 0; l < (diagonal ? m + 1 : kappa); ++l) {
      double acc = 0.0;
      for (const MultiIndex& alpha : orders) {
        double prod = 1.0;
        for (int j = 0; j < spec.dim() && prod != 0.0; ++j) prod *= axis[alpha[j]](idx[m][j], idx[l][j]);
        acc += prod;
      }
      g(m, l) = acc;
    }
  }
  return GramMatrix(spec, s, std::move(g));
}

int default_projection_nodes(const BasisSpec& spec, int s) {
  return spec.family() == Family::LegendreTensor ? spec.order() + s + 12 : 2 * spec.order() + s + 16;
}

Eigen::VectorXd project_hs(const BasisSpec& spec, const GramMatrix& gram, const ScalarField& field,
                           int nodes_per_axis) {
  if (!(gram.spec() == spec)) fail(ErrorKind::Usage, "dimension-mismatch", "Gram matrix built for a different basis");
  const int s = gram.sobolev_order();
  const int d = spec.dim();
  const int pa = spec.per_axis();
  const int q = nodes_per_axis > 0 ? nodes_per_axis : default_projection_nodes(spec, s);
  const GaussRule1d rule = gauss_legendre(q);

  // tables[a] is a (pa x q) matrix of a-th derivatives at the nodes.
  std::vector<Eigen::MatrixXd> tables(s + 1, Eigen::MatrixXd(pa, q));
  std::vector<double> scratch(static_cast<std::size_t>(s + 1) * pa);
  for (int node = 0; node < q; ++node) {
    eval_1d_table(spec.family(), pa, rule.nodes[node], s, scratch);
    for (int a = 0; a <= s; ++a)
      for (int i = 0; i < pa; ++i) tables[a](i, node) = scratch[static_cast<std::size_t>(a) * pa + i];
  }

  std::size_t grid = 1;
  for (int j = 0; j < d; ++j) grid *= q;

  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(spec.size()));
  std::vector<double> values(grid);
  std::array<double, kMaxDim> x{};
  for (const MultiIndex& alpha : derivative_orders(d, s)) {
    for (std::size_t g = 0; g < grid; ++g) {
      std::size_t rest = g;
      double w = 1.0;
      for (int j = d - 1; j >= 0; --j) {
        const std::size_t node = rest % q;
        rest /= q;
        x[j] = rule.nodes[node];
        w *= rule.weights[node];
      }
      values[g] = w * field.deriv(std::span<const double>(x.data(), d), alpha);
    }
    // Sum factorization: contract the trailing node axis, then rotate it to the front.
    Eigen::MatrixXd work = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        values.data(), static_cast<Eigen::Index>(grid / q), q);
    for (int j = d - 1; j >= 0; --j) {
      Eigen::MatrixXd contracted = work * tables[alpha[j]].transpose();  // (rest x pa)
      Eigen::MatrixXd rotated = contracted.transpose();                  // (pa x rest), column-major
      if (j > 0) {
        // Reinterpret (pa, rest...) row-major as rows of length q.
        Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = rotated;
        work = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
            rm.data(), rm.size() / q, q);
      } else {
        Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = rotated;
        rhs += Eigen::Map<Eigen::VectorXd>(rm.data(), rm.size());
      }
    }
  }
  return gram.solve(rhs);
}

double eval_expansion(const BasisSpec& spec, std::span<const double> coeffs, std::span<const double> x) {
  if (coeffs.size() != spec.size()) fail(ErrorKind::Usage, "dimension-mismatch", "coefficient length != kappa");
  std::vector<double> phi(spec.size());
  eval_all(spec, x, phi);
  double acc = 0.0;
  for (std::size_t m = 0; m < phi.size(); ++m) acc += coeffs[m] * phi[m];
  return acc;
}

}  // namespace mfe
