#include "mfe/decoder.hpp"

#include <algorithm>
#include <cmath>

#include "mfe/error.hpp"

namespace mfe {

DualRepresentation::DualRepresentation(const EncodedVector& encoded, const GramMatrix& gram)
    : encoded_(&encoded), gram_(&gram) {
  if (!(encoded.basis == gram.spec()))
    fail(ErrorKind::Usage, "dimension-mismatch", "encoded vector and Gram matrix use different bases");
}

Eigen::VectorXd DualRepresentation::test_coefficients(const ScalarField& phi, int nodes_per_axis) const {
  return project_hs(gram_->spec(), *gram_, phi, nodes_per_axis);
}

double pair_coefficients(const DualRepresentation& dual, const std::string& block, const Eigen::VectorXd& coeffs) {
  const std::vector<double>& values = dual.encoded().block(block);
  if (static_cast<Eigen::Index>(values.size()) != coeffs.size())
    fail(ErrorKind::Usage, "dimension-mismatch", "coefficient length != block length");
  double acc = 0.0;
  for (std::size_t m = 0; m < values.size(); ++m) acc += values[m] * coeffs[static_cast<Eigen::Index>(m)];
  return acc;
}

double pair(const DualRepresentation& dual, const std::string& block, const ScalarField& phi, int nodes_per_axis) {
  // Check the block before paying for the projection.
  (void)dual.encoded().block(block);
  return pair_coefficients(dual, block, dual.test_coefficients(phi, nodes_per_axis));
}

double reconstruction_error(const DualRepresentation& dual, const std::string& block, const ScalarField& phi,
                            double reference) {
  return std::abs(pair(dual, block, phi) - reference);
}

namespace {

std::vector<double> field_coefficients(const EncodedVector& encoded, const std::string& block,
                                       ReconstructionMode mode, const GramMatrix* gram) {
  const std::vector<double>& raw = encoded.block(block);
  if (mode == ReconstructionMode::Raw) return raw;
  if (!gram) fail(ErrorKind::Usage, "missing-gram", "Gram-premultiplied reconstruction needs a Gram matrix");
  if (!(gram->spec() == encoded.basis))
    fail(ErrorKind::Usage, "dimension-mismatch", "Gram matrix built for a different basis");
  const Eigen::VectorXd c = gram->solve(Eigen::Map<const Eigen::VectorXd>(raw.data(), static_cast<Eigen::Index>(raw.size())));
  return {c.data(), c.data() + c.size()};
}

/// (resolution x per_axis) matrix of 1-d basis values at the grid coordinates.
Eigen::MatrixXd axis_matrix(const BasisSpec& basis, int resolution, bool descending) {
  const int pa = basis.per_axis();
  Eigen::MatrixXd e(resolution, pa);
  std::vector<double> row(pa);
  for (int r = 0; r < resolution; ++r) {
    const double t = static_cast<double>(r) / (resolution - 1);
    eval_1d_table(basis.family(), pa, descending ? 1.0 - t : t, 0, row);
    for (int i = 0; i < pa; ++i) e(r, i) = row[i];
  }
  return e;
}

Grid planar(const BasisSpec& basis, const Eigen::MatrixXd& coeff, int resolution) {
  // coeff(i, j): i indexes the column axis (x), j the row axis (y).
  const Eigen::MatrixXd ex = axis_matrix(basis, resolution, false);
  const Eigen::MatrixXd ey = axis_matrix(basis, resolution, true);
  const Eigen::MatrixXd vals = ey * coeff.transpose() * ex.transpose();  // (rows=y, cols=x)
  Grid g{resolution, resolution, std::vector<double>(static_cast<std::size_t>(resolution) * resolution)};
  for (int r = 0; r < resolution; ++r)
    for (int c = 0; c < resolution; ++c) g.values[static_cast<std::size_t>(r) * resolution + c] = vals(r, c);
  return g;
}

void check_resolution(int resolution) {
  if (resolution < 2) fail(ErrorKind::Usage, "invalid-grid", "grid resolution must be >= 2 per axis");
}

}  // namespace

Grid reconstruct_field(const EncodedVector& encoded, const std::string& block, int resolution, ReconstructionMode mode,
                       const GramMatrix* gram) {
  check_resolution(resolution);
  const BasisSpec& basis = encoded.basis;
  if (basis.dim() > 2)
    fail(ErrorKind::Usage, "grid-dimension", "full grids are limited to d <= 2; use reconstruct_slice for d = 3");
  const std::vector<double> c = field_coefficients(encoded, block, mode, gram);
  const int pa = basis.per_axis();
  if (basis.dim() == 1) {
    const Eigen::MatrixXd ex = axis_matrix(basis, resolution, false);
    const Eigen::VectorXd v = ex * Eigen::Map<const Eigen::VectorXd>(c.data(), pa);
    return Grid{1, resolution, {v.data(), v.data() + v.size()}};
  }
  // Flat index m = i * pa + j with i on the first axis (x).
  const Eigen::MatrixXd coeff = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      c.data(), pa, pa);
  return planar(basis, coeff, resolution);
}

Grid reconstruct_slice(const EncodedVector& encoded, const std::string& block, int resolution, int axis, double value,
                       ReconstructionMode mode, const GramMatrix* gram) {
  check_resolution(resolution);
  const BasisSpec& basis = encoded.basis;
  if (basis.dim() != 3) fail(ErrorKind::Usage, "grid-dimension", "slices are defined for d = 3 only");
  if (axis < 0 || axis > 2) fail(ErrorKind::Usage, "invalid-grid", "slice axis must be 0, 1 or 2");
  if (!(value >= 0.0 && value <= 1.0)) fail(ErrorKind::Usage, "point-out-of-domain", "slice position outside [0,1]");
  const std::vector<double> c = field_coefficients(encoded, block, mode, gram);
  const int pa = basis.per_axis();
  std::vector<double> fixed(pa);
  eval_1d_table(basis.family(), pa, value, 0, fixed);
  Eigen::MatrixXd coeff = Eigen::MatrixXd::Zero(pa, pa);
  for (int i0 = 0; i0 < pa; ++i0)
    for (int i1 = 0; i1 < pa; ++i1)
      for (int i2 = 0; i2 < pa; ++i2) {
        const double v = c[(static_cast<std::size_t>(i0) * pa + i1) * pa + i2];
        const std::array<int, 3> idx{i0, i1, i2};
        std::array<int, 2> rest{};
        int r = 0;
        for (int j = 0; j < 3; ++j)
          if (j != axis) rest[r++] = idx[j];
        coeff(rest[0], rest[1]) += v * fixed[idx[axis]];
      }
  return planar(basis, coeff, resolution);
}

Grid visual_transform(const Grid& grid) {
  Grid out = grid;
  for (double& v : out.values) v = std::log(std::max(1.0, v));
  return out;
}

Grid normalize_max(const Grid& grid) {
  Grid out = grid;
  double peak = 0.0;
  for (double v : out.values) peak = std::max(peak, std::abs(v));
  if (peak > 0.0)
    for (double& v : out.values) v /= peak;
  return out;
}

}  // namespace mfe
