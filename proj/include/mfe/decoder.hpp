#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mfe/basis.hpp"
#include "mfe/encoder.hpp"
#include "mfe/scalar_field.hpp"

namespace mfe {

/// The decoded dual object of an encoded vector, exposed through its action
/// on test functions: <P_n(M,f), phi> = sum_m Phi_m c_m where c are the
/// H^s-projection coefficients of phi. Passing a Gram matrix of order 0 gives
/// the L^2-projection decoder.
///
/// Holds references; the encoded vector and Gram matrix must outlive it.
class DualRepresentation {
 public:
  DualRepresentation(const EncodedVector& encoded, const GramMatrix& gram);

  const EncodedVector& encoded() const { return *encoded_; }
  const GramMatrix& gram() const { return *gram_; }

  /// H^s-projection coefficients of a test function (the dual-basis action).
  Eigen::VectorXd test_coefficients(const ScalarField& phi, int nodes_per_axis = 0) const;

 private:
  const EncodedVector* encoded_;
  const GramMatrix* gram_;
};

/// <P_n(block), phi>.
double pair(const DualRepresentation& dual, const std::string& block, const ScalarField& phi, int nodes_per_axis = 0);
/// Same pairing with precomputed projection coefficients.
double pair_coefficients(const DualRepresentation& dual, const std::string& block, const Eigen::VectorXd& coeffs);

/// |pair(dual, block, phi) - reference| where reference is an independent
/// value of <(M,f), phi>.
double reconstruction_error(const DualRepresentation& dual, const std::string& block, const ScalarField& phi,
                            double reference);

/// Sampled field on a uniform grid. For d=2, row r holds y = 1 - r/(res-1)
/// (top row is y=1) and column c holds x = c/(res-1). d=1 grids have one row.
struct Grid {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;  ///< row-major

  double at(int r, int c) const { return values[static_cast<std::size_t>(r) * cols + c]; }
};

enum class ReconstructionMode {
  Raw,               ///< sum_m Phi_m phi_m: the L^2 Riesz representative for orthonormal bases
  GramPremultiplied  ///< sum_m (G^{-1} Phi)_m phi_m for an H^s Gram matrix G
};

/// Reconstruction field of one block on a uniform grid over [0,1]^d (d <= 2).
Grid reconstruct_field(const EncodedVector& encoded, const std::string& block, int resolution,
                       ReconstructionMode mode = ReconstructionMode::Raw, const GramMatrix* gram = nullptr);

/// Planar slice {x_axis = value} of a d=3 reconstruction; the two remaining
/// axes in increasing order become (column, row).
Grid reconstruct_slice(const EncodedVector& encoded, const std::string& block, int resolution, int axis, double value,
                       ReconstructionMode mode = ReconstructionMode::Raw, const GramMatrix* gram = nullptr);

/// Entrywise log(max(1, v)).
Grid visual_transform(const Grid& grid);

/// Scales the grid so its largest absolute value is 1 (zero grids unchanged).
Grid normalize_max(const Grid& grid);

}  // namespace mfe
