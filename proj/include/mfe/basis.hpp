#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "mfe/scalar_field.hpp"
#include "mfe/types.hpp"

namespace mfe {

enum class Family { LegendreTensor, FourierTensor };

std::string to_string(Family family);
Family family_from_string(std::string_view name);

/// One member of an approximating sequence of tensor-product bases on [0,1]^d.
///
/// Legendre: per-axis functions l_i(x) = sqrt(2i+1) P_i(2x-1), 0 <= i < n,
/// orthonormal in L^2([0,1]). Fourier: per-axis index 0 is the constant,
/// 2k-1 is sqrt(2) cos(2 pi k x) and 2k is sqrt(2) sin(2 pi k x) for
/// 1 <= k <= n-1, orthonormal in L^2 of the unit torus.
///
/// Flat indices enumerate multi-indices lexicographically, first axis most
/// significant.
class BasisSpec {
 public:
  static BasisSpec make(Family family, int n, int d);

  Family family() const { return family_; }
  int order() const { return n_; }
  int dim() const { return d_; }
  /// Number of 1-d functions per axis: n (Legendre) or 2n-1 (Fourier).
  int per_axis() const { return per_axis_; }
  /// kappa(n): total number of basis functions.
  std::size_t size() const { return size_; }

  MultiIndex multi_index(std::size_t m) const;
  std::size_t flat_index(const MultiIndex& idx) const;

  bool operator==(const BasisSpec&) const = default;

 private:
  BasisSpec(Family family, int n, int d);

  Family family_;
  int n_;
  int d_;
  int per_axis_;
  std::size_t size_;
};

/// Fourier wavenumber k of the 1-d function with per-axis index i.
inline int fourier_wavenumber(int i) { return (i + 1) / 2; }

/// Values of 1-d functions 0..count-1 and their derivatives up to
/// `max_deriv` at x: out[j * count + i] = d^j/dx^j of function i.
void eval_1d_table(Family family, int count, double x, int max_deriv, std::span<double> out);

double eval_basis(const BasisSpec& spec, std::size_t m, std::span<const double> x);
double eval_basis_deriv(const BasisSpec& spec, std::size_t m, std::span<const double> x, const MultiIndex& alpha);

/// All kappa basis values at x, in flat-index order.
void eval_all(const BasisSpec& spec, std::span<const double> x, std::span<double> out);

/// Every derivative multi-order alpha with |alpha| <= s, graded then lexicographic.
std::vector<MultiIndex> derivative_orders(int d, int s);

/// Smallest integer Sobolev order above d/2.
inline int default_sobolev_order(int d) { return d / 2 + 1; }

/// H^s Gram matrix of a basis with its Cholesky factorization.
class GramMatrix {
 public:
  GramMatrix(BasisSpec spec, int s, Eigen::MatrixXd entries);

  const BasisSpec& spec() const { return spec_; }
  int sobolev_order() const { return s_; }
  const Eigen::MatrixXd& matrix() const { return entries_; }

  /// Solves G c = b.
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

 private:
  BasisSpec spec_;
  int s_;
  Eigen::MatrixXd entries_;
  Eigen::LLT<Eigen::MatrixXd> factor_;
};

GramMatrix gram_hs(const BasisSpec& spec, int s);

/// Tensor Gauss node count per axis used by project_hs when none is given.
int default_projection_nodes(const BasisSpec& spec, int s);

/// Coefficients of the H^s-orthogonal projection of `field` onto span(spec).
/// The right-hand side <field, phi_m>_{H^s} is integrated with a tensor Gauss
/// rule of `nodes_per_axis` points (0 selects the default).
Eigen::VectorXd project_hs(const BasisSpec& spec, const GramMatrix& gram, const ScalarField& field,
                           int nodes_per_axis = 0);

/// Evaluates sum_m coeffs[m] phi_m(x).
double eval_expansion(const BasisSpec& spec, std::span<const double> coeffs, std::span<const double> x);

}  // namespace mfe
