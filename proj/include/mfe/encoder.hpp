#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mfe/basis.hpp"
#include "mfe/geometry.hpp"

namespace mfe {

inline constexpr const char* kShapeBlock = "shape";
inline constexpr const char* kFunctionBlock = "function";
inline constexpr const char* kMeasureBlock = "measure";

/// Whether the 1/H^k(M) factor was applied to the integrals.
enum class Normalization { Raw, MeasureNormalized };

enum class IntegrationMethod { Quadrature, MonteCarlo };

struct Provenance {
  IntegrationMethod method = IntegrationMethod::Quadrature;
  int degree = 0;              ///< quadrature degree (0 for Monte Carlo)
  std::uint64_t samples = 0;   ///< quadrature nodes or Monte Carlo points
  std::uint64_t seed = 0;      ///< seed tag of Monte Carlo samples
  bool shape_omitted = false;  ///< point cloud encoded without a shape block

  bool operator==(const Provenance&) const = default;
};

struct Block {
  std::string name;
  std::vector<double> values;

  bool operator==(const Block&) const = default;
};

std::string to_string(Normalization n);
Normalization normalization_from_string(const std::string& s);
std::string to_string(IntegrationMethod m);
IntegrationMethod method_from_string(const std::string& s);

/// Output of the encoder: named length-kappa coefficient blocks produced
/// under one basis.
struct EncodedVector {
  BasisSpec basis;
  int intrinsic_dim = 0;  ///< k of the encoded manifold; -1 for joint inputs
  Normalization normalization = Normalization::Raw;
  Provenance provenance;
  std::vector<Block> blocks;

  bool has_block(const std::string& name) const;
  /// Throws block-not-present when absent.
  const std::vector<double>& block(const std::string& name) const;
  std::vector<double>& block(const std::string& name);
  /// Concatenation of all blocks in stored order.
  std::vector<double> flattened() const;

  bool operator==(const EncodedVector&) const = default;
};

struct EncodeOptions {
  /// Total polynomial degree of the per-cell quadrature; 0 selects default_encode_degree.
  int degree = 0;
  /// Replaces the constant 1 in the shape integrand. Must not change sign on [0,1]^d.
  const ScalarField* shape_weight = nullptr;
};

/// Legendre: d(n-1)+2, exact for phi_m times a linear function on every flat
/// simplex. Fourier: d(2n+2), which resolves the highest wavenumber on cells
/// of unit size.
int default_encode_degree(const BasisSpec& basis);

/// shape_m = int_M phi_m dH^k and function_m = int_M f phi_m dH^k.
EncodedVector encode(const ManifoldFunction& mf, const BasisSpec& basis, const EncodeOptions& options = {});

/// Up to d+1 manifold functions of distinct intrinsic dimension; slot k holds
/// the k-dimensional part.
struct JointManifoldFunction {
  std::array<std::optional<ManifoldFunction>, kMaxDim + 1> parts;

  void add(ManifoldFunction mf);
  int ambient_dim() const;
};

/// Sum over present parts of (1/H^k(M_k)) int_{M_k} (1 | f) phi_m dH^k.
EncodedVector encode_joint(const JointManifoldFunction& jmf, const BasisSpec& basis, const EncodeOptions& options = {});

/// A discrete probability measure on the manifold: sample points with masses
/// and function values.
struct WeightedSamples {
  std::vector<Point> points;
  std::vector<double> masses;
  std::vector<double> values;
};

/// Blocks shape = (1/H^k) int phi dH^k, measure = int phi dmu, function = int f phi dmu.
EncodedVector encode_measured(const ManifoldFunction& mf, const WeightedSamples& mu, const BasisSpec& basis,
                              const EncodeOptions& options = {});
/// Measure concentrated on the vertices with the given masses; f from the vertex values.
EncodedVector encode_measured(const ManifoldFunction& mf, std::span<const double> vertex_masses,
                              const BasisSpec& basis, const EncodeOptions& options = {});

/// Monte Carlo form: measure_m = (1/N) sum phi_m(x_i), function_m = (1/N) sum f_i phi_m(x_i).
/// The shape block is included only when supplied (e.g. from a mesh via
/// normalized_shape); otherwise provenance.shape_omitted is set.
EncodedVector encode_pointcloud(std::span<const Point> points, std::span<const double> values, const BasisSpec& basis,
                                std::uint64_t seed_tag, std::optional<std::vector<double>> shape = std::nullopt);

/// (1/H^k(M)) int_M phi_m dH^k.
std::vector<double> normalized_shape(const SimplicialManifold& manifold, const BasisSpec& basis, int degree = 0);

/// Throws mixed-normalization unless all vectors share basis and normalization mode.
void require_uniform_normalization(std::span<const EncodedVector> vectors);

}  // namespace mfe
