#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mfe/basis.hpp"
#include "mfe/encoder.hpp"
#include "mfe/geometry.hpp"
#include "mfe/scalar_field.hpp"

namespace mfe {

/// Errors at or below this level are treated as round-off and excluded from fits.
inline constexpr double kErrorFloor = 1e-13;

/// Least-squares slope of log(error) against log(n), using only entries above
/// `floor`. Throws insufficient-points when fewer than three remain.
double estimate_rate(std::span<const double> errors, std::span<const double> ns, double floor = kErrorFloor);

/// <M, phi> and <f_M, phi> computed directly by quadrature.
struct DirectPairing {
  double shape = 0.0;
  double function = 0.0;
};

DirectPairing direct_pairing(const ManifoldFunction& mf, const ScalarField& phi, int degree);

/// Oracle for a study at quadrature degree `study_degree`: direct quadrature at
/// four times the degree (capped at kMaxQuadratureDegree) on a barycentrically
/// refined copy of the mesh with at least four times as many cells.
DirectPairing oracle_pairing(const ManifoldFunction& mf, const ScalarField& phi, int study_degree);

struct StudyFunction {
  ScalarField field;
  std::optional<DirectPairing> oracle;  ///< computed by oracle_pairing when absent
};

struct RateRow {
  int n = 0;
  std::size_t encoded_dim = 0;  ///< N = 2 kappa(n)
  std::string block;
  std::string test_fn;
  double error = 0.0;
  bool at_floor = false;
};

struct RateStudy {
  Family family = Family::LegendreTensor;
  int s = 0;
  std::vector<int> ns;
  std::vector<RateRow> rows;

  std::vector<double> errors(const std::string& test_fn, const std::string& block) const;
  /// Fitted log-log slope; throws all-errors-at-floor when no error rises above the floor.
  double slope(const std::string& test_fn, const std::string& block) const;
  bool all_at_floor() const;
};

/// err(n) = |<(M,f), phi> - <P_n(M,f), phi>| for each test function, both
/// blocks and every n. `n_list` must be strictly increasing with >= 3 entries
/// unless `allow_short` (the CLI permits two-point floor checks).
RateStudy convergence_study(const ManifoldFunction& mf, Family family, int s, std::span<const StudyFunction> tests,
                            std::span<const int> n_list, bool allow_short = false);

struct ConsistencyRow {
  double radius = 0.0;
  double shape_deviation = 0.0;     ///< max_m |avg_B phi_m - phi_m(x)|
  double function_deviation = 0.0;  ///< max_m |avg_B f phi_m - f(x) phi_m(x)|, reported alongside
  double deviation() const { return shape_deviation; }
};

/// Ball averages against point values around x, one row per radius. The ball
/// mesh has the same structure at every radius (`resolution` as in meshes::ball).
std::vector<ConsistencyRow> consistency_check(const Point& x, std::span<const double> radii, const BasisSpec& basis,
                                              const ScalarField& f, int resolution = 256);

struct McRow {
  std::size_t samples = 0;
  double rms_measure = 0.0;   ///< RMS over seeds of max_m |measure error|
  double rms_function = 0.0;  ///< RMS over seeds of max_m |function error|
  double rms_max = 0.0;       ///< RMS over seeds of the larger of the two
};

struct McStudy {
  std::vector<McRow> rows;
  double slope = 0.0;  ///< log-log slope of rms_max against N
};

/// Seed used for the i-th repetition at sample count N.
std::uint64_t mc_seed(std::uint64_t base_seed, std::size_t samples, int repetition);

/// Monte Carlo point-cloud encodings of uniform samples against the
/// normalized quadrature reference.
McStudy mc_vs_quadrature(const ManifoldFunction& mf, const BasisSpec& basis, std::span<const std::size_t> sample_counts,
                         int seeds, std::uint64_t base_seed = 0);

}  // namespace mfe
