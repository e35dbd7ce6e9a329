#pragma once

#include <functional>
#include <span>
#include <string>

#include "mfe/types.hpp"

namespace mfe {

/// A real function on [0,1]^d, optionally with analytic partial derivatives.
///
/// `derivative(x, alpha)` must return the mixed partial of order `alpha`
/// (alpha == 0 returns the value). When it is absent, `deriv` falls back to
/// nested central differences with step `kFiniteDifferenceStep`, which costs
/// roughly eps/h^|alpha| of accuracy.
struct ScalarField {
  using ValueFn = std::function<double(std::span<const double>)>;
  using DerivFn = std::function<double(std::span<const double>, const MultiIndex&)>;

  static constexpr double kFiniteDifferenceStep = 1e-5;

  ValueFn value;
  DerivFn derivative;
  std::string name;

  double operator()(std::span<const double> x) const { return value(x); }
  bool has_derivatives() const { return static_cast<bool>(derivative); }
  double deriv(std::span<const double> x, const MultiIndex& alpha) const;
};

}  // namespace mfe
