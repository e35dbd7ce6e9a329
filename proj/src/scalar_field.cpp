#include "mfe/scalar_field.hpp"

#include <vector>

namespace mfe {

namespace {

double central_difference(const ScalarField::ValueFn& f, std::vector<double>& x, MultiIndex alpha) {
  int axis = -1;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (alpha[j] > 0) {
      axis = static_cast<int>(j);
      break;
    }
  }
  if (axis < 0) return f(x);
  alpha[axis] -= 1;
  const double h = ScalarField::kFiniteDifferenceStep;
  const double saved = x[axis];
  x[axis] = saved + h;
  const double up = central_difference(f, x, alpha);
  x[axis] = saved - h;
  const double down = central_difference(f, x, alpha);
  x[axis] = saved;
  return (up - down) / (2.0 * h);
}

}  // namespace

double ScalarField::deriv(std::span<const double> x, const MultiIndex& alpha) const {
  bool zero = true;
  for (std::size_t j = 0; j < x.size(); ++j) zero = zero && alpha[j] == 0;
  if (zero) return value(x);
  if (derivative) return derivative(x, alpha);
  std::vector<double> work(x.begin(), x.end());
  return central_difference(value, work, alpha);
}

}  // namespace mfe
