#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "mfe/scalar_field.hpp"
#include "mfe/types.hpp"

namespace mfe {

/// Truncated Taylor series in one variable: c[j] is the j-th Taylor
/// coefficient, so the j-th derivative is j! * c[j].
struct Jet {
  std::array<double, kMaxSobolevOrder + 1> c{};

  static Jet variable(double x) {
    Jet j;
    j.c[0] = x;
    j.c[1] = 1.0;
    return j;
  }
  static Jet constant(double v) {
    Jet j;
    j.c[0] = v;
    return j;
  }
  double derivative(int order) const;
};

Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator*(double s, const Jet& a);
Jet operator+(double s, const Jet& a);
Jet exp(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet reciprocal(const Jet& a);

using JetFunction = std::function<Jet(const Jet&)>;

/// Tensor-product field f(x) = prod_j g_j(x_j) with analytic derivatives of
/// every order up to kMaxSobolevOrder per axis.
ScalarField separable_field(std::vector<JetFunction> factors, std::string name);

/// exp(x_1 + ... + x_d).
ScalarField expsum_field(int d);
/// prod_j 1 / (1 + 25 (2 x_j - 1)^2).
ScalarField runge_field(int d);
/// (x_1 + ... + x_d)^k, a polynomial of total degree k.
ScalarField poly_field(int d, int k);
/// prod_j exp(sin(2 pi x_j + j)); 1-periodic and analytic on the torus.
ScalarField periodic_field(int d);
/// Constant field.
ScalarField constant_field(double value);
/// prod_j b((x_j - c_j) / half_width) with b(t) = exp(-1/(1-t^2)) on |t| < 1;
/// smooth and supported on the box |x_j - c_j| < half_width.
ScalarField bump_field(const Point& center, double half_width, int d);

/// Resolve a command-line test function name: expsum, runge, periodic, poly:K.
ScalarField test_field_by_name(const std::string& name, int d);

}  // namespace mfe
