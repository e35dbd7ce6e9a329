#include "mfe/gauss.hpp"

#include <cmath>
#include <numbers>

#include "mfe/error.hpp"

namespace mfe {

GaussRule1d gauss_legendre(int count) {
  if (count < 1) fail(ErrorKind::Usage, "invalid-order", "Gauss rule needs at least one node");
  GaussRule1d rule;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  const int half = (count + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton iteration on P_count from the Tricomi initial guess.
    double t = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = t;
      for (int j = 2; j <= count; ++j) {
        const double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = count * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-16) break;
    }
    // Recompute derivative at the converged node for the weight.
    double p0 = 1.0, p1 = t;
    for (int j = 2; j <= count; ++j) {
      const double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = count * (t * p1 - p0) / (t * t - 1.0);
    const double w = 2.0 / ((1.0 - t * t) * dp * dp);
    // t is the i-th largest root; map [-1,1] -> [0,1].
    rule.nodes[count - 1 - i] = 0.5 * (1.0 + t);
    rule.nodes[i] = 0.5 * (1.0 - t);
    rule.weights[count - 1 - i] = 0.5 * w;
    rule.weights[i] = 0.5 * w;
  }
  if (count % 2 == 1) rule.nodes[count / 2] = 0.5;
  return rule;
}

}  // namespace mfe
