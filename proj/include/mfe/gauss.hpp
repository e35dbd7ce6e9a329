#pragma once

#include <vector>

namespace mfe {

struct GaussRule1d {
  std::vector<double> nodes;    ///< ascending, in (0,1)
  std::vector<double> weights;  ///< sum to 1
};

/// Gauss-Legendre rule with `count` nodes mapped to [0,1]; exact for degree 2*count-1.
GaussRule1d gauss_legendre(int count);

/// Smallest Gauss-Legendre node count that integrates degree `degree` exactly.
inline int gauss_count_for_degree(int degree) { return degree <= 1 ? 1 : (degree + 2) / 2; }

}  // namespace mfe
