#pragma once

#include <array>
#include <cstddef>
#include <span>

namespace mfe {

/// Supported ambient dimensions are 1..kMaxDim.
inline constexpr int kMaxDim = 3;

/// Highest Sobolev order (and per-axis derivative order) the basis module assembles.
inline constexpr int kMaxSobolevOrder = 4;

/// Point in [0,1]^d; only the first d coordinates are meaningful.
using Point = std::array<double, kMaxDim>;

/// Per-axis index or derivative order; only the first d entries are meaningful.
using MultiIndex = std::array<int, kMaxDim>;

inline std::span<const double> coords(const Point& p, int d) { return {p.data(), static_cast<std::size_t>(d)}; }

}  // namespace mfe
