#pragma once

#include <span>
#include <utility>
#include <vector>

namespace geomom::verify {

// Residuals at or below this are treated as converged to rounding; slope
// estimates over such ladders carry no information.
inline constexpr double kResidualFloor = 1e-12;

struct ConvergenceEstimate {
  double order = 0.0;                 // least-squares slope of log r vs log h
  bool at_floor = false;              // every residual below kResidualFloor
  std::vector<double> segment_slopes; // slope of each consecutive ladder pair
};

// Fits log(residual) against log(h) for a refinement ladder of (h, residual)
// pairs. Throws InvalidArgument on a degenerate ladder (< 2 points, repeated
// h, non-positive h). Residuals clamp at 1e-300 before the log.
ConvergenceEstimate estimate_convergence_order(
    std::span<const std::pair<double, double>> ladder);

} // namespace geomom::verify
