#pragma once

// Small deterministic bounded maximizers. No derivatives: the objectives
// they serve are cheap, low-dimensional, and contain feasibility cliffs
// where rejected points evaluate to -infinity.

#include <array>
#include <functional>
#include <limits>

namespace twqkd::numopt {

/// Sentinel an objective returns for infeasible points.
inline constexpr double kInfeasible = -std::numeric_limits<double>::infinity();

struct OptConfig {
  int coarse_points = 256;  // >= 8
  double tol = 1e-10;       // absolute, on the argument
  int max_iter = 200;
};

struct ScalarMax {
  double arg;
  double value;
};

/// Coarse scan over an inclusive uniform grid, then golden-section
/// refinement inside the bracket around the best grid point. Deterministic;
/// never returns less than the best coarse-scan value. A constant finite
/// objective returns the interval midpoint. Throws if every point is
/// infeasible. Multiple peaks are resolved only down to the coarse grid.
ScalarMax maximize_1d(const std::function<double(double)>& f, double lo, double hi,
                      const OptConfig& cfg = {});

struct GridMax2d {
  double x;
  double y;
  double value;
};

/// Exhaustive evaluation on a resolution x resolution grid over
/// [x_lo, x_hi] x [y_lo, y_hi]; first maximum in row-major order wins.
GridMax2d maximize_grid_2d(const std::function<double(double, double)>& f,
                           const std::array<double, 4>& box, int resolution);

}  // namespace twqkd::numopt
