#include "twqkd/numopt.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace twqkd::numopt {

namespace {

void validate(const OptConfig& cfg) {
  if (cfg.coarse_points < 8) {
    throw std::invalid_argument("OptConfig: coarse_points must be >= 8");
  }
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("OptConfig: tol must be > 0");
  if (cfg.max_iter < 1) throw std::invalid_argument("OptConfig: max_iter must be >= 1");
}

}  // namespace

ScalarMax maximize_1d(const std::function<double(double)>& f, double lo, double hi,
                      const OptConfig& cfg) {
  validate(cfg);
  if (!(lo <= hi)) throw std::invalid_argument("maximize_1d: lo must be <= hi");
  if (lo == hi) return {lo, f(lo)};

  const int n = cfg.coarse_points;
  std::vector<double> xs(n), fs(n);
  int best_i = -1;
  bool any_finite = false, all_finite = true, all_equal = true;
  for (int i = 0; i < n; ++i) {
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    fs[i] = f(xs[i]);
    if (std::isfinite(fs[i])) {
      any_finite = true;
      if (best_i < 0 || fs[i] > fs[best_i]) best_i = i;
    } else {
      all_finite = false;
    }
    if (i > 0 && fs[i] != fs[0]) all_equal = false;
  }
  if (!any_finite) throw std::runtime_error("maximize_1d: all points infeasible");
  if (all_finite && all_equal) return {(lo + hi) / 2.0, fs[0]};

  double best_x = xs[best_i];
  double best_v = fs[best_i];
  auto consider = [&](double x, double v) {
    if (std::isfinite(v) && v > best_v) {
      best_v = v;
      best_x = x;
    }
  };

  double a = xs[best_i > 0 ? best_i - 1 : 0];
  double b = xs[best_i < n - 1 ? best_i + 1 : n - 1];
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double fc = f(c), fd = f(d);
  consider(c, fc);
  consider(d, fd);
  for (int it = 0; it < cfg.max_iter && (b - a) > cfg.tol; ++it) {
    if (fc >= fd) {  // ties shrink the right side, biasing toward smaller args
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = f(c);
      consider(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = f(d);
      consider(d, fd);
    }
  }
  return {best_x, best_v};
}

GridMax2d maximize_grid_2d(const std::function<double(double, double)>& f,
                           const std::array<double, 4>& box, int resolution) {
  if (resolution < 2) throw std::invalid_argument("maximize_grid_2d: resolution < 2");
  const auto [x_lo, x_hi, y_lo, y_hi] = box;
  if (!(x_lo <= x_hi && y_lo <= y_hi)) {
    throw std::invalid_argument("maximize_grid_2d: malformed box");
  }
  GridMax2d best{x_lo, y_lo, kInfeasible};
  for (int i = 0; i < resolution; ++i) {
    const double x =
        x_lo + (x_hi - x_lo) * static_cast<double>(i) / static_cast<double>(resolution - 1);
    for (int j = 0; j < resolution; ++j) {
      const double y =
          y_lo + (y_hi - y_lo) * static_cast<double>(j) / static_cast<double>(resolution - 1);
      const double v = f(x, y);
      if (std::isfinite(v) && v > best.value) best = {x, y, v};
    }
  }
  return best;
}

}  // namespace twqkd::numopt
