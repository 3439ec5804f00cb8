#pragma once

#include <vector>

namespace veronese {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y = slope x + intercept.
LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

/// Slope of log y against log x.
LineFit fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace veronese
