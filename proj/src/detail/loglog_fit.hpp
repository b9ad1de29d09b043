#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>

namespace wj::detail {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_deviation = 0.0;
};

// Ordinary least squares y = slope * x + intercept; needs at least 2 points.
inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  for (std::size_t i = 0; i < n; ++i)
    f.max_deviation = std::max(f.max_deviation, std::abs(y[i] - (f.slope * x[i] + f.intercept)));
  return f;
}

}  // namespace wj::detail
