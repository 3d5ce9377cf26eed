#pragma once

#include <cstdint>
#include <vector>

namespace terndio {

/// Linear-interpolation quantile (Hyndman-Fan type 7). q in [0, 1].
double quantile(std::vector<double> values, double q);
double median(std::vector<double> values);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares y = intercept + slope * x. Needs two distinct x.
LinearFit ols(const std::vector<double>& x, const std::vector<double>& y);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Wilson score interval for a binomial proportion at normal quantile z.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

}  // namespace terndio
