#include "terndio/stats.hpp"

#include <algorithm>
#include <cmath>

#include "terndio/errors.hpp"

namespace terndio {

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw ValidationError("quantile of empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw ValidationError("quantile level must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  double h = q * static_cast<double>(values.size() - 1);
  auto i = static_cast<std::size_t>(std::floor(h));
  if (i + 1 >= values.size()) return values.back();
  double frac = h - static_cast<double>(i);
  return values[i] + frac * (values[i + 1] - values[i]);
}

double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

LinearFit ols(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("ols needs two or more points");
  double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw ValidationError("ols needs two distinct abscissae");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  return f;
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  double n = static_cast<double>(trials);
  double p = static_cast<double>(successes) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double centre = (p + z2 / (2.0 * n)) / denom;
  double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  Interval r{std::max(0.0, centre - half), std::min(1.0, centre + half)};
  if (successes == 0) r.lo = 0.0;
  if (successes == trials) r.hi = 1.0;
  return r;
}

}  // namespace terndio
