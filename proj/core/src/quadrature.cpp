#include "terndio/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "terndio/errors.hpp"

namespace terndio {

namespace {

GaussRule build_rule(int n) {
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= n; ++j) {
      double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1 || n > 512) throw ValidationError("Gauss-Legendre order must lie in [1, 512]");
  static std::mutex m;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard<std::mutex> lock(m);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussRule>(build_rule(n));
  return *slot;
}

void legendre_p(int nmax, double y, std::vector<double>& out) {
  out.assign(nmax + 1, 0.0);
  out[0] = 1.0;
  if (nmax >= 1) out[1] = y;
  for (int j = 2; j <= nmax; ++j) {
    out[j] = ((2.0 * j - 1.0) * y * out[j - 1] - (j - 1.0) * out[j - 2]) / j;
  }
}

void spherical_bessel_j(int nmax, double x, std::vector<double>& out) {
  out.assign(nmax + 1, 0.0);
  double ax = std::fabs(x);
  if (ax < 1e-3) {
    // Series j_n(x) = x^n/(2n+1)!! (1 - x^2/(2(2n+3)) + x^4/(8(2n+3)(2n+5)))
    double pw = 1.0, dfact = 1.0;
    for (int n = 0; n <= nmax; ++n) {
      if (n > 0) {
        pw *= ax;
        dfact *= 2.0 * n + 1.0;
      }
      double x2 = ax * ax;
      out[n] = pw / dfact *
               (1.0 - x2 / (2.0 * (2 * n + 3)) + x2 * x2 / (8.0 * (2 * n + 3) * (2 * n + 5)));
    }
  } else if (ax > nmax) {
    out[0] = std::sin(ax) / ax;
    if (nmax >= 1) out[1] = std::sin(ax) / (ax * ax) - std::cos(ax) / ax;
    for (int n = 1; n < nmax; ++n) out[n + 1] = (2.0 * n + 1.0) / ax * out[n] - out[n - 1];
  } else {
    // Miller's downward recurrence, normalized by sum (2n+1) j_n^2 = 1.
    int start = nmax + 20 + static_cast<int>(std::sqrt(40.0 * (nmax + ax)));
    double jp1 = 0.0, j = 1.0;
    double norm = 0.0;
    std::vector<double> tmp(start + 1, 0.0);
    tmp[start] = j;
    for (int n = start; n >= 1; --n) {
      double jm1 = (2.0 * n + 1.0) / ax * j - jp1;
      jp1 = j;
      j = jm1;
      tmp[n - 1] = j;
      if (std::fabs(j) > 1e100) {
        for (int m = n - 1; m <= start; ++m) tmp[m] *= 1e-100;
        j *= 1e-100;
        jp1 *= 1e-100;
      }
    }
    for (int n = 0; n <= start; ++n) norm += (2.0 * n + 1.0) * tmp[n] * tmp[n];
    double scale = 1.0 / std::sqrt(norm);
    // Fix the sign against whichever of j_0, j_1 is better conditioned.
    double j0 = std::sin(ax) / ax;
    double j1 = std::sin(ax) / (ax * ax) - std::cos(ax) / ax;
    if (std::fabs(j0) >= std::fabs(j1)) {
      if ((j0 < 0) != (tmp[0] < 0)) scale = -scale;
    } else {
      if ((j1 < 0) != (tmp[1] < 0)) scale = -scale;
    }
    for (int n = 0; n <= nmax; ++n) out[n] = tmp[n] * scale;
  }
  if (x < 0) {
    for (int n = 1; n <= nmax; n += 2) out[n] = -out[n];
  }
}

}  // namespace terndio
