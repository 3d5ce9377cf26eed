#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "fourier_reference.hpp"
#include "terndio/quadrature.hpp"
#include "terndio/rng.hpp"
#include "terndio/weights.hpp"

using namespace terndio;

namespace {

// Direct composite Gauss-Legendre of w(x) e^{-i xi x} between consecutive
// breakpoints of the weight; the transition pieces are never split analytically.
std::complex<double> direct_transform(const BumpGeometry& g, double xi) {
  const GaussRule& r = gauss_legendre(20);
  const double cuts[4] = {g.support_lo, g.plateau_lo, g.plateau_hi, g.support_hi};
  std::complex<double> acc = 0.0;
  for (int s = 0; s < 3; ++s) {
    const double a = cuts[s], len = cuts[s + 1] - cuts[s];
    const int panels = 200 + static_cast<int>(std::ceil(std::fabs(xi) * len));
    for (int p = 0; p < panels; ++p) {
      double lo = a + len * p / panels, hi = a + len * (p + 1) / panels;
      double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
      for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        double x = mid + half * r.nodes[i];
        acc += r.weights[i] * half * g.eval(x) * std::polar(1.0, -xi * x);
      }
    }
  }
  return acc;
}

}  // namespace

TEST_CASE("solve_support passes verify_support with slack") {
  for (int k : {3, 4, 5}) {
    for (int j = 1; j <= 40; ++j) {
      double a2 = 0.1 * j;
      SupportCheck c = verify_support(solve_support(a2, k), a2, k);
      CHECK(c.ok);
      CHECK(c.ordered);
      CHECK(c.min_slack >= 0.05);
    }
  }
}

TEST_CASE("support lines at specific alpha2") {
  SupportParams s = solve_support(0.5, 3);
  CHECK(std::pow(s.a1 / 4.0, 3) - 0.5 * std::pow(s.b2, 3) > 0.0);
  SupportParams t = solve_support(4.0, 3);
  CHECK(4.0 * std::pow(t.b2, 3) + std::pow(t.b3, 3) < std::pow(t.b1, 3));
  // The alpha2-uniform constants work at both ends and in between.
  SupportParams u = solve_support_uniform(0.5, 1.0, 3);
  for (double a2 : {0.5, 0.6, 0.75, 0.9, 1.0}) CHECK(verify_support(u, a2, 3).ok);
}

TEST_CASE("verify_support flags the boundary and bad ordering") {
  SupportParams s = solve_support(1.0, 3);
  s.b2 = s.a1 / 4.0;  // (a1/4)^3 = alpha2 b2^3
  SupportCheck c = verify_support(s, 1.0, 3);
  CHECK_FALSE(c.ok);
  CHECK(c.slack[0] == doctest::Approx(0.0).epsilon(1e-15));
  SupportParams bad = solve_support(1.0, 3);
  bad.a3 = bad.b3 + 1.0;
  SupportCheck d = verify_support(bad, 1.0, 3);
  CHECK_FALSE(d.ok);
  CHECK_FALSE(d.ordered);
}

TEST_CASE("bump plateau, zero region and symmetry are exact") {
  BumpFamily f(solve_support(1.0, 3));
  for (int i = 0; i <= 4; ++i) {
    const BumpGeometry& g = f.geometry(i);
    for (int j = 0; j <= 20; ++j) {
      double x = g.plateau_lo + (g.plateau_hi - g.plateau_lo) * j / 20.0;
      CHECK(f.eval(i, x) == 1.0);
    }
    CHECK(f.eval(i, g.support_lo) == 0.0);
    CHECK(f.eval(i, g.support_hi) == 0.0);
    CHECK(f.eval(i, g.support_hi + 0.5) == 0.0);
    CHECK(f.eval(i, g.support_lo - 0.5) == 0.0);
    for (int j = 1; j < 50; ++j) {
      double x = g.support_lo + (g.support_hi - g.support_lo) * j / 50.0;
      double v = f.eval(i, x);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
  for (std::uint64_t i = 0; i < 200; ++i) {
    double t = counter_uniform(3, kStreamTest, i, 0.0, 2.5);
    CHECK(f.eval(0, t) == f.eval(0, -t));
  }
}

TEST_CASE("smooth step is flat at both ends") {
  CHECK(smooth_step(0.0) == 0.0);
  CHECK(smooth_step(1.0) == 1.0);
  CHECK(smooth_step(0.5) == doctest::Approx(0.5));
  CHECK(smooth_step(1e-3) < 1e-300);
  CHECK(1.0 - smooth_step(1.0 - 1e-3) < 1e-300);
}

TEST_CASE("transform at zero is the real mass") {
  BumpFamily f(solve_support(1.0, 3));
  std::complex<double> z0 = f.fourier(0, 0.0);
  CHECK(z0.imag() == 0.0);
  CHECK(z0.real() > 2.0);
  CHECK(z0.real() < 4.0);
  CHECK(z0.real() == doctest::Approx(3.0).epsilon(1e-12));
  for (int i = 1; i <= 4; ++i) {
    std::complex<double> z = f.fourier(i, 0.0);
    CHECK(z.imag() == 0.0);
    CHECK(z.real() == doctest::Approx(f.geometry(i).mass()).epsilon(1e-13));
  }
}

TEST_CASE("transform matches the 40-digit reference") {
  BumpFamily f(solve_support(1.0, 3));
  for (const auto& r : fixtures::kWeight2Transform) {
    std::complex<double> z = f.fourier(2, r.xi);
    CHECK(std::abs(z - std::complex<double>(r.re, r.im)) <= 1e-14);
  }
  for (const auto& r : fixtures::kSymmetricTransform) {
    std::complex<double> z = f.fourier(0, r.xi);
    CHECK(std::abs(z - std::complex<double>(r.re, r.im)) <= 1e-14);
  }
}

TEST_CASE("transform matches direct quadrature of the weight") {
  BumpFamily f(solve_support(0.8, 4));
  for (int i = 0; i <= 4; ++i) {
    for (double xi : {0.3, 2.0, 17.0, 140.0, 900.0}) {
      CHECK(std::abs(f.fourier(i, xi) - direct_transform(f.geometry(i), xi)) <= 1e-12);
    }
  }
}

TEST_CASE("panel and Filon routes of the profile transform agree") {
  for (double w : {0.0, 1.0, 50.0, 999.0, 1000.0, 1001.0, 3e3, 1e4, 1e5, 1e6}) {
    std::complex<double> a = profile_transform_panels(w), b = profile_transform_filon(w);
    CHECK(std::abs(a - b) <= 1e-13);
    CHECK(std::abs(profile_transform(-w) - std::conj(profile_transform(w))) <= 1e-15);
  }
}

TEST_CASE("large-frequency decay of the second weight") {
  // C from the reference values: max over the reference grid of (1 + xi)^10 |w2^|, times 1.25.
  double c = 0.0;
  for (const auto& r : fixtures::kWeight2Transform) {
    c = std::max(c, std::pow(1.0 + r.xi, 10) * std::hypot(r.re, r.im));
  }
  c *= 1.25;
  BumpFamily f(solve_support(1.0, 3));
  for (int j = 0; j <= 400; ++j) {
    double xi = std::pow(10.0, 4.0 * j / 400.0);
    CHECK(std::pow(1.0 + xi, 10) * std::abs(f.fourier(2, xi)) <= c);
  }
}

TEST_CASE("Fourier inversion recovers the bump") {
  BumpFamily f(solve_support(1.0, 3));
  const GaussRule& r = gauss_legendre(16);
  for (int i : {0, 3}) {
    const double Xi = i == 0 ? 400.0 : 300.0;
    const int panels = 1000;
    std::vector<double> nodes, weights;
    std::vector<std::complex<double>> values;
    for (int p = 0; p < panels; ++p) {
      double lo = Xi * p / panels, hi = Xi * (p + 1) / panels;
      double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
      for (std::size_t n = 0; n < r.nodes.size(); ++n) {
        nodes.push_back(mid + half * r.nodes[n]);
        weights.push_back(r.weights[n] * half);
        values.push_back(f.fourier(i, nodes.back()));
      }
    }
    for (double x : {0.0, 0.4, 1.0, 1.3, 1.7, 2.2, 0.6, 1.9}) {
      double acc = 0.0;
      for (std::size_t n = 0; n < nodes.size(); ++n) {
        acc += weights[n] * (values[n] * std::polar(1.0, nodes[n] * x)).real();
      }
      CHECK(std::fabs(acc / std::numbers::pi - f.eval(i, x)) <= 1e-6);
    }
  }
}

TEST_CASE("kernel difference examples and envelope") {
  BumpFamily f(solve_support(1.0, 3));
  const double P = 64.0, T = 5000.0;
  CHECK(kernel_difference(f, T, P, 0.0).value == 0.0);
  KernelDifference atT = kernel_difference(f, T, P, T);
  CHECK(atT.value <= kKernelEnvelopeC3);
  KernelDifference far = kernel_difference(f, T, P, 10.0 * T);
  CHECK(far.value <= kKernelEnvelopeC3 * 1e-10 + far.error_bound);
  CHECK_THROWS(kernel_difference(f, 2.0, P, 1.0));

  for (std::uint64_t i = 0; i < 400; ++i) {
    double Pi = std::pow(2.0, 3.0 + 7.0 * counter_uniform(5, kStreamTest, 3 * i));
    double Ti = std::pow(Pi, 0.5 + 4.5 * counter_uniform(5, kStreamTest, 3 * i + 1));
    double ti = Ti * std::pow(10.0, -6.0 + 9.0 * counter_uniform(5, kStreamTest, 3 * i + 2));
    KernelDifference d = kernel_difference(f, Ti, Pi, ti);
    CHECK(d.value <= d.envelope + d.error_bound);
  }
}

TEST_CASE("frozen envelope constant is reproduced" * doctest::timeout(120)) {
  BumpFamily f(solve_support(1.0, 3));
  CHECK(calibrate_kernel_envelope(f) == doctest::Approx(kKernelEnvelopeC3).epsilon(1e-12));
}
