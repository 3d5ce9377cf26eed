#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "terndio/errors.hpp"
#include "terndio/rng.hpp"
#include "terndio/zeta.hpp"

using namespace terndio;

TEST_CASE("oracle reproduces the known central value") {
  CHECK(std::abs(static_cast<std::complex<double>>(oracle::zeta_em(0.0))) ==
        doctest::Approx(1.4603545088095868).epsilon(1e-14));
}

TEST_CASE("value at the centre of the critical strip") {
  ZetaValue z = zeta_half_line(0.0);
  double ref = std::abs(static_cast<std::complex<double>>(oracle::zeta_em(0.0)));
  CHECK(std::fabs(z.magnitude - ref) <= 1e-8);
  CHECK(std::fabs(z.magnitude - 1.4603545088) <= 1e-8);
  CHECK(z.hardy_z < 0.0);
  CHECK(z.error_bound <= 1e-8);
}

TEST_CASE("first zero is bracketed by a sign change of Z") {
  ZetaValue a = zeta_half_line(14.1347 - 1e-3), b = zeta_half_line(14.1347 + 1e-3);
  CHECK(a.hardy_z * b.hardy_z < 0.0);
  CHECK(zeta_half_line(14.134725).magnitude < 1e-3);
}

TEST_CASE("agreement with the oracle on random heights") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    double t = counter_uniform(17, kStreamTest, i, 0.0, 1e4);
    ZetaValue z = zeta_half_line(t);
    std::complex<double> o = static_cast<std::complex<double>>(oracle::zeta_em(t));
    INFO("t = " << t);
    CHECK(std::fabs(z.magnitude - std::abs(o)) <= 1e-8);
    CHECK(z.error_bound <= 1e-8);
  }
}

TEST_CASE("method switch and Riemann-Siegel accuracy at the boundary") {
  CHECK(zeta_half_line(100.0).method == ZetaMethod::euler_maclaurin);
  CHECK(zeta_half_line(5000.0).method == ZetaMethod::riemann_siegel);
  for (double t : {100.0, 199.9, 200.1, 1234.5}) {
    std::complex<double> o = static_cast<std::complex<double>>(oracle::zeta_em(t));
    CHECK(std::fabs(zeta_half_line(t).magnitude - std::abs(o)) <= 1e-8);
  }
}

TEST_CASE("symmetry, theta and refusal") {
  CHECK(zeta_half_line(-37.5).magnitude == doctest::Approx(zeta_half_line(37.5).magnitude).epsilon(1e-13));
  // theta(t) = t/2 log(t/(2 pi)) - t/2 - pi/8 + 1/(48 t) + ... for large t.
  double t = 1e4;
  double approx = t / 2 * std::log(t / (2 * M_PI)) - t / 2 - M_PI / 8 + 1 / (48 * t);
  CHECK(riemann_siegel_theta(t) == doctest::Approx(approx).epsilon(1e-14));
  CHECK_THROWS_AS(zeta_half_line(2e6), DomainError);
  CHECK(zeta_half_line(1e5).error_bound <= 1e-8);
}

TEST_CASE("Euler-Maclaurin away from the line") {
  double err = 0.0;
  std::complex<double> z2 = zeta_euler_maclaurin({2.0, 0.0}, 20, 10, &err);
  CHECK(z2.real() == doctest::Approx(M_PI * M_PI / 6).epsilon(1e-14));
  CHECK(err < 1e-14);
}
