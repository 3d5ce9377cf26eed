#pragma once

#include <complex>
#include <string>

namespace terndio {

enum class ZetaMethod { euler_maclaurin, riemann_siegel };

std::string to_string(ZetaMethod m);

/// zeta(1/2 + i t) with its Hardy Z value and an a-priori error bound.
struct ZetaValue {
  double t = 0.0;
  double magnitude = 0.0;
  double hardy_z = 0.0;
  std::complex<double> value;
  ZetaMethod method = ZetaMethod::euler_maclaurin;
  double error_bound = 0.0;
};

/// |t| <= 1e6. Euler-Maclaurin below |t| = 200, Riemann-Siegel with four
/// correction terms above.
ZetaValue zeta_half_line(double t);

/// Riemann-Siegel theta, the phase making e^{i theta} zeta(1/2 + i t) real.
double riemann_siegel_theta(double t);

/// Euler-Maclaurin summation for zeta(s), Re s > 0, with N direct terms and M
/// Bernoulli corrections. *error receives the remainder bound.
std::complex<double> zeta_euler_maclaurin(std::complex<double> s, int N, int M, double* error);

}  // namespace terndio
