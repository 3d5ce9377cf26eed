#pragma once

#include <vector>

namespace terndio {

/// Gauss-Legendre nodes and weights on [-1, 1]. Cached per order, thread safe.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussRule& gauss_legendre(int n);

/// Fills out[0..nmax] with the spherical Bessel functions j_n(x).
void spherical_bessel_j(int nmax, double x, std::vector<double>& out);

/// Legendre polynomials P_0..P_nmax at y.
void legendre_p(int nmax, double y, std::vector<double>& out);

}  // namespace terndio
