#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "terndio/forms.hpp"
#include "terndio/weights.hpp"
#include "terndio/zeta.hpp"

namespace terndio {

/// Scale, form and weights for the exponential sums, with the nonzero terms
/// precomputed:
///   F1(t) = sum w1(x1/P) w2(x2/P) e^{i t log(x1^k - alpha2 x2^k)}
///   F2(t) = sum w3(x3/P) e^{i t log x3}
class ExpSumContext {
 public:
  ExpSumContext(double P, const FormParams& params, const SupportParams& support);

  double P() const { return P_; }
  const FormParams& params() const { return params_; }
  const SupportParams& support() const { return support_; }
  const BumpFamily& weights() const { return weights_; }

  /// Terms of F1: weights and phases log(x1^k - alpha2 x2^k).
  const std::vector<double>& f1_weights() const { return f1_w_; }
  const std::vector<double>& f1_phases() const { return f1_phi_; }
  const std::vector<std::int64_t>& f1_x1() const { return f1_x1_; }
  const std::vector<std::int64_t>& f1_x2() const { return f1_x2_; }
  const std::vector<double>& f2_weights() const { return f2_w_; }
  const std::vector<double>& f2_phases() const { return f2_phi_; }

  /// F1(0), the total weight.
  double f1_mass() const { return f1_mass_; }
  double f2_mass() const { return f2_mass_; }

  /// Largest node spacing resolving every phase: 0.25 / (k log(b1 P)).
  double max_spacing() const;

  /// T = 2 P^k / (c0 theta) with the constructive c0.
  double T_for(double theta) const;

 private:
  double P_;
  FormParams params_;
  SupportParams support_;
  BumpFamily weights_;
  std::vector<double> f1_w_, f1_phi_;
  std::vector<std::int64_t> f1_x1_, f1_x2_;
  std::vector<double> f2_w_, f2_phi_;
  double f1_mass_ = 0.0;
  double f2_mass_ = 0.0;
};

std::complex<double> f1(const ExpSumContext& ctx, double t);
std::complex<double> f2(const ExpSumContext& ctx, double t);

/// Sum of weights[j] e^{i t phases[j]} with fixed 1024-term blocks and
/// compensated block accumulation.
std::complex<double> weighted_phase_sum(const std::vector<double>& weights,
                                        const std::vector<double>& phases, double t);

/// F1 at t0 + j h for j = 0..n-1. Nodes are processed in fixed blocks of 256,
/// each started from exact phases, so the output does not depend on `workers`.
std::vector<std::complex<double>> f1_grid(const ExpSumContext& ctx, double t0, double h,
                                          std::size_t n, unsigned workers = 1);

struct QuadratureOptions {
  double node_budget = 5e7;
  unsigned workers = 1;
  double spacing = 0.0;  ///< 0 means ctx.max_spacing()
};

/// integral_{-T}^{T} |F1(t)|^2 dt on a uniform grid. The integrand is replaced by
/// its piecewise linear interpolant, so the result is nondecreasing in T.
double mean_square_F1(const ExpSumContext& ctx, double T, const QuadratureOptions& opts = {});

/// The kernel I(y) = integral min(1, (T/|t|)^10) e^{i t y} dt. Real and even.
std::complex<double> kernel_I(double T, double y);

/// Generalized exponential integral E_n(z), Re z >= 0, z != 0 when n = 1.
std::complex<double> expint_En(int n, std::complex<double> z);

enum class I3Method { quadrature, pairwise };

std::string to_string(I3Method m);

struct I3Result {
  double value = 0.0;       ///< estimate of I3 (quadrature part plus tail bound)
  double quadrature = 0.0;  ///< the part on [-5T, 5T]
  double tail_bound = 0.0;  ///< bound on |t| > 5T
  I3Method method = I3Method::quadrature;
};

/// I3 = integral min(1, (T/|t|)^10) |F1(t)|^2 dt.
I3Result integral_I3(const ExpSumContext& ctx, double T, const QuadratureOptions& opts = {},
                     I3Method method = I3Method::quadrature);

/// Unweighted S(X1, X2) = sum over ceil(a1 P/4) <= x1 < X1, ceil(a2 P/4) <= x2 < X2
/// of e^{i t log(x1^k - alpha2 x2^k)}.
std::complex<double> partial_sum_S(const ExpSumContext& ctx, double X1, double X2, double t);

/// sqrt(P) (integral_{-50}^{50} |zeta(1/2 + i(y - t))| / (1 + |y|^10) dy + tail).
double f2_envelope(const ExpSumContext& ctx, double t);

/// integral_{1/2}^{1} |F1(t)|^2 d alpha2 with alpha2-independent weights.
double alpha2_mean_square_F1(double P, int k, double t, const SupportParams& support,
                             const QuadratureOptions& opts = {});

struct HessGValue {
  double closed = 0.0;
  double numeric = 0.0;
};

/// Determinant of the Hessian of g(x1, x2) = t (log Phi(x1 + mu, x2 + nu) - log Phi(x1, x2)):
/// the leading quadratic form in (mu, nu) and a fourth-order finite-difference value.
HessGValue hessG_check(const ExpSumContext& ctx, std::int64_t mu, std::int64_t nu, double x1,
                       double x2, double t);

/// Coefficients (A, B, C) of the quadratic form A mu^2 + B mu nu + C nu^2.
std::array<double, 3> hessG_quadratic(int k, double alpha2, double x1, double x2, double t);

}  // namespace terndio
