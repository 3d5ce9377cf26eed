#pragma once

#include <array>
#include <complex>

namespace terndio {

/// Box constants for the three weights. Weight i lives on [a_i/4, b_i] and is
/// identically one on [a_i/2, 3 b_i/4].
struct SupportParams {
  double a1 = 0.0, b1 = 0.0;
  double a2 = 0.0, b2 = 0.0;
  double a3 = 0.0, b3 = 0.0;
};

/// Outcome of checking the three support inequalities. Slacks are relative:
///   line 1: ((a1/4)^k - alpha2 b2^k) / (a1/4)^k
///   line 2: (rhs - lhs) / rhs for (a1/4)^k < alpha2 (a2/4)^k + (a3/4)^k / 2
///   line 3: (b1^k - alpha2 b2^k - b3^k) / b1^k
struct SupportCheck {
  bool ok = false;
  bool ordered = false;  ///< 0 < a_i < b_i for every i
  std::array<double, 3> slack{};
  double min_slack = 0.0;
};

SupportParams solve_support(double alpha2, int k);

/// Constants valid simultaneously for every alpha2 in [lo, hi], so the weights
/// do not depend on alpha2.
SupportParams solve_support_uniform(double lo, double hi, int k);

SupportCheck verify_support(const SupportParams& s, double alpha2, int k);

/// C-infinity transition profile on [0, 1]: 0 below, 1 above, all derivatives
/// vanish at both ends.
double smooth_step(double u);

struct BumpGeometry {
  double support_lo = 0.0;
  double plateau_lo = 0.0;
  double plateau_hi = 0.0;
  double support_hi = 0.0;

  double eval(double x) const;
  /// Integral of the bump.
  double mass() const;
  /// Integral of w(x) e^{-i xi x} dx.
  std::complex<double> fourier(double xi) const;
  /// Integral of x^2 w(x) dx, used for the small-frequency envelope.
  double second_moment() const;
};

/// Index 0 is the symmetric bump, 1..3 the box weights, 4 the weight on the
/// ratio domain of the Monge surface.
class BumpFamily {
 public:
  explicit BumpFamily(const SupportParams& s);

  const BumpGeometry& geometry(int i) const;
  double eval(int i, double x) const;
  std::complex<double> fourier(int i, double xi) const;
  const SupportParams& support() const { return support_; }

 private:
  SupportParams support_;
  std::array<BumpGeometry, 5> g_;
};

/// J(w) = integral_0^1 s(u) e^{-i w u} du for the profile s.
std::complex<double> profile_transform(double w);
/// The two internal routes, exposed for cross-checking.
std::complex<double> profile_transform_panels(double w);
std::complex<double> profile_transform_filon(double w);

/// Frozen output of calibrate_kernel_envelope: 1.25 * max(m2/2, 2 mass, 2 K) with
/// K = sup xi^10 |w0^(xi)| (attained near xi = 175). Derivation in docs/constants.md.
inline constexpr double kKernelEnvelopeC3 = 2.1502137330069838e14;

struct KernelDifference {
  double value = 0.0;
  double envelope = 0.0;
  double error_bound = 0.0;
};

/// |w0^(t/T) - w0^(t/sqrt P)| for the symmetric bump and its envelope
/// c3 min(1, t^2/P, (T/|t|)^10).
KernelDifference kernel_difference(const BumpFamily& family, double T, double P, double t,
                                   double c3 = kKernelEnvelopeC3);

/// Recomputes the envelope constant from the current bump profile.
double calibrate_kernel_envelope(const BumpFamily& family);

}  // namespace terndio
