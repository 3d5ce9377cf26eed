#pragma once

#include <cstdint>
#include <string>

#include "terndio/expsums.hpp"
#include "terndio/forms.hpp"
#include "terndio/weights.hpp"

namespace terndio {

/// The graph of f(z2, z4) = (1 + alpha2 z2^k - alpha2 z4^k)^{1/k} over the
/// rectangle [lo2, hi2] x [lo4, hi4].
struct MongeSurface {
  int k = 3;
  double alpha2 = 1.0;
  double lo2 = 0.0, hi2 = 0.0;
  double lo4 = 0.0, hi4 = 0.0;

  void validate() const;
  /// Default domain [a2/(4 b1), 4 b2/a1]^2, the support of the ratio weight.
  static MongeSurface from_support(int k, double alpha2, const SupportParams& s);
};

double monge_f(const MongeSurface& surface, double z2, double z4);
double hessian_det_closed(const MongeSurface& surface, double z2, double z4);

/// Two-sided bound c8 <= |det| <= c9 on the whole domain, from a per-cell
/// interval enclosure of the factorized determinant.
struct CurvatureCertificate {
  bool ok = false;
  double c8 = 0.0;
  double c9 = 0.0;
  int sign = -1;
  std::string failure;
};

CurvatureCertificate certify_curvature(const MongeSurface& surface, int grid_n);

struct CountOptions {
  double budget = 2000.0;  ///< largest admissible Q or P
  unsigned workers = 1;
};

struct CountReport {
  double count = 0.0;      ///< weighted count
  std::uint64_t hits = 0;  ///< number of contributing points
  double main_term = 0.0;
  double ratio = 0.0;
  std::string mode;
  double scale = 0.0;   ///< Q or P
  double window = 0.0;  ///< delta or U
};

/// sum over q <= Q and integer a with ||q f(a/q)|| < delta of w4(a1/q) w4(a2/q),
/// against the main term (2/3) (integral w4)^2 delta Q^3.
CountReport count_near_surface(const MongeSurface& surface, const BumpFamily& weights, int Q,
                               double delta, const CountOptions& opts = {});

/// Rational points p/q, q <= P, within delta/q of 1 - alpha2 y2^k - alpha3 y3^k = 0.
/// The curve is split at the point where both gradient components agree; each
/// arc is a graph over the coordinate with the smaller gradient component,
/// restricted to [crossover/4, crossover). Main term delta P^2.
CountReport count_near_curve(const FormParams& params, int P, double delta,
                             const CountOptions& opts = {});

/// Constants of the root-window reduction for the four-variable count.
struct I4Constants {
  double c5 = 0.0;  ///< large-U threshold: U >= c5 P leaves at most one y1
  double c6 = 0.0;  ///< |Phi12 - Phi34| <= c6 P^k / U
  double c7 = 0.0;  ///< |y1 - root| <= c7 P / U
};

I4Constants i4_constants(const SupportParams& s, double alpha2, int k);

/// log(y1^k - alpha2 y2^k) evaluated from exact powers.
double i4_log_phi(int k, double alpha2, std::int64_t y1, std::int64_t y2);

/// |log Phi(y1, y2) - log Phi(y3, y4)| < 1/U, the exact membership test.
bool i4_indicator(int k, double alpha2, std::int64_t y1, std::int64_t y2, std::int64_t y3,
                  std::int64_t y4, double U);

struct I4Result {
  double value = 0.0;        ///< U times the weighted count
  double weight_sum = 0.0;   ///< the weighted count itself
  std::uint64_t hits = 0;    ///< tuples with nonzero weight meeting the test
};

/// I4(U) = U sum w1(y1/P) w2(y2/P) w1(y3/P) w2(y4/P) [|log Phi12 - log Phi34| < 1/U],
/// with the y1 range found by root isolation for each (y2, y3, y4).
I4Result i4_count(const ExpSumContext& ctx, double U, const CountOptions& opts = {});

enum class RMode { quartic, product_pair };

/// #{x1..x4 in [P, 2P-1] : |(x4 x1)^k - (x2 x3)^k| <= U}.
std::uint64_t r_count(int P, int k, double U, RMode mode = RMode::product_pair,
                      const CountOptions& opts = {});

}  // namespace terndio
