#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "terndio/expsums.hpp"
#include "terndio/forms.hpp"
#include "terndio/stats.hpp"

namespace terndio {

/// theta(P) = c * P^e, with e either absolute or written relative to k.
struct ThetaRule {
  double c = 1.0;
  double exponent = 0.0;
  bool relative_to_k = false;  ///< e = k + exponent
  double exponent_for(int k) const { return relative_to_k ? k + exponent : exponent; }
  double operator()(double P, int k) const;
  /// Parses "c*P^e" where e is a number, a fraction a/b, or k followed by
  /// +/- a number or fraction, optionally parenthesised: "0.5*P^(k-12/5)".
  static ThetaRule parse(const std::string& text);
  std::string to_string() const;
};

struct SweepConfig {
  int k = 3;
  double alpha2 = 1.0;
  bool sample_alpha2 = false;  ///< joint sampling of (alpha2, alpha3) in [1/2, 1]^2
  int samples = 50;
  std::uint64_t seed = 1;
  std::vector<std::int64_t> P{32, 64, 128, 256};
  /// Defaults to the benchmark exponents k - 3, k - 12/5 and k - 2.
  std::vector<ThetaRule> theta_rules{{1.0, -3.0, true}, {1.0, -2.4, true}, {1.0, -2.0, true}};
  SearchMethod method = SearchMethod::fast;
  unsigned workers = 1;
  double budget = 1e9;  ///< evaluation budget per search
  bool record_timing = false;
  int bootstrap = 1000;

  void validate() const;
  /// Flat "key = value" text; '#' starts a comment; theta may repeat.
  static SweepConfig parse(std::istream& in);
  std::string to_text() const;
};

struct SweepRow {
  double alpha2 = 0.0;
  double alpha3 = 0.0;
  std::int64_t P = 0;
  SearchReport report;
  double seconds = 0.0;
};

struct PSummary {
  std::int64_t P = 0;
  double median = 0.0;
  double q10 = 0.0, q25 = 0.0, q75 = 0.0, q90 = 0.0;
  double median_norm_k2 = 0.0;    ///< median / P^{k-2}
  double median_norm_k3 = 0.0;    ///< median / P^{k-3}
  double median_norm_k125 = 0.0;  ///< median / P^{k-12/5}
  std::vector<double> failure_fraction;  ///< one entry per theta rule
};

struct SweepResult {
  SweepConfig config;
  std::vector<SweepRow> rows;  ///< sample-major, then P
  std::vector<PSummary> per_P;
  bool has_fit = false;  ///< needs at least four P values
  LinearFit fit;         ///< log median min_abs against log P
  Interval slope_ci;     ///< 95% percentile bootstrap over samples
};

/// The (alpha2, alpha3) pair drawn for sample i.
std::pair<double, double> sample_alphas(const SweepConfig& config, int i);

SweepResult run_alpha3_sweep(const SweepConfig& config);
/// As run_alpha3_sweep with alpha2 also sampled and alpha2-independent weights.
SweepResult run_double_average(SweepConfig config);

/// CSV table with columns alpha2, alpha3, P, min_abs, witness1..3, seconds.
void write_sweep_csv(const SweepResult& result, std::ostream& out);
/// Two columns: log P, log of the (normalized) median. `exponent` is the power
/// of P divided out.
void write_plot_data(const SweepResult& result, double exponent, std::ostream& out);

struct FractionRow {
  std::int64_t P = 0;
  double theta = 0.0;
  std::uint64_t failures = 0;
  std::uint64_t trials = 0;
  double fraction = 0.0;
  Interval wilson;
  double bound = 0.0;  ///< P^{5k/6-2} theta^{-5/6} + P^{10k/9-8/3} theta^{-10/9}
};

/// Share of sampled alpha3 with no |f| < theta(P) in the support box, per P.
std::vector<FractionRow> exceptional_fraction(const SweepConfig& config, const ThetaRule& rule);
/// Same, for precomputed sweep rows.
std::vector<FractionRow> exceptional_fraction(const SweepResult& sweep, const ThetaRule& rule);

/// Lower-bound sum for the main term: (sqrt P / T) sum w(x/P) [|log gap| < P^{-1/2}],
/// scaled by P^{k-3}/theta so that theta cancels.
double lemma1_ratio(const ExpSumContext& ctx, double alpha3);

/// 0.8 times the minimum of lemma1_ratio over `grid` equally spaced alpha3 in [1/2, 1].
double lemma1_calibrate(const ExpSumContext& ctx, int grid = 33);

struct MeasureBound {
  double bound = 0.0;        ///< bound on the exceptional measure in [1/2, 1]
  double fraction_bound = 0.0;  ///< the same as a share of [1/2, 1], i.e. 2 * bound
  double c2 = 0.0;
  double c3 = 0.0;
  double T = 0.0;
  double prefactor = 0.0;    ///< 2 pi c2^-2 theta^-2 P^{2k-6} c3^2 T^-2
  double small_t = 0.0;      ///< bound on the |t| < P^{1/10} part of the integral
  double f2_sup = 0.0;       ///< grid sup of min(1, T/|t|) |F2(k t)| over |t| >= P^{1/10}
  I3Result I3;
};

struct MeasureBoundOptions {
  std::optional<double> c2;  ///< defaults to lemma1_calibrate(ctx)
  double c3 = kKernelEnvelopeC3;
  int f2_grid = 20000;
  QuadratureOptions quadrature;
  I3Method i3_method = I3Method::pairwise;
};

/// Assembles the Chebyshev bound on meas{alpha3 : |S4| >= c2 P^{3-k} theta}.
/// The set of alpha3 with no |f| <= C theta on the weight support lies inside it,
/// with C from reduction_constants. Needs theta > P^{k-3}.
MeasureBound assemble_measure_bound(const ExpSumContext& ctx, double theta,
                                    const MeasureBoundOptions& opts = {});

}  // namespace terndio
