#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "terndio/weights.hpp"

namespace terndio {

/// f(x) = x1^k - alpha2 x2^k - alpha3 x3^k.
struct FormParams {
  int k = 3;
  double alpha2 = 1.0;
  double alpha3 = 1.0;

  void validate() const;
};

using Triple = std::array<std::int64_t, 3>;

/// Closed integer intervals [lo_i, hi_i] per variable.
struct BoxRegion {
  std::array<std::int64_t, 3> lo{1, 1, 1};
  std::array<std::int64_t, 3> hi{1, 1, 1};

  void validate() const;
  double volume() const;

  static BoxRegion cube(std::int64_t lo, std::int64_t hi);
  /// [max(1, ceil(a_i P / 4)), floor(b_i P)] for each variable.
  static BoxRegion from_support(const SupportParams& s, double P);
};

enum class SearchMethod { brute, fast };

std::string to_string(SearchMethod m);

struct SearchReport {
  double min_abs = 0.0;
  Triple witness{};
  std::uint64_t evaluations = 0;
  SearchMethod method = SearchMethod::brute;
};

struct SearchOptions {
  double budget = 1e9;  ///< maximum number of form evaluations
  unsigned workers = 1;
};

double evaluate(const FormParams& params, const Triple& x);

/// Exhaustive minimum of |f| over the box; ties go to the lexicographically
/// smallest witness.
SearchReport min_search_brute(const FormParams& params, const BoxRegion& box,
                              const SearchOptions& opts = {});

/// Same result as min_search_brute, testing only the x1 values next to the real
/// root of alpha2 x2^k + alpha3 x3^k for each (x2, x3).
SearchReport min_search_fast(const FormParams& params, const BoxRegion& box,
                             const SearchOptions& opts = {});

/// sum over x of w1(x1/P) w2(x2/P) w3(x3/P) [|f(x)| < theta].
double weighted_count(const FormParams& params, const BumpFamily& weights, double P, double theta);

/// |log(x1^k - alpha2 x2^k) - log(alpha3 x3^k)|.
double log_gap(const FormParams& params, const Triple& x);

/// Constants making "log_gap < c0 theta P^-k implies |f| <= C theta" hold on the
/// weight support whenever theta < P^k. M bounds alpha3 x3^k / P^k from above.
struct ReductionConstants {
  double c0 = 0.0;
  double C = 0.0;
  double M = 0.0;
};

ReductionConstants reduction_constants(const SupportParams& s, int k);

}  // namespace terndio
