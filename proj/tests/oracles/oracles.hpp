#pragma once

// Independent reference implementations. None of these call the routine they
// check; they trade speed for directness.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "terndio/expsums.hpp"
#include "terndio/forms.hpp"
#include "terndio/nearpoints.hpp"

namespace terndio::oracle {

struct BruteMin {
  long double value = INFINITY;
  std::array<std::int64_t, 3> witness{};
};

/// Plain triple loop with long double arithmetic; first strict improvement in
/// lexicographic order wins, so ties keep the smallest witness.
inline BruteMin brute_min(int k, double alpha2, double alpha3, const BoxRegion& box) {
  BruteMin best;
  for (std::int64_t x1 = box.lo[0]; x1 <= box.hi[0]; ++x1) {
    for (std::int64_t x2 = box.lo[1]; x2 <= box.hi[1]; ++x2) {
      for (std::int64_t x3 = box.lo[2]; x3 <= box.hi[2]; ++x3) {
        long double v = std::pow(static_cast<long double>(x1), k) -
                        static_cast<long double>(alpha2) * std::pow(static_cast<long double>(x2), k) -
                        static_cast<long double>(alpha3) * std::pow(static_cast<long double>(x3), k);
        v = std::fabs(v);
        if (v < best.value) best = {v, {x1, x2, x3}};
      }
    }
  }
  return best;
}

/// Euler-Maclaurin zeta(1/2 + i t) in long double with a hard-coded Bernoulli
/// table (B2 .. B30) and N = 30 + ceil(|t|/2) direct terms.
inline std::complex<long double> zeta_em(double t) {
  static const long double B[] = {
      1.0L / 6,           -1.0L / 30,          1.0L / 42,           -1.0L / 30,
      5.0L / 66,          -691.0L / 2730,      7.0L / 6,            -3617.0L / 510,
      43867.0L / 798,     -174611.0L / 330,    854513.0L / 138,     -236364091.0L / 2730,
      8553103.0L / 6,     -23749461029.0L / 870, 8615841276005.0L / 14322};
  using C = std::complex<long double>;
  const C s(0.5L, static_cast<long double>(t));
  const long N = 30 + static_cast<long>(std::ceil(std::fabs(t) / 2.0));
  C sum = 0;
  for (long n = 1; n < N; ++n) sum += std::exp(-s * std::log(static_cast<long double>(n)));
  const long double Nl = static_cast<long double>(N);
  const C Ns = std::exp(-s * std::log(Nl));
  sum += Ns * Nl / (s - 1.0L) + Ns / 2.0L;
  // term j: B_{2j}/(2j)! s(s+1)...(s+2j-2) N^{-s-2j+1}
  C rising = s;
  long double fact = 2.0L;  // (2j)!
  C Npow = Ns / Nl;        // N^{-s-1}
  for (int j = 1; j <= 15; ++j) {
    sum += B[j - 1] / fact * rising * Npow;
    rising *= (s + static_cast<long double>(2 * j - 1)) * (s + static_cast<long double>(2 * j));
    fact *= static_cast<long double>(2 * j + 1) * static_cast<long double>(2 * j + 2);
    Npow /= Nl * Nl;
  }
  return sum;
}

/// integral min(1, (T/|t|)^10) e^{i t y} dt by composite Gauss-Legendre:
/// 2 sin(T y)/y on the plateau plus 2 T integral_1^50 u^-10 cos(T y u) du; the
/// neglected tail is below 2 T 50^-9 / 9.
inline double kernel_I_quadrature(double T, double y) {
  static const double x[5] = {0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                              0.9061798459386640};
  static const double w[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                              0.2369268850561891, 0.2369268850561891};
  const double a = T * y;
  double plateau = std::fabs(y) > 0.0 ? 2.0 * std::sin(a) / y : 2.0 * T;
  const double width = std::min(0.05, 0.5 / std::max(1.0, std::fabs(a)));
  const long panels = static_cast<long>(std::ceil(49.0 / width));
  long double acc = 0.0L;
  for (long p = 0; p < panels; ++p) {
    double lo = 1.0 + 49.0 * static_cast<double>(p) / static_cast<double>(panels);
    double hi = 1.0 + 49.0 * static_cast<double>(p + 1) / static_cast<double>(panels);
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int i = 0; i < 5; ++i) {
      double u = mid + half * x[i];
      acc += static_cast<long double>(w[i] * half * std::pow(u, -10.0) * std::cos(a * u));
    }
  }
  return plateau + 2.0 * T * static_cast<double>(acc);
}

/// integral_{-T}^{T} |F1|^2 = sum_{i,j} w_i w_j 2 sin(T d_ij) / d_ij exactly.
inline double mean_square_pairwise(const ExpSumContext& ctx, double T) {
  const auto& w = ctx.f1_weights();
  const auto& p = ctx.f1_phases();
  long double acc = 0.0L;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = 0; j < w.size(); ++j) {
      double d = p[i] - p[j];
      double k = d == 0.0 ? 2.0 * T : 2.0 * std::sin(T * d) / d;
      acc += static_cast<long double>(w[i] * w[j] * k);
    }
  }
  return static_cast<double>(acc);
}

struct NaiveI4 {
  double weight_sum = 0.0;
  std::uint64_t hits = 0;
};

/// Four nested loops over the support box with the defining predicate.
inline NaiveI4 i4_naive(const ExpSumContext& ctx, double U) {
  const int k = ctx.params().k;
  const double a2 = ctx.params().alpha2, P = ctx.P();
  BoxRegion box = BoxRegion::from_support(ctx.support(), P);
  const BumpFamily& wf = ctx.weights();
  long double acc = 0.0L;
  NaiveI4 out;
  for (std::int64_t y1 = box.lo[0]; y1 <= box.hi[0]; ++y1) {
    double w1 = wf.eval(1, y1 / P);
    if (w1 == 0.0) continue;
    for (std::int64_t y2 = box.lo[1]; y2 <= box.hi[1]; ++y2) {
      double w2 = wf.eval(2, y2 / P);
      if (w2 == 0.0) continue;
      for (std::int64_t y3 = box.lo[0]; y3 <= box.hi[0]; ++y3) {
        double w3 = wf.eval(1, y3 / P);
        if (w3 == 0.0) continue;
        for (std::int64_t y4 = box.lo[1]; y4 <= box.hi[1]; ++y4) {
          double w4 = wf.eval(2, y4 / P);
          if (w4 == 0.0) continue;
          if (i4_indicator(k, a2, y1, y2, y3, y4, U)) {
            acc += static_cast<long double>(w1) * w2 * w3 * w4;
            ++out.hits;
          }
        }
      }
    }
  }
  out.weight_sum = static_cast<double>(acc);
  return out;
}

/// #{x1..x4 in [P, 2P-1] : |(x4 x1)^k - (x2 x3)^k| <= U} by four loops.
inline std::uint64_t r_quartic(int P, int k, double U) {
  std::uint64_t count = 0;
  auto pw = [k](__int128 z) {
    __int128 r = 1;
    for (int i = 0; i < k; ++i) r *= z;
    return r;
  };
  const long double Ul = U;
  for (long x1 = P; x1 < 2L * P; ++x1)
    for (long x4 = P; x4 < 2L * P; ++x4) {
      __int128 a = pw(static_cast<__int128>(x1) * x4);
      for (long x2 = P; x2 < 2L * P; ++x2)
        for (long x3 = P; x3 < 2L * P; ++x3) {
          __int128 d = a - pw(static_cast<__int128>(x2) * x3);
          if (d < 0) d = -d;
          if (static_cast<long double>(d) <= Ul) ++count;
        }
    }
  return count;
}

}  // namespace terndio::oracle
