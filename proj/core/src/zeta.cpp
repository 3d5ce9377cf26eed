#include "terndio/zeta.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "terndio/errors.hpp"

namespace terndio {

namespace {

#include "rs_psi_series.inc"

constexpr double kSwitch = 200.0;
constexpr double kMaxT = 1e6;
constexpr int kBernoulliTerms = 26;

// B_{2j} / (2j)! for j = 1..kBernoulliTerms, from 2 (-1)^{j+1} zeta(2j) / (2 pi)^{2j}.
const std::array<long double, kBernoulliTerms + 1>& bernoulli_over_factorial() {
  static const auto table = [] {
    std::array<long double, kBernoulliTerms + 1> b{};
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    for (int j = 1; j <= kBernoulliTerms; ++j) {
      long double z;
      if (j == 1) {
        z = std::numbers::pi_v<long double> * std::numbers::pi_v<long double> / 6.0L;
      } else {
        z = 0.0L;
        for (int n = 20000; n >= 1; --n) z += std::pow(static_cast<long double>(n), -2.0L * j);
      }
      long double v = 2.0L * z / std::pow(two_pi, 2.0L * j);
      b[j] = (j % 2 == 1) ? v : -v;
    }
    return b;
  }();
  return table;
}

// log Gamma(z) for Re z > 0 by Stirling after shifting the argument by 8.
std::complex<long double> log_gamma(std::complex<long double> z) {
  std::complex<long double> shift = 0.0L;
  for (int j = 0; j < 8; ++j) shift += std::log(z + static_cast<long double>(j));
  std::complex<long double> w = z + 8.0L;
  const long double half_log_2pi = 0.5L * std::log(2.0L * std::numbers::pi_v<long double>);
  std::complex<long double> r = (w - 0.5L) * std::log(w) - w + half_log_2pi;
  const auto& b = bernoulli_over_factorial();
  std::complex<long double> wp = w;
  std::complex<long double> w2 = w * w;
  long double fact = 2.0L;  // (2j)!
  for (int j = 1; j <= 10; ++j) {
    if (j > 1) fact *= (2.0L * j - 1.0L) * (2.0L * j);
    long double b2j = b[j] * fact;
    r += b2j / (2.0L * j * (2.0L * j - 1.0L)) / wp;
    wp *= w2;
  }
  return r - shift;
}

long double theta_ld(long double t) {
  const long double pi = std::numbers::pi_v<long double>;
  if (t >= 50.0L) {
    long double ti = 1.0L / t;
    long double ti2 = ti * ti;
    return 0.5L * t * std::log(t / (2.0L * pi)) - 0.5L * t - pi / 8.0L +
           ti * (1.0L / 48.0L +
                 ti2 * (7.0L / 5760.0L + ti2 * (31.0L / 80640.0L + ti2 * (127.0L / 430080.0L))));
  }
  std::complex<long double> lg = log_gamma({0.25L, 0.5L * t});
  return lg.imag() - 0.5L * t * std::log(pi);
}

// Reduces a long double phase to [-pi, pi].
double reduce_phase(long double x) {
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  long double r = std::remainder(x, two_pi);
  return static_cast<double>(r);
}

// m-th derivative of Psi at p from its Taylor series about 1/2.
double psi_derivative(int m, double p) {
  double x = p - 0.5;
  double acc = 0.0;
  for (int n = static_cast<int>(kPsiTaylor.size()) - 1; n >= m; --n) {
    double falling = 1.0;
    for (int j = 0; j < m; ++j) falling *= static_cast<double>(n - j);
    acc = acc * x + kPsiTaylor[n] * falling;
  }
  return acc;
}

ZetaValue riemann_siegel(double t) {
  const long double pi = std::numbers::pi_v<long double>;
  long double a = std::sqrt(static_cast<long double>(t) / (2.0L * pi));
  auto N = static_cast<long>(std::floor(a));
  double p = static_cast<double>(a - static_cast<long double>(N));
  long double th = theta_ld(t);
  long double sum = 0.0L;
  for (long n = 1; n <= N; ++n) {
    long double ln = std::log(static_cast<long double>(n));
    double ph = reduce_phase(th - static_cast<long double>(t) * ln);
    sum += std::cos(static_cast<long double>(ph)) / std::sqrt(static_cast<long double>(n));
  }
  sum *= 2.0L;
  double pi_d = std::numbers::pi;
  double pi2 = pi_d * pi_d, pi4 = pi2 * pi2, pi6 = pi4 * pi2, pi8 = pi4 * pi4;
  std::array<double, 13> d{};
  for (int m = 0; m <= 12; ++m) d[m] = psi_derivative(m, p);
  double c0 = d[0];
  double c1 = -d[3] / (96.0 * pi2);
  double c2 = d[2] / (64.0 * pi2) + d[6] / (18432.0 * pi4);
  double c3 = -d[1] / (64.0 * pi2) - d[5] / (3840.0 * pi4) - d[9] / (5308416.0 * pi6);
  double c4 = d[0] / (128.0 * pi2) + 19.0 * d[4] / (24576.0 * pi4) + 11.0 * d[8] / (5898240.0 * pi6) +
              d[12] / (2038431744.0 * pi8);
  double r = std::sqrt(2.0 * pi_d / t);  // (2 pi / t)^{1/2}
  double corr = c0 + r * (c1 + r * (c2 + r * (c3 + r * c4)));
  double sign = (N % 2 == 1) ? 1.0 : -1.0;  // (-1)^{N-1}
  double z = static_cast<double>(sum) + sign * std::sqrt(r) * corr;
  ZetaValue v;
  v.t = t;
  v.hardy_z = z;
  v.magnitude = std::fabs(z);
  v.value = std::polar(z, -reduce_phase(th));
  v.method = ZetaMethod::riemann_siegel;
  // Remainder after four correction terms, plus rounding in the main sum.
  v.error_bound = 0.017 * std::pow(t, -2.75) + 1e-13 * (1.0 + std::sqrt(a));
  return v;
}

}  // namespace

std::string to_string(ZetaMethod m) {
  return m == ZetaMethod::euler_maclaurin ? "euler_maclaurin" : "riemann_siegel";
}

std::complex<double> zeta_euler_maclaurin(std::complex<double> s, int N, int M, double* error) {
  if (N < 1 || M < 1 || M >= kBernoulliTerms) throw ValidationError("Euler-Maclaurin truncation out of range");
  using cld = std::complex<long double>;
  cld sl(s.real(), s.imag());
  cld acc = 0.0L;
  for (int n = 1; n < N; ++n) {
    long double ln = std::log(static_cast<long double>(n));
    long double mag = std::exp(-sl.real() * ln);
    acc += std::polar(mag, static_cast<long double>(reduce_phase(-sl.imag() * ln)));
  }
  long double lN = std::log(static_cast<long double>(N));
  cld n_pow_s = std::polar(std::exp(-sl.real() * lN), static_cast<long double>(reduce_phase(-sl.imag() * lN)));
  long double Nl = N;
  acc += n_pow_s * Nl / (sl - 1.0L);
  acc += 0.5L * n_pow_s;
  const auto& b = bernoulli_over_factorial();
  // term_j = B_2j/(2j)! * s (s+1) ... (s+2j-2) * N^{-s-2j+1}
  cld rising = sl;
  cld npow = n_pow_s / Nl;
  cld term;
  for (int j = 1; j <= M; ++j) {
    term = b[j] * rising * npow;
    acc += term;
    rising *= (sl + (2.0L * j - 1.0L)) * (sl + 2.0L * j);
    npow /= Nl * Nl;
  }
  if (error != nullptr) {
    cld next = b[M + 1] * rising * npow;
    long double sigma = sl.real();
    *error = static_cast<double>(std::abs(next) * std::abs(sl + (2.0L * M + 1.0L)) / (sigma + 2.0L * M + 1.0L));
  }
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

double riemann_siegel_theta(double t) {
  long double at = std::fabs(static_cast<long double>(t));
  long double th = at == 0.0L ? 0.0L : theta_ld(at);
  return static_cast<double>(t < 0 ? -th : th);
}

ZetaValue zeta_half_line(double t) {
  if (!std::isfinite(t) || std::fabs(t) > kMaxT) {
    throw DomainError("zeta_half_line: |t| must not exceed 1e6");
  }
  double at = std::fabs(t);
  ZetaValue v;
  if (at < kSwitch) {
    int N = 32 + static_cast<int>(std::ceil(at / 4.0));
    double err = 0.0;
    std::complex<double> z = zeta_euler_maclaurin({0.5, at}, N, 24, &err);
    double th = riemann_siegel_theta(at);
    v.t = at;
    v.value = z;
    v.magnitude = std::abs(z);
    v.hardy_z = (std::polar(1.0, th) * z).real();
    v.method = ZetaMethod::euler_maclaurin;
    v.error_bound = err + 1e-14 * N;
  } else {
    v = riemann_siegel(at);
  }
  if (t < 0) {
    v.t = t;
    v.value = std::conj(v.value);
  }
  return v;
}

}  // namespace terndio
