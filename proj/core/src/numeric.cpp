#include "terndio/numeric.hpp"

#include <limits>
#include <string>

#include "terndio/errors.hpp"

namespace terndio {

bool ipow_try(i128 x, int k, i128& out) {
  i128 r = 1;
  for (int i = 0; i < k; ++i) {
    if (__builtin_mul_overflow(r, x, &r)) return false;
  }
  out = r;
  return true;
}

i128 ipow_checked(i128 x, int k) {
  i128 r;
  if (k < 0 || !ipow_try(x, k, r)) {
    throw RangeError("integer power x^" + std::to_string(k) + " exceeds 128-bit range");
  }
  return r;
}

double i128_to_double(i128 v) {
  // Split so the conversion is correctly rounded to within one ulp.
  bool neg = v < 0;
  u128 u = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
  double hi = static_cast<double>(static_cast<std::uint64_t>(u >> 64)) * 18446744073709551616.0;
  double d = hi + static_cast<double>(static_cast<std::uint64_t>(u));
  return neg ? -d : d;
}

DoubleDouble to_double_double(i128 v) {
  double hi = i128_to_double(v);
  // hi is an integer value; the remainder is exactly representable as i128.
  i128 hi_int = static_cast<i128>(hi);
  double lo = i128_to_double(v - hi_int);
  DoubleDouble r = two_sum(hi, lo);
  return r;
}

DoubleDouble dd_add(DoubleDouble a, DoubleDouble b) {
  DoubleDouble s = two_sum(a.hi, b.hi);
  double lo = s.lo + a.lo + b.lo;
  return two_sum(s.hi, lo);
}

DoubleDouble dd_neg(DoubleDouble a) { return {-a.hi, -a.lo}; }

DoubleDouble dd_mul(double a, DoubleDouble b) {
  DoubleDouble p = two_prod(a, b.hi);
  double lo = p.lo + a * b.lo;
  return two_sum(p.hi, lo);
}

double kth_root(double x, int k) {
  if (x < 0.0) throw DomainError("kth_root of negative value");
  if (x == 0.0) return 0.0;
  if (k == 1) return x;
  if (k == 2) return std::sqrt(x);
  if (k == 3) return std::cbrt(x);
  double r = std::pow(x, 1.0 / k);
  // One Newton step recovers the last bits lost by pow(x, 1/k).
  double rk1 = std::pow(r, k - 1);
  return r - (r * rk1 - x) / (k * rk1);
}

std::int64_t iroot_floor(i128 y, int k) {
  if (y < 0) throw DomainError("iroot_floor of negative value");
  if (y == 0) return 0;
  auto r = static_cast<std::int64_t>(kth_root(i128_to_double(y), k));
  auto le = [&](std::int64_t c) {
    i128 p;
    return ipow_try(c, k, p) && p <= y;
  };
  while (r > 0 && !le(r)) --r;
  while (le(r + 1)) ++r;
  return r;
}

}  // namespace terndio
