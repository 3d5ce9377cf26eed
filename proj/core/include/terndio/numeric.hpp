#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace terndio {

using i128 = __int128;
using u128 = unsigned __int128;

/// x^k in exact 128-bit arithmetic. Throws RangeError on overflow.
i128 ipow_checked(i128 x, int k);

/// x^k, or false if the result leaves the signed 128-bit range.
bool ipow_try(i128 x, int k, i128& out);

double i128_to_double(i128 v);

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  double value() const { return hi + lo; }
};

inline DoubleDouble two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DoubleDouble two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

/// Exact split of a 128-bit integer into a double-double.
DoubleDouble to_double_double(i128 v);

DoubleDouble dd_add(DoubleDouble a, DoubleDouble b);
DoubleDouble dd_neg(DoubleDouble a);
/// Product of a double with a double-double; one rounding on the leading term.
DoubleDouble dd_mul(double a, DoubleDouble b);

/// Neumaier compensated accumulator.
class NeumaierSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  void add(const NeumaierSum& other) {
    add(other.sum_);
    add(other.comp_);
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class ComplexNeumaierSum {
 public:
  void add(std::complex<double> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  void add(const ComplexNeumaierSum& other) {
    re_.add(other.re_);
    im_.add(other.im_);
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  NeumaierSum re_;
  NeumaierSum im_;
};

/// Distance to the nearest integer. Ties resolve to exactly 0.5.
inline double dist_to_nearest_int(double x) { return std::fabs(x - std::nearbyint(x)); }

/// Real positive k-th root of x >= 0.
double kth_root(double x, int k);

/// floor(y^(1/k)) for y >= 0, exact.
std::int64_t iroot_floor(i128 y, int k);

}  // namespace terndio
