#include "terndio/forms.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "terndio/errors.hpp"
#include "terndio/numeric.hpp"
#include "terndio/parallel.hpp"

namespace terndio {

namespace {

struct Best {
  double value = INFINITY;
  Triple witness{};
  bool set = false;

  void offer(double v, const Triple& w) {
    if (!set || v < value || (v == value && w < witness)) {
      value = v;
      witness = w;
      set = true;
    }
  }
  void merge(const Best& o) {
    if (o.set) offer(o.value, o.witness);
  }
};

// f = p1 - q2 - q3 with every term a double-double. Used by every evaluation
// path so the brute and fast searches see bitwise identical values.
inline double combine(const DoubleDouble& p1, const DoubleDouble& q2, const DoubleDouble& q3) {
  return dd_add(dd_add(p1, dd_neg(q2)), dd_neg(q3)).value();
}

struct AxisPowers {
  std::int64_t lo = 0;
  std::vector<DoubleDouble> v;
  const DoubleDouble& at(std::int64_t x) const { return v[static_cast<std::size_t>(x - lo)]; }
};

AxisPowers axis_powers(std::int64_t lo, std::int64_t hi, int k, double coeff) {
  AxisPowers a;
  a.lo = lo;
  a.v.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t x = lo; x <= hi; ++x) {
    DoubleDouble p = to_double_double(ipow_checked(x, k));
    a.v.push_back(coeff == 1.0 ? p : dd_mul(coeff, p));
  }
  return a;
}

}  // namespace

void FormParams::validate() const {
  if (k < 2) throw ValidationError("degree k must be at least 2");
  if (!(alpha2 > 0.0) || !std::isfinite(alpha2)) throw ValidationError("alpha2 must be positive");
  if (!(alpha3 > 0.0) || !std::isfinite(alpha3)) throw ValidationError("alpha3 must be positive");
}

void BoxRegion::validate() const {
  for (int i = 0; i < 3; ++i) {
    if (lo[i] < 1 || hi[i] < lo[i]) throw ValidationError("box needs 1 <= L_i <= U_i");
  }
}

double BoxRegion::volume() const {
  double v = 1.0;
  for (int i = 0; i < 3; ++i) v *= static_cast<double>(hi[i] - lo[i] + 1);
  return v;
}

BoxRegion BoxRegion::cube(std::int64_t l, std::int64_t u) {
  BoxRegion b;
  b.lo = {l, l, l};
  b.hi = {u, u, u};
  return b;
}

BoxRegion BoxRegion::from_support(const SupportParams& s, double P) {
  if (!(P > 0.0)) throw ValidationError("P must be positive");
  BoxRegion b;
  const double a[3] = {s.a1, s.a2, s.a3};
  const double bb[3] = {s.b1, s.b2, s.b3};
  for (int i = 0; i < 3; ++i) {
    b.lo[i] = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(a[i] * P / 4.0)));
    b.hi[i] = static_cast<std::int64_t>(std::floor(bb[i] * P));
  }
  b.validate();
  return b;
}

std::string to_string(SearchMethod m) { return m == SearchMethod::brute ? "brute" : "fast"; }

double evaluate(const FormParams& params, const Triple& x) {
  params.validate();
  DoubleDouble p1 = to_double_double(ipow_checked(x[0], params.k));
  DoubleDouble q2 = dd_mul(params.alpha2, to_double_double(ipow_checked(x[1], params.k)));
  DoubleDouble q3 = dd_mul(params.alpha3, to_double_double(ipow_checked(x[2], params.k)));
  return combine(p1, q2, q3);
}

SearchReport min_search_brute(const FormParams& params, const BoxRegion& box,
                              const SearchOptions& opts) {
  params.validate();
  box.validate();
  double vol = box.volume();
  if (vol > opts.budget) throw BudgetExceeded("brute-force search refused", vol, opts.budget);
  AxisPowers p1 = axis_powers(box.lo[0], box.hi[0], params.k, 1.0);
  AxisPowers q2 = axis_powers(box.lo[1], box.hi[1], params.k, params.alpha2);
  AxisPowers q3 = axis_powers(box.lo[2], box.hi[2], params.k, params.alpha3);
  auto n1 = static_cast<std::size_t>(box.hi[0] - box.lo[0] + 1);
  std::vector<Best> slabs(n1);
  parallel_for(n1, opts.workers, [&](std::size_t i) {
    std::int64_t x1 = box.lo[0] + static_cast<std::int64_t>(i);
    Best b;
    for (std::int64_t x2 = box.lo[1]; x2 <= box.hi[1]; ++x2) {
      for (std::int64_t x3 = box.lo[2]; x3 <= box.hi[2]; ++x3) {
        b.offer(std::fabs(combine(p1.at(x1), q2.at(x2), q3.at(x3))), {x1, x2, x3});
      }
    }
    slabs[i] = b;
  });
  Best best;
  for (const auto& s : slabs) best.merge(s);
  SearchReport r;
  r.min_abs = best.value;
  r.witness = best.witness;
  r.evaluations = static_cast<std::uint64_t>(vol);
  r.method = SearchMethod::brute;
  return r;
}

SearchReport min_search_fast(const FormParams& params, const BoxRegion& box,
                             const SearchOptions& opts) {
  params.validate();
  box.validate();
  double pairs = static_cast<double>(box.hi[1] - box.lo[1] + 1) *
                 static_cast<double>(box.hi[2] - box.lo[2] + 1);
  if (4.0 * pairs > opts.budget) throw BudgetExceeded("fast search refused", 4.0 * pairs, opts.budget);
  AxisPowers p1 = axis_powers(box.lo[0], box.hi[0], params.k, 1.0);
  AxisPowers q2 = axis_powers(box.lo[1], box.hi[1], params.k, params.alpha2);
  AxisPowers q3 = axis_powers(box.lo[2], box.hi[2], params.k, params.alpha3);
  auto n2 = static_cast<std::size_t>(box.hi[1] - box.lo[1] + 1);
  std::vector<Best> slabs(n2);
  std::vector<std::uint64_t> evals(n2, 0);
  parallel_for(n2, opts.workers, [&](std::size_t i) {
    std::int64_t x2 = box.lo[1] + static_cast<std::int64_t>(i);
    Best b;
    std::uint64_t count = 0;
    for (std::int64_t x3 = box.lo[2]; x3 <= box.hi[2]; ++x3) {
      double t = q2.at(x2).value() + q3.at(x3).value();
      double r = kth_root(t, params.k);
      auto fl = static_cast<std::int64_t>(std::floor(r));
      auto cl = static_cast<std::int64_t>(std::ceil(r));
      std::int64_t cand[4] = {fl - 1, fl, cl, cl + 1};
      std::int64_t prev = INT64_MIN;
      for (std::int64_t c : cand) {
        std::int64_t x1 = std::clamp(c, box.lo[0], box.hi[0]);
        if (x1 == prev) continue;
        prev = x1;
        ++count;
        b.offer(std::fabs(combine(p1.at(x1), q2.at(x2), q3.at(x3))), {x1, x2, x3});
      }
    }
    slabs[i] = b;
    evals[i] = count;
  });
  Best best;
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n2; ++i) {
    best.merge(slabs[i]);
    total += evals[i];
  }
  SearchReport r;
  r.min_abs = best.value;
  r.witness = best.witness;
  r.evaluations = total;
  r.method = SearchMethod::fast;
  return r;
}

double weighted_count(const FormParams& params, const BumpFamily& weights, double P, double theta) {
  params.validate();
  if (!(theta > 0.0)) return 0.0;
  BoxRegion box = BoxRegion::from_support(weights.support(), P);
  const int k = params.k;
  std::vector<double> w1(static_cast<std::size_t>(box.hi[0] - box.lo[0] + 1));
  for (std::int64_t x = box.lo[0]; x <= box.hi[0]; ++x) {
    w1[static_cast<std::size_t>(x - box.lo[0])] = weights.eval(1, static_cast<double>(x) / P);
  }
  NeumaierSum acc;
  for (std::int64_t x2 = box.lo[1]; x2 <= box.hi[1]; ++x2) {
    double w2 = weights.eval(2, static_cast<double>(x2) / P);
    if (w2 == 0.0) continue;
    for (std::int64_t x3 = box.lo[2]; x3 <= box.hi[2]; ++x3) {
      double w3 = weights.eval(3, static_cast<double>(x3) / P);
      if (w3 == 0.0) continue;
      double t = params.alpha2 * std::pow(static_cast<double>(x2), k) +
                 params.alpha3 * std::pow(static_cast<double>(x3), k);
      // Candidate x1 range from the real roots, widened by one on each side and
      // then filtered with the exact predicate.
      double lo_r = t - theta > 0 ? kth_root(t - theta, k) : 0.0;
      double hi_r = kth_root(t + theta, k);
      std::int64_t lo = std::max<std::int64_t>(box.lo[0], static_cast<std::int64_t>(std::floor(lo_r)) - 1);
      std::int64_t hi = std::min<std::int64_t>(box.hi[0], static_cast<std::int64_t>(std::ceil(hi_r)) + 1);
      for (std::int64_t x1 = lo; x1 <= hi; ++x1) {
        double w = w1[static_cast<std::size_t>(x1 - box.lo[0])];
        if (w == 0.0) continue;
        if (std::fabs(evaluate(params, {x1, x2, x3})) < theta) acc.add(w * w2 * w3);
      }
    }
  }
  return acc.value();
}

double log_gap(const FormParams& params, const Triple& x) {
  params.validate();
  DoubleDouble p1 = to_double_double(ipow_checked(x[0], params.k));
  DoubleDouble q2 = dd_mul(params.alpha2, to_double_double(ipow_checked(x[1], params.k)));
  DoubleDouble q3 = dd_mul(params.alpha3, to_double_double(ipow_checked(x[2], params.k)));
  DoubleDouble first = dd_add(p1, dd_neg(q2));
  if (!(first.value() > 0.0)) {
    throw DomainError("log_gap: first factor x1^k - alpha2 x2^k is not positive");
  }
  double second = q3.value();
  if (!(second > 0.0)) throw DomainError("log_gap: second factor alpha3 x3^k is not positive");
  double f = dd_add(first, dd_neg(q3)).value();
  return std::fabs(std::log1p(f / second));
}

ReductionConstants reduction_constants(const SupportParams& s, int k) {
  // On the support alpha3 x3^k <= (b3 P)^k < (b1 P)^k, so with M = b1^k and
  // |delta| < c0 theta P^-k <= c0 one has |f| = alpha3 x3^k |e^delta - 1|
  // <= M c0 e^{c0} theta.
  ReductionConstants r;
  r.M = std::pow(std::max(s.b1, s.b3), k);
  r.c0 = 1.0 / (2.0 * r.M);
  r.C = r.c0 * std::exp(r.c0) * r.M;
  return r;
}

}  // namespace terndio
