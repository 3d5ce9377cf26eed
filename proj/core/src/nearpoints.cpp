#include "terndio/nearpoints.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "terndio/errors.hpp"
#include "terndio/numeric.hpp"
#include "terndio/parallel.hpp"

namespace terndio {

namespace {

void check_delta(double delta) {
  if (!(delta >= 0.0) || !(delta < 0.5)) throw ValidationError("delta must lie in [0, 1/2)");
}

// Braced factor magnitude z2^{k-2} z4^{k-2} (1 - a z4^k)(1 + a z2^k) + a^2 z2^{2k-2} z4^{2k-2}.
double braced(int k, double a, double z2, double z4, double one_minus) {
  return std::pow(z2, k - 2) * std::pow(z4, k - 2) * one_minus * (1.0 + a * std::pow(z2, k)) +
         a * a * std::pow(z2, 2 * k - 2) * std::pow(z4, 2 * k - 2);
}

}  // namespace

void MongeSurface::validate() const {
  if (k < 2) throw ValidationError("Monge surface needs k >= 2");
  if (!(alpha2 > 0.0)) throw ValidationError("alpha2 must be positive");
  if (!(lo2 >= 0.0 && lo2 < hi2 && lo4 >= 0.0 && lo4 < hi4)) {
    throw ValidationError("Monge domain must be a nonempty rectangle in the closed positive quadrant");
  }
}

MongeSurface MongeSurface::from_support(int k, double alpha2, const SupportParams& s) {
  MongeSurface m;
  m.k = k;
  m.alpha2 = alpha2;
  m.lo2 = m.lo4 = s.a2 / (4.0 * s.b1);
  m.hi2 = m.hi4 = 4.0 * s.b2 / s.a1;
  m.validate();
  return m;
}

double monge_f(const MongeSurface& s, double z2, double z4) {
  double r = 1.0 + s.alpha2 * std::pow(z2, s.k) - s.alpha2 * std::pow(z4, s.k);
  if (!(r > 0.0)) throw DomainError("monge_f: radicand 1 + alpha2 z2^k - alpha2 z4^k is not positive");
  return kth_root(r, s.k);
}

double hessian_det_closed(const MongeSurface& s, double z2, double z4) {
  const int k = s.k;
  const double a = s.alpha2;
  double brace = -std::pow(z2, k - 2) * std::pow(z4, k - 2) * (1.0 - a * std::pow(z4, k)) *
                     (1.0 + a * std::pow(z2, k)) -
                 a * a * std::pow(z2, 2 * k - 2) * std::pow(z4, 2 * k - 2);
  double r = 1.0 + a * std::pow(z2, k) - a * std::pow(z4, k);
  return (k - 1.0) * (k - 1.0) * a * a * std::pow(r, 2.0 / k - 4.0) * brace;
}

CurvatureCertificate certify_curvature(const MongeSurface& s, int grid_n) {
  s.validate();
  if (grid_n < 32) throw ValidationError("certify_curvature needs grid_n >= 32");
  CurvatureCertificate c;
  const int k = s.k;
  const double a = s.alpha2;
  const double pre = (k - 1.0) * (k - 1.0) * a * a;
  const double e = 2.0 / k - 4.0;
  double c8 = INFINITY, c9 = 0.0;
  double h2 = (s.hi2 - s.lo2) / grid_n, h4 = (s.hi4 - s.lo4) / grid_n;
  for (int i = 0; i < grid_n; ++i) {
    double z2a = s.lo2 + i * h2, z2b = (i + 1 == grid_n) ? s.hi2 : s.lo2 + (i + 1) * h2;
    for (int j = 0; j < grid_n; ++j) {
      double z4a = s.lo4 + j * h4, z4b = (j + 1 == grid_n) ? s.hi4 : s.lo4 + (j + 1) * h4;
      double om_lo = 1.0 - a * std::pow(z4b, k);
      double om_hi = 1.0 - a * std::pow(z4a, k);
      double r_lo = 1.0 + a * std::pow(z2a, k) - a * std::pow(z4b, k);
      double r_hi = 1.0 + a * std::pow(z2b, k) - a * std::pow(z4a, k);
      if (!(om_lo > 0.0) || !(r_lo > 0.0)) {
        c.ok = false;
        c.failure = "1 - alpha2 z4^k or the radicand reaches zero on the domain";
        return c;
      }
      // Every factor is monotone in each variable on a cell of the positive quadrant.
      double lower = pre * std::pow(r_hi, e) * braced(k, a, z2a, z4a, om_lo);
      double upper = pre * std::pow(r_lo, e) * braced(k, a, z2b, z4b, om_hi);
      // Rounding guard for the enclosure.
      lower *= 1.0 - 1e-12;
      upper *= 1.0 + 1e-12;
      c8 = std::min(c8, lower);
      c9 = std::max(c9, upper);
    }
  }
  c.c8 = c8;
  c.c9 = c9;
  c.sign = -1;
  c.ok = c8 > 0.0;
  if (!c.ok) c.failure = "determinant lower bound is zero (domain touches a coordinate axis)";
  return c;
}

CountReport count_near_surface(const MongeSurface& surface, const BumpFamily& weights, int Q,
                               double delta, const CountOptions& opts) {
  surface.validate();
  check_delta(delta);
  if (Q < 1) throw ValidationError("Q must be positive");
  if (Q > opts.budget) throw BudgetExceeded("count_near_surface refused", Q, opts.budget);
  const BumpGeometry& g4 = weights.geometry(4);
  const double lo = std::max({g4.support_lo, surface.lo2, surface.lo4});
  const double hi = std::min({g4.support_hi, surface.hi2, surface.hi4});
  std::vector<double> sums(static_cast<std::size_t>(Q));
  std::vector<std::uint64_t> hits(static_cast<std::size_t>(Q));
  parallel_for(sums.size(), opts.workers, [&](std::size_t idx) {
    const auto q = static_cast<std::int64_t>(idx + 1);
    const double qd = static_cast<double>(q);
    auto a_lo = static_cast<std::int64_t>(std::ceil(lo * qd));
    auto a_hi = static_cast<std::int64_t>(std::floor(hi * qd));
    NeumaierSum acc;
    std::uint64_t h = 0;
    if (a_lo <= a_hi && delta > 0.0) {
      std::vector<double> w;
      for (std::int64_t a = a_lo; a <= a_hi; ++a) w.push_back(weights.eval(4, static_cast<double>(a) / qd));
      for (std::int64_t a2 = a_lo; a2 <= a_hi; ++a2) {
        double w2 = w[static_cast<std::size_t>(a2 - a_lo)];
        if (w2 == 0.0) continue;
        for (std::int64_t a4 = a_lo; a4 <= a_hi; ++a4) {
          double w4 = w[static_cast<std::size_t>(a4 - a_lo)];
          if (w4 == 0.0) continue;
          double v = qd * monge_f(surface, static_cast<double>(a2) / qd, static_cast<double>(a4) / qd);
          if (dist_to_nearest_int(v) < delta) {
            acc.add(w2 * w4);
            ++h;
          }
        }
      }
    }
    sums[idx] = acc.value();
    hits[idx] = h;
  });
  CountReport r;
  NeumaierSum total;
  for (std::size_t i = 0; i < sums.size(); ++i) {
    total.add(sums[i]);
    r.hits += hits[i];
  }
  r.count = total.value();
  double mass = g4.mass();
  r.main_term = 2.0 * mass * mass / 3.0 * delta * std::pow(static_cast<double>(Q), 3);
  r.ratio = r.main_term > 0.0 ? r.count / r.main_term : 0.0;
  r.mode = "surface";
  r.scale = Q;
  r.window = delta;
  return r;
}

CountReport count_near_curve(const FormParams& params, int P, double delta, const CountOptions& opts) {
  params.validate();
  check_delta(delta);
  if (P < 1) throw ValidationError("P must be positive");
  if (P > opts.budget) throw BudgetExceeded("count_near_curve refused", P, opts.budget);
  const int k = params.k;
  // Arc A: y3 = g(y2) with (cy, cx) = (alpha3, alpha2); arc B swaps the roles.
  struct Arc {
    double c_param, c_graph, lo, hi;
  };
  const double a2 = params.alpha2, a3 = params.alpha3;
  double rho = std::pow(a2 / a3, 1.0 / (k - 1));  // y3 = rho y2 at the crossover
  double y2c = std::pow(a2 + a3 * std::pow(rho, k), -1.0 / k);
  double y3c = rho * y2c;
  const Arc arcs[2] = {{a2, a3, 0.25 * y2c, y2c}, {a3, a2, 0.25 * y3c, y3c}};
  for (const Arc& arc : arcs) {
    // g(y) = ((1 - c_param y^k) / c_graph)^{1/k}; both terms of g'' are negative for y > 0.
    for (int i = 0; i <= 1024; ++i) {
      double y = arc.lo + (arc.hi - arc.lo) * i / 1024.0;
      double A = (1.0 - arc.c_param * std::pow(y, k)) / arc.c_graph;
      double A1 = -k * arc.c_param * std::pow(y, k - 1) / arc.c_graph;
      double A2 = -k * (k - 1.0) * arc.c_param * std::pow(y, k - 2) / arc.c_graph;
      double g2 = (1.0 / k) * ((1.0 / k - 1.0) * std::pow(A, 1.0 / k - 2.0) * A1 * A1 +
                               std::pow(A, 1.0 / k - 1.0) * A2);
      if (!(A > 0.0) || !(g2 < 0.0) || !std::isfinite(g2)) {
        throw DomainError("count_near_curve: arc curvature certification failed");
      }
    }
  }
  std::vector<std::uint64_t> hits(static_cast<std::size_t>(P));
  parallel_for(hits.size(), opts.workers, [&](std::size_t idx) {
    const double q = static_cast<double>(idx + 1);
    std::uint64_t h = 0;
    if (delta > 0.0) {
      for (const Arc& arc : arcs) {
        auto p_lo = static_cast<std::int64_t>(std::ceil(arc.lo * q));
        auto p_hi = static_cast<std::int64_t>(std::ceil(arc.hi * q)) - 1;  // half-open [lo, hi)
        for (std::int64_t p = p_lo; p <= p_hi; ++p) {
          double y = static_cast<double>(p) / q;
          double A = (1.0 - arc.c_param * std::pow(y, k)) / arc.c_graph;
          if (!(A > 0.0)) continue;
          if (dist_to_nearest_int(q * kth_root(A, k)) < delta) ++h;
        }
      }
    }
    hits[idx] = h;
  });
  CountReport r;
  for (auto h : hits) r.hits += h;
  r.count = static_cast<double>(r.hits);
  r.main_term = delta * static_cast<double>(P) * static_cast<double>(P);
  r.ratio = r.main_term > 0.0 ? r.count / r.main_term : 0.0;
  r.mode = "curve";
  r.scale = P;
  r.window = delta;
  return r;
}

I4Constants i4_constants(const SupportParams& s, double alpha2, int k) {
  I4Constants c;
  // |log a - log b| < 1/U with U >= 1 gives |a - b| < b (e - 1)/U and b <= (b1 P)^k.
  c.c6 = (std::numbers::e - 1.0) * std::pow(s.b1, k);
  double rmin = std::pow(std::pow(s.a1 / 4.0, k) - alpha2 * std::pow(s.b2, k), 1.0 / k);
  c.c7 = c.c6 / (k * std::pow(rmin, k - 1));
  c.c5 = 8.0 * c.c7;
  return c;
}

double i4_log_phi(int k, double alpha2, std::int64_t y1, std::int64_t y2) {
  DoubleDouble p1 = to_double_double(ipow_checked(y1, k));
  DoubleDouble q2 = dd_mul(alpha2, to_double_double(ipow_checked(y2, k)));
  DoubleDouble phi = dd_add(p1, dd_neg(q2));
  if (!(phi.value() > 0.0)) throw DomainError("y1^k - alpha2 y2^k is not positive");
  return std::log(phi.hi) + std::log1p(phi.lo / phi.hi);
}

bool i4_indicator(int k, double alpha2, std::int64_t y1, std::int64_t y2, std::int64_t y3,
                  std::int64_t y4, double U) {
  return std::fabs(i4_log_phi(k, alpha2, y1, y2) - i4_log_phi(k, alpha2, y3, y4)) < 1.0 / U;
}

I4Result i4_count(const ExpSumContext& ctx, double U, const CountOptions& opts) {
  if (!(U >= 0.1)) throw ValidationError("i4_count needs U >= 0.1");
  const int k = ctx.params().k;
  const double a2 = ctx.params().alpha2;
  const double P = ctx.P();
  const BumpFamily& wf = ctx.weights();
  BoxRegion box = BoxRegion::from_support(ctx.support(), P);
  const std::int64_t L1 = box.lo[0], U1 = box.hi[0];
  const auto n1 = static_cast<std::size_t>(U1 - L1 + 1);
  std::vector<double> w1(n1);
  std::vector<double> prefix_w(n1 + 1, 0.0);
  std::vector<std::uint64_t> prefix_n(n1 + 1, 0);
  for (std::size_t i = 0; i < n1; ++i) {
    w1[i] = wf.eval(1, static_cast<double>(L1 + static_cast<std::int64_t>(i)) / P);
  }
  // Compensated prefix sums so window sums keep full precision.
  {
    NeumaierSum acc;
    for (std::size_t i = 0; i < n1; ++i) {
      acc.add(w1[i]);
      prefix_w[i + 1] = acc.value();
      prefix_n[i + 1] = prefix_n[i] + (w1[i] != 0.0 ? 1 : 0);
    }
  }
  std::vector<std::int64_t> y2s;
  std::vector<double> w2;
  for (std::int64_t y = box.lo[1]; y <= box.hi[1]; ++y) {
    double w = wf.eval(2, static_cast<double>(y) / P);
    if (w == 0.0) continue;
    y2s.push_back(y);
    w2.push_back(w);
  }
  const double inv = 1.0 / U;
  std::vector<double> slab_w(n1, 0.0);
  std::vector<std::uint64_t> slab_n(n1, 0);
  // Parallel over y3; each slot is reduced in index order afterwards.
  parallel_for(n1, opts.workers, [&](std::size_t i3) {
    double w3 = w1[i3];
    if (w3 == 0.0) return;
    const std::int64_t y3 = L1 + static_cast<std::int64_t>(i3);
    NeumaierSum acc;
    std::uint64_t hits = 0;
    for (std::size_t j4 = 0; j4 < y2s.size(); ++j4) {
      const double L = i4_log_phi(k, a2, y3, y2s[j4]);
      for (std::size_t j2 = 0; j2 < y2s.size(); ++j2) {
        const std::int64_t y2 = y2s[j2];
        auto pred = [&](std::int64_t y1) { return std::fabs(i4_log_phi(k, a2, y1, y2) - L) < inv; };
        auto below = [&](std::int64_t y1) { return i4_log_phi(k, a2, y1, y2) < L; };
        double base = a2 * std::pow(static_cast<double>(y2), k);
        double lo_r = kth_root(base + std::exp(L - inv), k);
        double hi_r = kth_root(base + std::exp(L + inv), k);
        std::int64_t lo = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(lo_r)), L1, U1 + 1);
        while (lo > L1 && pred(lo - 1)) --lo;
        while (lo <= U1 && !pred(lo) && below(lo)) ++lo;
        std::int64_t hi = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::ceil(hi_r)), L1 - 1, U1);
        while (hi < U1 && pred(hi + 1)) ++hi;
        while (hi >= L1 && !pred(hi) && !below(hi)) --hi;
        if (lo > hi) continue;
        auto a = static_cast<std::size_t>(lo - L1);
        auto b = static_cast<std::size_t>(hi - L1 + 1);
        double ws = prefix_w[b] - prefix_w[a];
        std::uint64_t ns = prefix_n[b] - prefix_n[a];
        if (ns == 0) continue;
        acc.add(ws * w2[j2] * w3 * w2[j4]);
        hits += ns;
      }
    }
    slab_w[i3] = acc.value();
    slab_n[i3] = hits;
  });
  I4Result r;
  NeumaierSum total;
  for (std::size_t i = 0; i < n1; ++i) {
    total.add(slab_w[i]);
    r.hits += slab_n[i];
  }
  r.weight_sum = total.value();
  r.value = U * r.weight_sum;
  return r;
}

std::uint64_t r_count(int P, int k, double U, RMode mode, const CountOptions& opts) {
  (void)opts;
  if (P < 1 || k < 1) throw ValidationError("r_count needs P >= 1 and k >= 1");
  if (mode == RMode::quartic && P > 128) throw BudgetExceeded("quartic r_count refused", P, 128);
  if (mode == RMode::product_pair && P > 4096) throw BudgetExceeded("product-pair r_count refused", P, 4096);
  if (U < 0.0) return 0;
  const bool unbounded = !(U < 1.0e38);
  const i128 Ui = unbounded ? 0 : static_cast<i128>(std::floor(U));
  const std::int64_t lo = P, hi = 2 * static_cast<std::int64_t>(P) - 1;
  const std::int64_t zmax = hi * hi;
  auto within = [&](i128 a, i128 b) {
    if (unbounded) return true;
    i128 d = a > b ? a - b : b - a;
    return d <= Ui;
  };
  if (mode == RMode::quartic) {
    std::vector<i128> zk(static_cast<std::size_t>(zmax + 1), 0);
    for (std::int64_t x = lo; x <= hi; ++x) {
      for (std::int64_t y = lo; y <= hi; ++y) zk[static_cast<std::size_t>(x * y)] = ipow_checked(x * y, k);
    }
    std::uint64_t count = 0;
    for (std::int64_t x1 = lo; x1 <= hi; ++x1) {
      for (std::int64_t x4 = lo; x4 <= hi; ++x4) {
        i128 a = zk[static_cast<std::size_t>(x4 * x1)];
        for (std::int64_t x2 = lo; x2 <= hi; ++x2) {
          for (std::int64_t x3 = lo; x3 <= hi; ++x3) {
            if (within(a, zk[static_cast<std::size_t>(x2 * x3)])) ++count;
          }
        }
      }
    }
    return count;
  }
  std::vector<std::int64_t> prods;
  prods.reserve(static_cast<std::size_t>(P) * static_cast<std::size_t>(P));
  for (std::int64_t x = lo; x <= hi; ++x) {
    for (std::int64_t y = lo; y <= hi; ++y) prods.push_back(x * y);
  }
  std::sort(prods.begin(), prods.end());
  std::vector<i128> zk;
  std::vector<std::uint64_t> mult;
  for (std::size_t i = 0; i < prods.size();) {
    std::size_t j = i;
    while (j < prods.size() && prods[j] == prods[i]) ++j;
    zk.push_back(ipow_checked(prods[i], k));
    mult.push_back(j - i);
    i = j;
  }
  const std::size_t n = zk.size();
  std::vector<std::uint64_t> prefix(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + mult[i];
  std::uint64_t count = 0;
  std::size_t a = 0, b = 0;  // window [a, b) of z2 with |z1^k - z2^k| <= U
  for (std::size_t i = 0; i < n; ++i) {
    while (a < n && zk[a] < zk[i] && !within(zk[i], zk[a])) ++a;
    if (b < i) b = i;
    while (b < n && within(zk[i], zk[b])) ++b;
    count += mult[i] * (prefix[b] - prefix[a]);
  }
  return count;
}

}  // namespace terndio
