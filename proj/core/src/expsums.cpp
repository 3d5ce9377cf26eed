#include "terndio/expsums.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "terndio/errors.hpp"
#include "terndio/numeric.hpp"
#include "terndio/parallel.hpp"
#include "terndio/quadrature.hpp"

namespace terndio {

namespace {

constexpr std::size_t kTermBlock = 1024;
constexpr std::size_t kNodeBlock = 256;

// Sum over terms of w * (zr, zi) in fixed blocks.
std::complex<double> block_sum(const std::vector<double>& w, const std::vector<double>& zr,
                               const std::vector<double>& zi) {
  ComplexNeumaierSum acc;
  const std::size_t n = w.size();
  for (std::size_t b = 0; b < n; b += kTermBlock) {
    std::size_t e = std::min(n, b + kTermBlock);
    double sr = 0.0, si = 0.0;
    for (std::size_t j = b; j < e; ++j) {
      sr += w[j] * zr[j];
      si += w[j] * zi[j];
    }
    acc.add({sr, si});
  }
  return acc.value();
}

std::vector<std::complex<double>> phase_grid(const std::vector<double>& w,
                                             const std::vector<double>& phi, double t0, double h,
                                             std::size_t n, unsigned workers) {
  std::vector<std::complex<double>> out(n);
  const std::size_t m = w.size();
  std::vector<double> rr(m), ri(m);
  for (std::size_t j = 0; j < m; ++j) {
    rr[j] = std::cos(h * phi[j]);
    ri[j] = std::sin(h * phi[j]);
  }
  std::size_t blocks = (n + kNodeBlock - 1) / kNodeBlock;
  parallel_for(blocks, workers, [&](std::size_t b) {
    std::size_t start = b * kNodeBlock;
    std::size_t end = std::min(n, start + kNodeBlock);
    std::vector<double> zr(m), zi(m);
    double ts = t0 + static_cast<double>(start) * h;
    for (std::size_t j = 0; j < m; ++j) {
      zr[j] = std::cos(ts * phi[j]);
      zi[j] = std::sin(ts * phi[j]);
    }
    for (std::size_t node = start; node < end; ++node) {
      out[node] = block_sum(w, zr, zi);
      for (std::size_t j = 0; j < m; ++j) {
        double a = zr[j] * rr[j] - zi[j] * ri[j];
        double c = zr[j] * ri[j] + zi[j] * rr[j];
        zr[j] = a;
        zi[j] = c;
      }
    }
  });
  return out;
}

double spacing_of(const ExpSumContext& ctx, const QuadratureOptions& opts) {
  double h = opts.spacing > 0.0 ? opts.spacing : ctx.max_spacing();
  return std::min(h, ctx.max_spacing());
}

double log_phi(double x1k, double alpha2, double x2k) { return std::log(x1k - alpha2 * x2k); }

}  // namespace

ExpSumContext::ExpSumContext(double P, const FormParams& params, const SupportParams& support)
    : P_(P), params_(params), support_(support), weights_(support) {
  params_.validate();
  if (!(P >= 8.0)) throw ValidationError("exponential sums need P >= 8");
  if (!verify_support(support, params.alpha2, params.k).ok) {
    throw ValidationError("support constants violate the support inequalities for this alpha2");
  }
  BoxRegion box = BoxRegion::from_support(support, P);
  const int k = params.k;
  NeumaierSum m1;
  for (std::int64_t x1 = box.lo[0]; x1 <= box.hi[0]; ++x1) {
    double w1 = weights_.eval(1, static_cast<double>(x1) / P);
    if (w1 == 0.0) continue;
    DoubleDouble p1 = to_double_double(ipow_checked(x1, k));
    for (std::int64_t x2 = box.lo[1]; x2 <= box.hi[1]; ++x2) {
      double w2 = weights_.eval(2, static_cast<double>(x2) / P);
      if (w2 == 0.0) continue;
      DoubleDouble q2 = dd_mul(params.alpha2, to_double_double(ipow_checked(x2, k)));
      DoubleDouble phi = dd_add(p1, dd_neg(q2));
      if (!(phi.value() > 0.0)) {
        throw DomainError("x1^k - alpha2 x2^k is not positive on the weight support");
      }
      f1_w_.push_back(w1 * w2);
      f1_phi_.push_back(std::log(phi.hi) + std::log1p(phi.lo / phi.hi));
      f1_x1_.push_back(x1);
      f1_x2_.push_back(x2);
      m1.add(w1 * w2);
    }
  }
  f1_mass_ = m1.value();
  NeumaierSum m2;
  for (std::int64_t x3 = box.lo[2]; x3 <= box.hi[2]; ++x3) {
    double w3 = weights_.eval(3, static_cast<double>(x3) / P);
    if (w3 == 0.0) continue;
    f2_w_.push_back(w3);
    f2_phi_.push_back(std::log(static_cast<double>(x3)));
    m2.add(w3);
  }
  f2_mass_ = m2.value();
}

double ExpSumContext::max_spacing() const {
  return 0.25 / (params_.k * std::log(support_.b1 * P_));
}

double ExpSumContext::T_for(double theta) const {
  if (!(theta > 0.0)) throw ValidationError("theta must be positive");
  ReductionConstants rc = reduction_constants(support_, params_.k);
  return 2.0 * std::pow(P_, params_.k) / (rc.c0 * theta);
}

std::complex<double> weighted_phase_sum(const std::vector<double>& weights,
                                        const std::vector<double>& phases, double t) {
  ComplexNeumaierSum acc;
  const std::size_t n = weights.size();
  for (std::size_t b = 0; b < n; b += kTermBlock) {
    std::size_t e = std::min(n, b + kTermBlock);
    double sr = 0.0, si = 0.0;
    for (std::size_t j = b; j < e; ++j) {
      double a = t * phases[j];
      sr += weights[j] * std::cos(a);
      si += weights[j] * std::sin(a);
    }
    acc.add({sr, si});
  }
  return acc.value();
}

std::complex<double> f1(const ExpSumContext& ctx, double t) {
  return weighted_phase_sum(ctx.f1_weights(), ctx.f1_phases(), t);
}

std::complex<double> f2(const ExpSumContext& ctx, double t) {
  return weighted_phase_sum(ctx.f2_weights(), ctx.f2_phases(), t);
}

std::vector<std::complex<double>> f1_grid(const ExpSumContext& ctx, double t0, double h,
                                          std::size_t n, unsigned workers) {
  return phase_grid(ctx.f1_weights(), ctx.f1_phases(), t0, h, n, workers);
}

double mean_square_F1(const ExpSumContext& ctx, double T, const QuadratureOptions& opts) {
  if (!(T > 0.0)) throw ValidationError("mean_square_F1 needs T > 0");
  double h = spacing_of(ctx, opts);
  double m = std::floor(T / h);
  double nodes = m + 2.0;
  if (nodes > opts.node_budget) throw BudgetExceeded("mean_square_F1 refused", nodes, opts.node_budget);
  auto mi = static_cast<std::size_t>(m);
  auto vals = f1_grid(ctx, 0.0, h, mi + 2, opts.workers);
  NeumaierSum acc;
  for (std::size_t j = 0; j < mi; ++j) {
    acc.add(0.5 * h * (std::norm(vals[j]) + std::norm(vals[j + 1])));
  }
  double d = T - m * h;
  double gm = std::norm(vals[mi]);
  double gn = std::norm(vals[mi + 1]);
  acc.add(d * gm + (gn - gm) * d * d / (2.0 * h));
  return 2.0 * acc.value();
}

std::complex<double> expint_En(int n, std::complex<double> z) {
  if (n < 1) throw ValidationError("expint_En needs n >= 1");
  constexpr double kEuler = 0.57721566490153286061;
  constexpr double kEps = 1e-16;
  const int nm1 = n - 1;
  if (z == 0.0) {
    if (nm1 == 0) throw DomainError("E_1(0) diverges");
    return 1.0 / nm1;
  }
  if (std::abs(z) > 1.0) {
    // Modified Lentz evaluation of the continued fraction.
    std::complex<double> b = z + static_cast<double>(n);
    std::complex<double> c = 1e300;
    std::complex<double> d = 1.0 / b;
    std::complex<double> h = d;
    for (int i = 1; i < 100000; ++i) {
      double an = -static_cast<double>(i) * (nm1 + i);
      b += 2.0;
      d = 1.0 / (an * d + b);
      c = b + an / c;
      std::complex<double> del = c * d;
      h *= del;
      if (std::abs(del - 1.0) < kEps) break;
    }
    return h * std::exp(-z);
  }
  std::complex<double> ans = nm1 != 0 ? std::complex<double>(1.0 / nm1) : -std::log(z) - kEuler;
  std::complex<double> fact = 1.0;
  for (int i = 1; i < 1000; ++i) {
    fact *= -z / static_cast<double>(i);
    std::complex<double> del;
    if (i != nm1) {
      del = -fact / static_cast<double>(i - nm1);
    } else {
      double psi = -kEuler;
      for (int ii = 1; ii <= nm1; ++ii) psi += 1.0 / ii;
      del = fact * (-std::log(z) + psi);
    }
    ans += del;
    if (std::abs(del) < std::abs(ans) * kEps && i > nm1) break;
  }
  return ans;
}

std::complex<double> kernel_I(double T, double y) {
  if (!(T > 0.0)) throw ValidationError("kernel_I needs T > 0");
  double x = T * y;
  double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;
  double tail = expint_En(10, {0.0, -std::fabs(x)}).real();
  return {2.0 * T * sinc + 2.0 * T * tail, 0.0};
}

std::string to_string(I3Method m) { return m == I3Method::quadrature ? "quadrature" : "pairwise"; }

I3Result integral_I3(const ExpSumContext& ctx, double T, const QuadratureOptions& opts,
                     I3Method method) {
  if (!(T > 0.0)) throw ValidationError("integral_I3 needs T > 0");
  I3Result r;
  r.method = method;
  if (method == I3Method::pairwise) {
    const auto& w = ctx.f1_weights();
    const auto& phi = ctx.f1_phases();
    const std::size_t n = w.size();
    double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n);
    if (pairs > opts.node_budget) throw BudgetExceeded("pairwise I3 refused", pairs, opts.node_budget);
    std::vector<double> rows(n);
    const double diag = kernel_I(T, 0.0).real();
    parallel_for(n, opts.workers, [&](std::size_t i) {
      NeumaierSum acc;
      acc.add(w[i] * w[i] * diag);
      for (std::size_t j = i + 1; j < n; ++j) acc.add(2.0 * w[i] * w[j] * kernel_I(T, phi[i] - phi[j]).real());
      rows[i] = acc.value();
    });
    NeumaierSum total;
    for (double v : rows) total.add(v);
    r.quadrature = total.value();
    r.tail_bound = 0.0;
    r.value = r.quadrature;
    return r;
  }
  double hmax = spacing_of(ctx, opts);
  double L = 5.0 * T;
  double m = std::ceil(L / hmax);
  if (m + 1.0 > opts.node_budget) throw BudgetExceeded("integral_I3 refused", m + 1.0, opts.node_budget);
  auto mi = static_cast<std::size_t>(m);
  double h = L / m;
  auto vals = f1_grid(ctx, 0.0, h, mi + 1, opts.workers);
  NeumaierSum acc;
  for (std::size_t j = 0; j <= mi; ++j) {
    double t = static_cast<double>(j) * h;
    double kern = t <= T ? 1.0 : std::pow(T / t, 10);
    double wgt = (j == 0 || j == mi) ? 0.5 * h : h;
    acc.add(wgt * kern * std::norm(vals[j]));
  }
  r.quadrature = 2.0 * acc.value();
  double mass = ctx.f1_mass();
  r.tail_bound = 2.0 * mass * mass * T / (9.0 * std::pow(5.0, 9));
  r.value = r.quadrature + r.tail_bound;
  return r;
}

std::complex<double> partial_sum_S(const ExpSumContext& ctx, double X1, double X2, double t) {
  const SupportParams& s = ctx.support();
  const double P = ctx.P();
  const double lo1 = s.a1 * P / 4.0, lo2 = s.a2 * P / 4.0;
  const double tol = 1e-9 * P;
  if (X1 < lo1 - tol || X1 > s.b1 * P + tol || X2 < lo2 - tol || X2 > s.b2 * P + tol) {
    throw ValidationError("partial_sum_S: X1, X2 outside the summation ranges");
  }
  const int k = ctx.params().k;
  const double a2 = ctx.params().alpha2;
  auto x1s = static_cast<std::int64_t>(std::ceil(lo1));
  auto x2s = static_cast<std::int64_t>(std::ceil(lo2));
  std::vector<double> w, phi;
  for (std::int64_t x1 = x1s; static_cast<double>(x1) < X1; ++x1) {
    double p1 = std::pow(static_cast<double>(x1), k);
    for (std::int64_t x2 = x2s; static_cast<double>(x2) < X2; ++x2) {
      w.push_back(1.0);
      phi.push_back(log_phi(p1, a2, std::pow(static_cast<double>(x2), k)));
    }
  }
  return weighted_phase_sum(w, phi, t);
}

double f2_envelope(const ExpSumContext& ctx, double t) {
  if (std::fabs(t) > 1e6 - 1e2) throw DomainError("f2_envelope: |t| must not exceed 1e6 - 100");
  const GaussRule& g = gauss_legendre(8);
  NeumaierSum acc;
  auto panel = [&](double a, double b) {
    double c = 0.5 * (a + b), hw = 0.5 * (b - a);
    for (int q = 0; q < 8; ++q) {
      double y = c + hw * g.nodes[q];
      double z = zeta_half_line(y - t).magnitude;
      acc.add(hw * g.weights[q] * z / (1.0 + std::pow(std::fabs(y), 10)));
    }
  };
  for (double a = -50.0; a < -4.0; a += 1.0) panel(a, a + 1.0);
  for (int i = 0; i < 64; ++i) panel(-4.0 + 0.125 * i, -4.0 + 0.125 * (i + 1));
  for (double a = 4.0; a < 50.0; a += 1.0) panel(a, a + 1.0);
  // Tail |y| > 50 with |zeta(1/2 + iu)| <= 1.5 + 0.63 u^{1/6} log u (u >= 3) and
  // |t| + y + 3 <= (|t| + 3) y, giving a closed-form bound on both sides.
  const double beta = 10.0 - 1.0 / 6.0;
  const double A = std::fabs(t) + 3.0;
  const double Y = 50.0;
  double base = std::pow(Y, 1.0 - beta) / (beta - 1.0);
  double with_log = base * (std::log(Y) + 1.0 / (beta - 1.0));
  double zeta_part = 0.63 * std::pow(A, 1.0 / 6.0) * (std::log(A) * base + with_log);
  double const_part = 1.5 * std::pow(Y, -9.0) / 9.0;
  double tail = 2.0 * (zeta_part + const_part);
  return std::sqrt(ctx.P()) * (acc.value() + tail);
}

double alpha2_mean_square_F1(double P, int k, double t, const SupportParams& support,
                             const QuadratureOptions& opts) {
  if (t == 0.0) throw ValidationError("alpha2_mean_square_F1 needs t != 0");
  if (!verify_support(support, 1.0, k).ok) {
    throw ValidationError("support constants must hold for every alpha2 in [1/2, 1]");
  }
  BumpFamily fam(support);
  BoxRegion box = BoxRegion::from_support(support, P);
  std::vector<double> w, x1k, x2k;
  double ratio = 0.0;
  for (std::int64_t x1 = box.lo[0]; x1 <= box.hi[0]; ++x1) {
    double w1 = fam.eval(1, static_cast<double>(x1) / P);
    if (w1 == 0.0) continue;
    for (std::int64_t x2 = box.lo[1]; x2 <= box.hi[1]; ++x2) {
      double w2 = fam.eval(2, static_cast<double>(x2) / P);
      if (w2 == 0.0) continue;
      double a = std::pow(static_cast<double>(x1), k);
      double b = std::pow(static_cast<double>(x2), k);
      if (!(a - b > 0.0)) throw DomainError("x1^k - alpha2 x2^k not positive at alpha2 = 1");
      w.push_back(w1 * w2);
      x1k.push_back(a);
      x2k.push_back(b);
      ratio = std::max(ratio, b / (a - b));
    }
  }
  // Each panel sees at most about 4 radians of relative phase drift.
  int panels = std::max(4, static_cast<int>(std::ceil(0.5 * std::fabs(t) * ratio / 4.0)));
  const GaussRule& g = gauss_legendre(16);
  double nodes = static_cast<double>(panels) * 16.0;
  if (nodes * static_cast<double>(w.size()) > opts.node_budget * 1e3) {
    throw BudgetExceeded("alpha2_mean_square_F1 refused", nodes, opts.node_budget);
  }
  std::vector<double> part(static_cast<std::size_t>(panels));
  const double hw = 0.25 / panels;
  parallel_for(part.size(), opts.workers, [&](std::size_t p) {
    double c = 0.5 + (2.0 * static_cast<double>(p) + 1.0) * hw;
    std::vector<double> phi(w.size());
    NeumaierSum acc;
    for (int q = 0; q < 16; ++q) {
      double alpha2 = c + hw * g.nodes[q];
      for (std::size_t j = 0; j < w.size(); ++j) phi[j] = log_phi(x1k[j], alpha2, x2k[j]);
      acc.add(hw * g.weights[q] * std::norm(weighted_phase_sum(w, phi, t)));
    }
    part[p] = acc.value();
  });
  NeumaierSum total;
  for (double v : part) total.add(v);
  return total.value();
}

std::array<double, 3> hessG_quadratic(int k, double alpha2, double x1, double x2, double t) {
  double kk = k;
  double phi = std::pow(x1, k) - alpha2 * std::pow(x2, k);
  double t2 = t * t;
  double A = 2.0 * alpha2 * kk * kk * kk * (kk - 1.0) * t2 * std::pow(phi, -3) *
             std::pow(x1, 2 * k - 4) * std::pow(x2, k - 2);
  double B = -2.0 * alpha2 * kk * kk * (kk - 1.0) * (kk - 2.0) * t2 * std::pow(phi, -2) *
             std::pow(x1, k - 3) * std::pow(x2, k - 3);
  double C = -2.0 * alpha2 * alpha2 * kk * kk * kk * (kk - 1.0) * t2 * std::pow(phi, -3) *
             std::pow(x1, k - 2) * std::pow(x2, 2 * k - 4);
  return {A, B, C};
}

HessGValue hessG_check(const ExpSumContext& ctx, std::int64_t mu, std::int64_t nu, double x1,
                       double x2, double t) {
  const int k = ctx.params().k;
  const double a2 = ctx.params().alpha2;
  auto phi = [&](double u, double v) {
    double r = std::pow(u, k) - a2 * std::pow(v, k);
    if (!(r > 0.0)) throw DomainError("hessG_check: Phi is not positive");
    return r;
  };
  phi(x1, x2);
  phi(x1 + mu, x2 + nu);
  HessGValue out;
  auto q = hessG_quadratic(k, a2, x1, x2, t);
  double m = static_cast<double>(mu), n = static_cast<double>(nu);
  out.closed = q[0] * m * m + q[1] * m * n + q[2] * n * n;
  auto g = [&](double u, double v) { return t * std::log(phi(u + m, v + n) / phi(u, v)); };
  const double h = ctx.P() / 500.0;
  const double c1[5] = {1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0};
  const double c2[5] = {-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0};
  double gxx = 0.0, gyy = 0.0, gxy = 0.0;
  for (int i = 0; i < 5; ++i) {
    double d = (i - 2) * h;
    gxx += c2[i] * g(x1 + d, x2);
    gyy += c2[i] * g(x1, x2 + d);
    for (int j = 0; j < 5; ++j) {
      if (c1[i] == 0.0 || c1[j] == 0.0) continue;
      gxy += c1[i] * c1[j] * g(x1 + d, x2 + (j - 2) * h);
    }
  }
  gxx /= h * h;
  gyy /= h * h;
  gxy /= h * h;
  out.numeric = gxx * gyy - gxy * gxy;
  return out;
}

}  // namespace terndio
