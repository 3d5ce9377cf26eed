#include "terndio/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "terndio/errors.hpp"
#include "terndio/numeric.hpp"
#include "terndio/quadrature.hpp"

namespace terndio {

namespace {

void check_alpha_k(double alpha2, int k) {
  if (!(alpha2 > 0.0) || !std::isfinite(alpha2)) throw ValidationError("alpha2 must be positive");
  if (k < 2) throw ValidationError("degree k must be at least 2");
}

// Shared construction. alpha_b2 fixes b2 and b1, the lower-bound line ignores
// the alpha2 (a2/4)^k term so it holds for every smaller alpha2 too.
SupportParams build_support(double alpha_b2, int k) {
  SupportParams s;
  s.a1 = 1.0;
  s.b2 = 0.8 * (s.a1 / 4.0) * std::pow(alpha_b2, -1.0 / k);
  s.a2 = 0.5 * s.b2;
  // (a3/4)^k / 2 = 1.25 (a1/4)^k
  s.a3 = s.a1 * std::pow(2.5, 1.0 / k);
  s.b3 = 1.5 * s.a3;
  s.b1 = std::pow(1.25 * (alpha_b2 * std::pow(s.b2, k) + std::pow(s.b3, k)), 1.0 / k);
  return s;
}

constexpr int kPanelOrder = 24;
constexpr int kFilonPanels = 64;
constexpr int kFilonDegree = 23;

struct FilonTable {
  std::vector<double> coeff;  // kFilonPanels x (kFilonDegree + 1)
  std::vector<double> centre_cos, centre_sin;
};

const FilonTable& filon_table() {
  static const FilonTable table = [] {
    FilonTable t;
    t.coeff.assign(kFilonPanels * (kFilonDegree + 1), 0.0);
    const GaussRule& g = gauss_legendre(64);
    const double h = 1.0 / kFilonPanels;
    std::vector<double> pn;
    for (int p = 0; p < kFilonPanels; ++p) {
      double c = (p + 0.5) * h;
      for (std::size_t q = 0; q < g.nodes.size(); ++q) {
        double y = g.nodes[q];
        double sv = smooth_step(c + 0.5 * h * y);
        legendre_p(kFilonDegree, y, pn);
        for (int n = 0; n <= kFilonDegree; ++n) {
          t.coeff[p * (kFilonDegree + 1) + n] += (2.0 * n + 1.0) / 2.0 * g.weights[q] * sv * pn[n];
        }
      }
    }
    return t;
  }();
  return table;
}

}  // namespace

SupportParams solve_support(double alpha2, int k) {
  check_alpha_k(alpha2, k);
  return build_support(alpha2, k);
}

SupportParams solve_support_uniform(double lo, double hi, int k) {
  check_alpha_k(lo, k);
  if (!(hi >= lo)) throw ValidationError("solve_support_uniform needs lo <= hi");
  return build_support(hi, k);
}

SupportCheck verify_support(const SupportParams& s, double alpha2, int k) {
  SupportCheck r;
  r.ordered = s.a1 > 0 && s.a2 > 0 && s.a3 > 0 && s.a1 < s.b1 && s.a2 < s.b2 && s.a3 < s.b3;
  double q1 = std::pow(s.a1 / 4.0, k);
  double line1 = q1 - alpha2 * std::pow(s.b2, k);
  double rhs2 = alpha2 * std::pow(s.a2 / 4.0, k) + 0.5 * std::pow(s.a3 / 4.0, k);
  double line3 = std::pow(s.b1, k) - alpha2 * std::pow(s.b2, k) - std::pow(s.b3, k);
  r.slack[0] = q1 > 0 ? line1 / q1 : -1.0;
  r.slack[1] = rhs2 > 0 ? (rhs2 - q1) / rhs2 : -1.0;
  r.slack[2] = s.b1 > 0 ? line3 / std::pow(s.b1, k) : -1.0;
  r.min_slack = std::min({r.slack[0], r.slack[1], r.slack[2]});
  r.ok = r.ordered && r.slack[0] > 0 && r.slack[1] > 0 && r.slack[2] > 0;
  return r;
}

double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  double e = 1.0 / u - 1.0 / (1.0 - u);
  return 1.0 / (1.0 + std::exp(e));
}

double BumpGeometry::eval(double x) const {
  if (x <= support_lo || x >= support_hi) return 0.0;
  if (x >= plateau_lo && x <= plateau_hi) return 1.0;
  if (x < plateau_lo) return smooth_step((x - support_lo) / (plateau_lo - support_lo));
  return smooth_step((support_hi - x) / (support_hi - plateau_hi));
}

double BumpGeometry::mass() const {
  // The profile satisfies s(u) + s(1 - u) = 1, so each transition adds half its length.
  return (plateau_hi - plateau_lo) + 0.5 * (plateau_lo - support_lo) +
         0.5 * (support_hi - plateau_hi);
}

double BumpGeometry::second_moment() const {
  double m = (std::pow(plateau_hi, 3) - std::pow(plateau_lo, 3)) / 3.0;
  const GaussRule& g = gauss_legendre(64);
  auto transition = [&](double a, double b) {
    const int panels = 16;
    double h = (b - a) / panels;
    NeumaierSum acc;
    for (int p = 0; p < panels; ++p) {
      double c = a + (p + 0.5) * h;
      for (std::size_t q = 0; q < g.nodes.size(); ++q) {
        double x = c + 0.5 * h * g.nodes[q];
        acc.add(0.5 * h * g.weights[q] * x * x * eval(x));
      }
    }
    return acc.value();
  };
  return m + transition(support_lo, plateau_lo) + transition(plateau_hi, support_hi);
}

std::complex<double> profile_transform_panels(double w) {
  const GaussRule& g = gauss_legendre(kPanelOrder);
  int panels = 8 + static_cast<int>(std::ceil(std::fabs(w) / 3.0));
  double h = 1.0 / panels;
  ComplexNeumaierSum acc;
  for (int p = 0; p < panels; ++p) {
    double c = (p + 0.5) * h;
    std::complex<double> part = 0.0;
    for (int q = 0; q < kPanelOrder; ++q) {
      double u = c + 0.5 * h * g.nodes[q];
      double sv = smooth_step(u);
      if (sv == 0.0) continue;
      part += g.weights[q] * sv * std::polar(1.0, -w * u);
    }
    acc.add(0.5 * h * part);
  }
  return acc.value();
}

std::complex<double> profile_transform_filon(double w) {
  const FilonTable& t = filon_table();
  const double h = 1.0 / kFilonPanels;
  std::vector<double> jn;
  spherical_bessel_j(kFilonDegree, 0.5 * w * h, jn);
  // (-i)^n j_n folded into real and imaginary weights.
  std::array<double, kFilonDegree + 1> re{}, im{};
  for (int n = 0; n <= kFilonDegree; ++n) {
    switch (n % 4) {
      case 0: re[n] = jn[n]; break;
      case 1: im[n] = -jn[n]; break;
      case 2: re[n] = -jn[n]; break;
      default: im[n] = jn[n]; break;
    }
  }
  ComplexNeumaierSum acc;
  for (int p = 0; p < kFilonPanels; ++p) {
    const double* c = &t.coeff[p * (kFilonDegree + 1)];
    double sr = 0.0, si = 0.0;
    for (int n = 0; n <= kFilonDegree; ++n) {
      sr += c[n] * re[n];
      si += c[n] * im[n];
    }
    double centre = (p + 0.5) * h;
    acc.add(h * std::polar(1.0, -w * centre) * std::complex<double>(sr, si));
  }
  return acc.value();
}

std::complex<double> profile_transform(double w) {
  if (std::fabs(w) <= 1e3) return profile_transform_panels(w);
  return profile_transform_filon(w);
}

std::complex<double> BumpGeometry::fourier(double xi) const {
  double w = plateau_hi - plateau_lo;
  double m = 0.5 * (plateau_hi + plateau_lo);
  double arg = 0.5 * xi * w;
  double sinc = arg == 0.0 ? 1.0 : std::sin(arg) / arg;
  std::complex<double> plateau = std::polar(w * sinc, -xi * m);
  double lr = plateau_lo - support_lo;
  double lf = support_hi - plateau_hi;
  std::complex<double> rise = lr * std::polar(1.0, -xi * support_lo) * profile_transform(xi * lr);
  std::complex<double> fall = lf * std::polar(1.0, -xi * support_hi) * profile_transform(-xi * lf);
  return plateau + rise + fall;
}

BumpFamily::BumpFamily(const SupportParams& s) : support_(s) {
  g_[0] = {-2.0, -1.0, 1.0, 2.0};
  auto box = [](double a, double b) { return BumpGeometry{a / 4.0, a / 2.0, 0.75 * b, b}; };
  g_[1] = box(s.a1, s.b1);
  g_[2] = box(s.a2, s.b2);
  g_[3] = box(s.a3, s.b3);
  double lo = s.a2 / (4.0 * s.b1);
  double hi = 4.0 * s.b2 / s.a1;
  g_[4] = {lo, 2.0 * lo, 0.75 * hi, hi};
  for (const auto& g : g_) {
    if (!(g.support_lo < g.plateau_lo && g.plateau_lo < g.plateau_hi && g.plateau_hi < g.support_hi)) {
      throw ValidationError("support constants give an empty plateau");
    }
  }
}

const BumpGeometry& BumpFamily::geometry(int i) const {
  if (i < 0 || i > 4) throw ValidationError("bump index must lie in 0..4");
  return g_[i];
}

double BumpFamily::eval(int i, double x) const {
  if (i == 0) return geometry(0).eval(std::fabs(x));
  return geometry(i).eval(x);
}

std::complex<double> BumpFamily::fourier(int i, double xi) const {
  if (i == 0) {
    // Even real bump: the transform is real and even.
    return {geometry(0).fourier(std::fabs(xi)).real(), 0.0};
  }
  return geometry(i).fourier(xi);
}

KernelDifference kernel_difference(const BumpFamily& family, double T, double P, double t,
                                   double c3) {
  if (!(T > 0.0) || !(P > 0.0)) throw ValidationError("kernel_difference needs T > 0 and P > 0");
  if (T < std::sqrt(P)) throw ValidationError("kernel_difference needs T >= sqrt(P)");
  KernelDifference r;
  double u = family.fourier(0, t / T).real();
  double v = family.fourier(0, t / std::sqrt(P)).real();
  r.value = std::fabs(u - v);
  double at = std::fabs(t);
  double env = std::min(1.0, t * t / P);
  if (at > T) env = std::min(env, std::pow(T / at, 10));
  r.envelope = c3 * env;
  r.error_bound = 2e-12;
  return r;
}

double calibrate_kernel_envelope(const BumpFamily& family) {
  const BumpGeometry& g = family.geometry(0);
  double decay = 0.0;
  for (double xi = 0.5; xi <= 400.0; xi += 0.01) {
    double v = std::pow(xi, 10) * std::fabs(family.fourier(0, xi).real());
    decay = std::max(decay, v);
  }
  double c = std::max({0.5 * g.second_moment(), 2.0 * g.mass(), 2.0 * decay});
  return 1.25 * c;
}

}  // namespace terndio
