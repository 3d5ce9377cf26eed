#include "terndio/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <cctype>
#include <numbers>
#include <ostream>
#include <sstream>

#include "terndio/errors.hpp"
#include "terndio/nearpoints.hpp"
#include "terndio/numeric.hpp"
#include "terndio/parallel.hpp"
#include "terndio/rng.hpp"

namespace terndio {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Shortest %g form that reads back to the same double.
std::string fmt_short(double v) {
  char buf[40];
  for (int prec = 1; prec < 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return fmt17(v);
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text) {
  std::string t = trim(text);
  if (t.empty()) throw ValidationError("empty number");
  auto slash = t.find('/');
  if (slash != std::string::npos) {
    return parse_number(t.substr(0, slash)) / parse_number(t.substr(slash + 1));
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw ValidationError("not a number: '" + t + "'");
  }
  if (used != t.size()) throw ValidationError("not a number: '" + t + "'");
  return v;
}

std::int64_t parse_int(const std::string& text) {
  std::string t = trim(text);
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &used);
  } catch (const std::exception&) {
    throw ValidationError("not an integer: '" + t + "'");
  }
  if (used != t.size()) throw ValidationError("not an integer: '" + t + "'");
  return v;
}

bool parse_bool(const std::string& text) {
  std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ValidationError("not a boolean: '" + t + "'");
}

SupportParams sweep_support(const SweepConfig& c) {
  return c.sample_alpha2 ? solve_support_uniform(0.5, 1.0, c.k) : solve_support(c.alpha2, c.k);
}

// Smallest x in [lo, hi + 1] with g(x) > -eps and largest y in [lo - 1, hi] with
// g(y) < eps, for g nondecreasing, starting from approximate guesses.
template <class G>
std::pair<std::int64_t, std::int64_t> monotone_window(G g, double eps, std::int64_t lo,
                                                      std::int64_t hi, double guess_lo,
                                                      double guess_hi) {
  auto clampd = [](double v, std::int64_t a, std::int64_t b) {
    if (!(v > static_cast<double>(a))) return a;
    if (!(v < static_cast<double>(b))) return b;
    return static_cast<std::int64_t>(v);
  };
  std::int64_t x = clampd(std::floor(guess_lo), lo, hi + 1);
  while (x > lo && g(x - 1) > -eps) --x;
  while (x <= hi && !(g(x) > -eps)) ++x;
  std::int64_t y = clampd(std::ceil(guess_hi), lo - 1, hi);
  while (y < hi && g(y + 1) < eps) ++y;
  while (y >= lo && !(g(y) < eps)) --y;
  return {x, y};
}

std::vector<PSummary> summarize(const SweepConfig& cfg, const std::vector<SweepRow>& rows,
                                const std::vector<std::size_t>& sample_of) {
  const std::size_t nP = cfg.P.size();
  std::vector<PSummary> out(nP);
  for (std::size_t p = 0; p < nP; ++p) {
    std::vector<double> v;
    v.reserve(sample_of.size());
    for (std::size_t s : sample_of) v.push_back(rows[s * nP + p].report.min_abs);
    PSummary& ps = out[p];
    const double P = static_cast<double>(cfg.P[p]);
    ps.P = cfg.P[p];
    ps.median = median(v);
    ps.q10 = quantile(v, 0.10);
    ps.q25 = quantile(v, 0.25);
    ps.q75 = quantile(v, 0.75);
    ps.q90 = quantile(v, 0.90);
    ps.median_norm_k2 = ps.median / std::pow(P, cfg.k - 2);
    ps.median_norm_k3 = ps.median / std::pow(P, cfg.k - 3);
    ps.median_norm_k125 = ps.median / std::pow(P, cfg.k - 12.0 / 5.0);
    for (const ThetaRule& r : cfg.theta_rules) {
      double th = r(P, cfg.k);
      std::size_t fails = 0;
      for (double m : v) fails += (m >= th) ? 1 : 0;
      ps.failure_fraction.push_back(static_cast<double>(fails) / static_cast<double>(v.size()));
    }
  }
  return out;
}

bool log_medians(const std::vector<PSummary>& s, std::vector<double>& x, std::vector<double>& y) {
  x.clear();
  y.clear();
  for (const PSummary& p : s) {
    if (!(p.median > 0.0)) return false;
    x.push_back(std::log(static_cast<double>(p.P)));
    y.push_back(std::log(p.median));
  }
  return true;
}

}  // namespace

double ThetaRule::operator()(double P, int k) const { return c * std::pow(P, exponent_for(k)); }

ThetaRule ThetaRule::parse(const std::string& text) {
  std::string t;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  }
  auto star = t.find("*P^");
  if (star == std::string::npos) throw ValidationError("theta rule must look like c*P^e: '" + text + "'");
  ThetaRule r;
  r.c = parse_number(t.substr(0, star));
  if (!(r.c > 0.0)) throw ValidationError("theta rule coefficient must be positive");
  std::string e = t.substr(star + 3);
  if (e.size() >= 2 && e.front() == '(' && e.back() == ')') e = e.substr(1, e.size() - 2);
  if (!e.empty() && e.front() == 'k') {
    r.relative_to_k = true;
    std::string rest = e.substr(1);
    if (rest.empty()) {
      r.exponent = 0.0;
    } else if (rest.front() == '+' || rest.front() == '-') {
      double v = parse_number(rest.substr(1));
      r.exponent = rest.front() == '-' ? -v : v;
    } else {
      throw ValidationError("bad theta exponent: '" + e + "'");
    }
  } else {
    r.exponent = parse_number(e);
  }
  return r;
}

std::string ThetaRule::to_string() const {
  std::string e;
  if (relative_to_k) {
    e = "(k" + std::string(exponent < 0 ? "-" : "+") + fmt_short(std::fabs(exponent)) + ")";
  } else {
    e = fmt_short(exponent);
  }
  return fmt_short(c) + "*P^" + e;
}

void SweepConfig::validate() const {
  if (k < 2 || k > 12) throw ValidationError("k must lie in [2, 12]");
  if (samples < 1) throw ValidationError("samples must be at least 1");
  if (P.empty()) throw ValidationError("P list is empty");
  for (std::size_t i = 0; i < P.size(); ++i) {
    if (P[i] < 4 || (P[i] & (P[i] - 1)) != 0) throw ValidationError("every P must be a power of two >= 4");
    if (i > 0 && P[i] <= P[i - 1]) throw ValidationError("P list must be strictly increasing");
  }
  if (bootstrap < 0) throw ValidationError("bootstrap must be nonnegative");
  if (!(budget > 0.0)) throw ValidationError("budget must be positive");
  if (!sample_alpha2) {
    if (!(alpha2 >= 0.5 && alpha2 <= 1.0)) throw ValidationError("alpha2 must lie in [1/2, 1]");
    if (!verify_support(solve_support(alpha2, k), alpha2, k).ok) {
      throw ValidationError("no valid support constants for this alpha2");
    }
  }
}

SweepConfig SweepConfig::parse(std::istream& in) {
  SweepConfig c;
  bool theta_seen = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key == "k") {
      c.k = static_cast<int>(parse_int(val));
    } else if (key == "alpha2") {
      c.alpha2 = parse_number(val);
    } else if (key == "alpha2_mode") {
      if (val == "fixed") c.sample_alpha2 = false;
      else if (val == "sampled") c.sample_alpha2 = true;
      else throw ValidationError("alpha2_mode must be fixed or sampled");
    } else if (key == "samples") {
      c.samples = static_cast<int>(parse_int(val));
    } else if (key == "seed") {
      c.seed = static_cast<std::uint64_t>(parse_int(val));
    } else if (key == "P") {
      c.P.clear();
      std::stringstream ss(val);
      std::string item;
      while (std::getline(ss, item, ',')) c.P.push_back(parse_int(item));
    } else if (key == "theta") {
      if (!theta_seen) c.theta_rules.clear();
      theta_seen = true;
      c.theta_rules.push_back(ThetaRule::parse(val));
    } else if (key == "method") {
      if (val == "fast") c.method = SearchMethod::fast;
      else if (val == "brute") c.method = SearchMethod::brute;
      else throw ValidationError("method must be brute or fast");
    } else if (key == "workers") {
      c.workers = static_cast<unsigned>(parse_int(val));
    } else if (key == "budget") {
      c.budget = parse_number(val);
    } else if (key == "record_timing") {
      c.record_timing = parse_bool(val);
    } else if (key == "bootstrap") {
      c.bootstrap = static_cast<int>(parse_int(val));
    } else {
      throw ValidationError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

std::string SweepConfig::to_text() const {
  std::ostringstream o;
  o << "k = " << k << "\n";
  o << "alpha2 = " << fmt_short(alpha2) << "\n";
  o << "alpha2_mode = " << (sample_alpha2 ? "sampled" : "fixed") << "\n";
  o << "samples = " << samples << "\n";
  o << "seed = " << seed << "\n";
  o << "P = ";
  for (std::size_t i = 0; i < P.size(); ++i) o << (i ? "," : "") << P[i];
  o << "\n";
  for (const ThetaRule& r : theta_rules) o << "theta = " << r.to_string() << "\n";
  o << "method = " << terndio::to_string(method) << "\n";
  o << "budget = " << fmt_short(budget) << "\n";
  o << "record_timing = " << (record_timing ? "true" : "false") << "\n";
  o << "bootstrap = " << bootstrap << "\n";
  return o.str();
}

std::pair<double, double> sample_alphas(const SweepConfig& config, int i) {
  const auto idx = static_cast<std::uint64_t>(i);
  double a2 = config.sample_alpha2 ? counter_uniform(config.seed, kStreamAlpha2, idx, 0.5, 1.0)
                                   : config.alpha2;
  double a3 = counter_uniform(config.seed, kStreamAlpha3, idx, 0.5, 1.0);
  return {a2, a3};
}

SweepResult run_alpha3_sweep(const SweepConfig& config) {
  config.validate();
  SweepResult res;
  res.config = config;
  const SupportParams s = sweep_support(config);
  const std::size_t nP = config.P.size();
  const std::size_t ns = static_cast<std::size_t>(config.samples);
  res.rows.resize(ns * nP);
  // Refuse before doing any work if the largest box exceeds the budget.
  {
    BoxRegion big = BoxRegion::from_support(s, static_cast<double>(config.P.back()));
    double pairs = static_cast<double>(big.hi[1] - big.lo[1] + 1) *
                   static_cast<double>(big.hi[2] - big.lo[2] + 1);
    double need = config.method == SearchMethod::fast ? 4.0 * pairs : big.volume();
    if (need > config.budget) throw BudgetExceeded("sweep refused: largest search", need, config.budget);
  }
  SearchOptions so;
  so.budget = config.budget;
  so.workers = 1;
  parallel_for(res.rows.size(), config.workers, [&](std::size_t cell) {
    const std::size_t i = cell / nP, p = cell % nP;
    auto [a2, a3] = sample_alphas(config, static_cast<int>(i));
    FormParams fp{config.k, a2, a3};
    BoxRegion box = BoxRegion::from_support(s, static_cast<double>(config.P[p]));
    auto start = std::chrono::steady_clock::now();
    SearchReport rep = config.method == SearchMethod::fast ? min_search_fast(fp, box, so)
                                                           : min_search_brute(fp, box, so);
    SweepRow& row = res.rows[cell];
    row.alpha2 = a2;
    row.alpha3 = a3;
    row.P = config.P[p];
    row.report = rep;
    if (config.record_timing) {
      row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  });
  std::vector<std::size_t> all(ns);
  for (std::size_t i = 0; i < ns; ++i) all[i] = i;
  res.per_P = summarize(config, res.rows, all);
  std::vector<double> x, y;
  if (nP >= 4 && log_medians(res.per_P, x, y)) {
    res.has_fit = true;
    res.fit = ols(x, y);
    std::vector<double> slopes;
    std::vector<std::size_t> pick(ns);
    for (int b = 0; b < config.bootstrap; ++b) {
      for (std::size_t j = 0; j < ns; ++j) {
        std::uint64_t idx = static_cast<std::uint64_t>(b) * ns + j;
        auto r = static_cast<std::size_t>(counter_uniform(config.seed, kStreamBootstrap, idx) *
                                          static_cast<double>(ns));
        pick[j] = std::min(r, ns - 1);
      }
      SweepConfig bare = config;
      bare.theta_rules.clear();
      std::vector<double> bx, by;
      if (log_medians(summarize(bare, res.rows, pick), bx, by)) slopes.push_back(ols(bx, by).slope);
    }
    if (!slopes.empty()) {
      res.slope_ci = {quantile(slopes, 0.025), quantile(slopes, 0.975)};
    } else {
      res.slope_ci = {res.fit.slope, res.fit.slope};
    }
  }
  return res;
}

SweepResult run_double_average(SweepConfig config) {
  config.sample_alpha2 = true;
  return run_alpha3_sweep(config);
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  out << "alpha2,alpha3,P,min_abs,witness1,witness2,witness3,seconds\n";
  for (const SweepRow& r : result.rows) {
    out << fmt17(r.alpha2) << ',' << fmt17(r.alpha3) << ',' << r.P << ',' << fmt17(r.report.min_abs)
        << ',' << r.report.witness[0] << ',' << r.report.witness[1] << ',' << r.report.witness[2]
        << ',' << fmt17(r.seconds) << '\n';
  }
}

void write_plot_data(const SweepResult& result, double exponent, std::ostream& out) {
  for (const PSummary& p : result.per_P) {
    double P = static_cast<double>(p.P);
    out << fmt17(std::log(P)) << ' ' << fmt17(std::log(p.median) - exponent * std::log(P)) << '\n';
  }
}

std::vector<FractionRow> exceptional_fraction(const SweepResult& sweep, const ThetaRule& rule) {
  const SweepConfig& c = sweep.config;
  const std::size_t nP = c.P.size();
  const std::size_t ns = sweep.rows.size() / nP;
  std::vector<FractionRow> out;
  for (std::size_t p = 0; p < nP; ++p) {
    FractionRow fr;
    fr.P = c.P[p];
    const double P = static_cast<double>(fr.P);
    fr.theta = rule(P, c.k);
    fr.trials = ns;
    for (std::size_t i = 0; i < ns; ++i) {
      if (sweep.rows[i * nP + p].report.min_abs >= fr.theta) ++fr.failures;
    }
    fr.fraction = static_cast<double>(fr.failures) / static_cast<double>(ns);
    fr.wilson = wilson_interval(fr.failures, fr.trials);
    fr.bound = std::pow(P, 5.0 * c.k / 6.0 - 2.0) * std::pow(fr.theta, -5.0 / 6.0) +
               std::pow(P, 10.0 * c.k / 9.0 - 8.0 / 3.0) * std::pow(fr.theta, -10.0 / 9.0);
    out.push_back(fr);
  }
  return out;
}

std::vector<FractionRow> exceptional_fraction(const SweepConfig& config, const ThetaRule& rule) {
  SweepConfig c = config;
  c.theta_rules = {rule};
  c.bootstrap = 0;
  return exceptional_fraction(run_alpha3_sweep(c), rule);
}

double lemma1_ratio(const ExpSumContext& ctx, double alpha3) {
  if (!(alpha3 >= 0.5 && alpha3 <= 1.0)) throw ValidationError("alpha3 must lie in [1/2, 1]");
  const int k = ctx.params().k;
  const double a2 = ctx.params().alpha2;
  const double P = ctx.P();
  const double eps = 1.0 / std::sqrt(P);
  const BumpFamily& wf = ctx.weights();
  BoxRegion box = BoxRegion::from_support(ctx.support(), P);
  const std::int64_t L1 = box.lo[0], U1 = box.hi[0];
  const auto n1 = static_cast<std::size_t>(U1 - L1 + 1);
  std::vector<double> prefix(n1 + 1, 0.0);
  NeumaierSum run;
  for (std::size_t i = 0; i < n1; ++i) {
    run.add(wf.eval(1, static_cast<double>(L1 + static_cast<std::int64_t>(i)) / P));
    prefix[i + 1] = run.value();
  }
  NeumaierSum total;
  for (std::int64_t x3 = box.lo[2]; x3 <= box.hi[2]; ++x3) {
    double w3 = wf.eval(3, static_cast<double>(x3) / P);
    if (w3 == 0.0) continue;
    const double L = std::log(alpha3) + k * std::log(static_cast<double>(x3));
    for (std::int64_t x2 = box.lo[1]; x2 <= box.hi[1]; ++x2) {
      double w2 = wf.eval(2, static_cast<double>(x2) / P);
      if (w2 == 0.0) continue;
      double base = a2 * std::pow(static_cast<double>(x2), k);
      auto g = [&](std::int64_t x1) { return i4_log_phi(k, a2, x1, x2) - L; };
      auto [lo, hi] = monotone_window(g, eps, L1, U1, kth_root(base + std::exp(L - eps), k),
                                      kth_root(base + std::exp(L + eps), k));
      if (lo > hi) continue;
      double ws = prefix[static_cast<std::size_t>(hi - L1 + 1)] - prefix[static_cast<std::size_t>(lo - L1)];
      total.add(ws * w2 * w3);
    }
  }
  // (sqrt P / T) P^{k-3} / theta with T = 2 P^k / (c0 theta).
  const double c0 = reduction_constants(ctx.support(), k).c0;
  return total.value() * c0 / (2.0 * std::pow(P, 2.5));
}

double lemma1_calibrate(const ExpSumContext& ctx, int grid) {
  if (grid < 2) throw ValidationError("lemma1_calibrate needs grid >= 2");
  double best = INFINITY;
  for (int i = 0; i < grid; ++i) {
    best = std::min(best, lemma1_ratio(ctx, 0.5 + 0.5 * i / (grid - 1)));
  }
  return 0.8 * best;
}

MeasureBound assemble_measure_bound(const ExpSumContext& ctx, double theta,
                                    const MeasureBoundOptions& opts) {
  const int k = ctx.params().k;
  const double P = ctx.P();
  if (!(theta > std::pow(P, k - 3)) || !(theta < std::pow(P, k))) {
    throw ValidationError("assemble_measure_bound needs P^{k-3} < theta < P^k");
  }
  if (opts.f2_grid < 2) throw ValidationError("f2_grid must be at least 2");
  MeasureBound mb;
  mb.T = ctx.T_for(theta);
  mb.c2 = opts.c2 ? *opts.c2 : lemma1_calibrate(ctx);
  if (!(mb.c2 > 0.0)) throw ValidationError("c2 must be positive");
  mb.c3 = opts.c3;
  // Parseval in log alpha3 gives the 2 pi; d alpha3 <= d log alpha3 on [1/2, 1].
  mb.prefactor = 2.0 * std::numbers::pi / (mb.c2 * mb.c2 * theta * theta) *
                 std::pow(P, 2 * k - 6) * mb.c3 * mb.c3 / (mb.T * mb.T);
  // On |t| < P^{1/10} the weight is at most t^4/P^2 and |F1 F2| at most F1(0) F2(0).
  const double m12 = ctx.f1_mass() * ctx.f2_mass();
  mb.small_t = m12 * m12 * 2.0 * std::sqrt(P) / (5.0 * P * P);
  const double t0 = std::pow(P, 0.1), t1 = 10.0 * mb.T;
  double sup = 0.1 * ctx.f2_mass();  // |t| > 10 T
  const double r = std::log(t1 / t0) / (opts.f2_grid - 1);
  for (int i = 0; i < opts.f2_grid; ++i) {
    double t = t0 * std::exp(r * i);
    sup = std::max(sup, std::min(1.0, mb.T / t) * std::abs(f2(ctx, k * t)));
  }
  mb.f2_sup = sup;
  mb.I3 = integral_I3(ctx, mb.T, opts.quadrature, opts.i3_method);
  mb.bound = mb.prefactor * (mb.small_t + sup * sup * mb.I3.value);
  mb.fraction_bound = 2.0 * mb.bound;
  return mb;
}

}  // namespace terndio
