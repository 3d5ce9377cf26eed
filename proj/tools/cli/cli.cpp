#include "cli.hpp"

#include <array>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "manifest.hpp"
#include "terndio/errors.hpp"
#include "terndio/experiments.hpp"
#include "terndio/expsums.hpp"
#include "terndio/forms.hpp"
#include "terndio/nearpoints.hpp"
#include "terndio/parallel.hpp"
#include "terndio/weights.hpp"
#include "terndio/zeta.hpp"

namespace terndio::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

using Json = nlohmann::ordered_json;

/// Everything a run produces, held in memory until the run succeeded.
struct RunOutputs {
  std::vector<std::pair<std::string, std::string>> files;  ///< path, content
  std::string stdout_text;
  std::uint64_t seed = 0;
  bool seed_from_env = false;

  void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
      stdout_text += text;
    } else {
      files.emplace_back(path, text);
    }
  }
};

std::string g17(double v) { return fmt::format("{:.17g}", v); }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::vector<std::int64_t> parse_int_list(const std::string& text, std::size_t expected) {
  std::vector<std::int64_t> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      long long x = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      v.push_back(x);
    } catch (const std::exception&) {
      throw ValidationError("not an integer list: '" + text + "'");
    }
  }
  if (v.size() != expected) {
    throw ValidationError("expected " + std::to_string(expected) + " comma separated integers");
  }
  return v;
}

Json support_json(const SupportParams& s) {
  return Json{{"a1", s.a1}, {"b1", s.b1}, {"a2", s.a2}, {"b2", s.b2}, {"a3", s.a3}, {"b3", s.b3}};
}

Json count_json(const CountReport& r) {
  return Json{{"mode", r.mode},           {"scale", r.scale}, {"window", r.window},
              {"count", r.count},         {"hits", r.hits},   {"main_term", r.main_term},
              {"ratio", r.ratio}};
}

struct Options {
  unsigned workers = 0;
  std::string manifest_path;

  // min
  int k = 3;
  double alpha2 = 1.0, alpha3 = 1.0;
  std::string pbox, method = "fast", out;
  double budget = 0.0;

  // weights
  std::string profile;

  // expsum
  std::string which = "f1";
  double P = 0.0, t = 0.0, X1 = 0.0, X2 = 0.0;
  double tmin = 0.0, tmax = 0.0;
  int n = 1001;

  // nearpoints
  std::string mode, rmode = "product-pair";
  int Q = 0;
  double delta = -1.0, U = -1.0;

  // sweep
  std::string config, plots;

  // replay
  std::string replay_manifest;
};

void add_out(CLI::App* sub, Options& o, const std::string& what) {
  sub->add_option("--out", o.out, what);
}

void run_min(const Options& o, RunOutputs& ro) {
  auto b = parse_int_list(o.pbox, 6);
  BoxRegion box;
  box.lo = {b[0], b[2], b[4]};
  box.hi = {b[1], b[3], b[5]};
  FormParams fp{o.k, o.alpha2, o.alpha3};
  SearchOptions so;
  so.budget = o.budget > 0.0 ? o.budget : 1e9;
  so.workers = o.workers;
  SearchReport r = o.method == "brute" ? min_search_brute(fp, box, so) : min_search_fast(fp, box, so);
  Json j{{"min_abs", r.min_abs},
         {"witness", {r.witness[0], r.witness[1], r.witness[2]}},
         {"evaluations", r.evaluations},
         {"method", to_string(r.method)}};
  ro.emit(o.out, dump(j));
}

void run_weights(const Options& o, RunOutputs& ro) {
  FormParams{o.k, o.alpha2, 1.0}.validate();
  SupportParams s = solve_support(o.alpha2, o.k);
  SupportCheck c = verify_support(s, o.alpha2, o.k);
  ReductionConstants rc = reduction_constants(s, o.k);
  BumpFamily fam(s);
  Json geoms = Json::array();
  double xmax = 0.0;
  for (int i = 0; i <= 4; ++i) {
    const BumpGeometry& g = fam.geometry(i);
    geoms.push_back({{"index", i},
                     {"support_lo", g.support_lo},
                     {"plateau_lo", g.plateau_lo},
                     {"plateau_hi", g.plateau_hi},
                     {"support_hi", g.support_hi},
                     {"mass", g.mass()}});
    if (i > 0) xmax = std::max(xmax, g.support_hi);
  }
  Json j{{"k", o.k},
         {"alpha2", o.alpha2},
         {"support", support_json(s)},
         {"check",
          {{"ok", c.ok},
           {"ordered", c.ordered},
           {"slack", {c.slack[0], c.slack[1], c.slack[2]}},
           {"min_slack", c.min_slack}}},
         {"reduction", {{"c0", rc.c0}, {"C", rc.C}, {"M", rc.M}}},
         {"weights", geoms}};
  ro.emit(o.out, dump(j));
  if (!o.profile.empty()) {
    std::string csv = "x,w1,w2,w3,w4\n";
    const int n = o.n > 1 ? o.n : 1001;
    for (int i = 0; i < n; ++i) {
      double x = xmax * i / (n - 1);
      csv += fmt::format("{},{},{},{},{}\n", g17(x), g17(fam.eval(1, x)), g17(fam.eval(2, x)),
                         g17(fam.eval(3, x)), g17(fam.eval(4, x)));
    }
    ro.files.emplace_back(o.profile, csv);
  }
}

ExpSumContext make_context(const Options& o) {
  FormParams fp{o.k, o.alpha2, o.alpha3};
  fp.validate();
  return ExpSumContext(o.P, fp, solve_support(o.alpha2, o.k));
}

void run_expsum(const Options& o, RunOutputs& ro) {
  ExpSumContext ctx = make_context(o);
  std::complex<double> v;
  if (o.which == "f1") {
    v = f1(ctx, o.t);
  } else if (o.which == "f2") {
    v = f2(ctx, o.t);
  } else {
    v = partial_sum_S(ctx, o.X1, o.X2, o.t);
  }
  Json j{{"which", o.which}, {"P", o.P}, {"t", o.t}, {"re", v.real()}, {"im", v.imag()}, {"abs", std::abs(v)}};
  ro.emit(o.out, dump(j));
}

void run_expsum_scan(const Options& o, RunOutputs& ro) {
  if (o.n < 2) throw ValidationError("--n must be at least 2");
  if (!(o.tmax > o.tmin)) throw ValidationError("--tmax must exceed --tmin");
  ExpSumContext ctx = make_context(o);
  const double budget = o.budget > 0.0 ? o.budget : 1e9;
  const double terms = static_cast<double>(o.which == "f1" ? ctx.f1_weights().size() : ctx.f2_weights().size());
  if (terms * o.n > budget) throw BudgetExceeded("expsum-scan refused", terms * o.n, budget);
  const double h = (o.tmax - o.tmin) / (o.n - 1);
  std::vector<std::complex<double>> vals;
  if (o.which == "f1") {
    vals = f1_grid(ctx, o.tmin, h, static_cast<std::size_t>(o.n), o.workers);
  } else {
    vals.resize(static_cast<std::size_t>(o.n));
    parallel_for(vals.size(), o.workers, [&](std::size_t j) { vals[j] = f2(ctx, o.tmin + static_cast<double>(j) * h); });
  }
  std::string csv = "t,re,im,abs\n";
  for (std::size_t j = 0; j < vals.size(); ++j) {
    csv += fmt::format("{},{},{},{}\n", g17(o.tmin + static_cast<double>(j) * h), g17(vals[j].real()),
                       g17(vals[j].imag()), g17(std::abs(vals[j])));
  }
  ro.emit(o.out, csv);
}

void run_zeta(const Options& o, RunOutputs& ro) {
  ZetaValue z = zeta_half_line(o.t);
  Json j{{"t", z.t},
         {"magnitude", z.magnitude},
         {"hardy_z", z.hardy_z},
         {"re", z.value.real()},
         {"im", z.value.imag()},
         {"method", to_string(z.method)},
         {"error_bound", z.error_bound}};
  ro.emit(o.out, dump(j));
}

void run_nearpoints(const Options& o, RunOutputs& ro) {
  CountOptions co;
  co.workers = o.workers;
  if (o.budget > 0.0) co.budget = o.budget;
  FormParams{o.k, o.alpha2, 1.0}.validate();
  SupportParams s = solve_support(o.alpha2, o.k);
  Json j;
  if (o.mode == "surface") {
    if (o.Q < 1 || o.delta < 0.0) throw ValidationError("surface mode needs --Q and --delta");
    MongeSurface surf = MongeSurface::from_support(o.k, o.alpha2, s);
    BumpFamily fam(s);
    j = count_json(count_near_surface(surf, fam, o.Q, o.delta, co));
  } else if (o.mode == "curve") {
    if (o.P < 1 || o.delta < 0.0) throw ValidationError("curve mode needs --P and --delta");
    FormParams fp{o.k, o.alpha2, o.alpha3};
    j = count_json(count_near_curve(fp, static_cast<int>(o.P), o.delta, co));
  } else if (o.mode == "i4") {
    if (o.P < 8 || o.U < 0.0) throw ValidationError("i4 mode needs --P >= 8 and --U");
    if (o.P > co.budget) throw BudgetExceeded("i4 refused", o.P, co.budget);
    ExpSumContext ctx(o.P, FormParams{o.k, o.alpha2, 1.0}, s);
    I4Result r = i4_count(ctx, o.U, co);
    j = Json{{"mode", "i4"}, {"scale", o.P}, {"window", o.U}, {"value", r.value},
             {"weight_sum", r.weight_sum}, {"hits", r.hits}};
  } else if (o.mode == "r") {
    if (o.P < 1) throw ValidationError("r mode needs --P");
    RMode m = o.rmode == "quartic" ? RMode::quartic : RMode::product_pair;
    std::uint64_t c = r_count(static_cast<int>(o.P), o.k, o.U, m, co);
    j = Json{{"mode", "r"}, {"scale", o.P}, {"window", o.U}, {"k", o.k}, {"rmode", o.rmode}, {"count", c}};
  }
  ro.emit(o.out, dump(j));
}

void run_sweep(const Options& o, RunOutputs& ro) {
  std::ifstream in(o.config);
  if (!in) throw ValidationError("cannot read config '" + o.config + "'");
  SweepConfig cfg = SweepConfig::parse(in);
  if (const char* env = std::getenv("TERNDIO_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw ValidationError("TERNDIO_SEED is not an unsigned integer");
    }
    ro.seed_from_env = true;
  }
  ro.seed = cfg.seed;
  if (o.budget > 0.0) cfg.budget = o.budget;
  cfg.workers = o.workers;
  SweepResult res = run_alpha3_sweep(cfg);
  std::ostringstream csv;
  write_sweep_csv(res, csv);
  ro.files.emplace_back(o.out, csv.str());
  Json perP = Json::array();
  for (const PSummary& p : res.per_P) {
    perP.push_back({{"P", p.P},
                    {"median", p.median},
                    {"q10", p.q10},
                    {"q25", p.q25},
                    {"q75", p.q75},
                    {"q90", p.q90},
                    {"median_over_P^(k-2)", p.median_norm_k2},
                    {"median_over_P^(k-3)", p.median_norm_k3},
                    {"median_over_P^(k-12/5)", p.median_norm_k125},
                    {"failure_fraction", p.failure_fraction}});
  }
  Json rules = Json::array();
  for (const ThetaRule& r : cfg.theta_rules) rules.push_back(r.to_string());
  Json summary{{"k", cfg.k}, {"samples", cfg.samples}, {"seed", cfg.seed}, {"theta_rules", rules}, {"per_P", perP}};
  if (res.has_fit) {
    summary["fit"] = {{"slope", res.fit.slope},
                      {"intercept", res.fit.intercept},
                      {"slope_ci95", {res.slope_ci.lo, res.slope_ci.hi}},
                      {"pointwise_exponent", cfg.k - 2},
                      {"generic_exponent", cfg.k - 3}};
  }
  ro.stdout_text += dump(summary);
  if (!o.plots.empty()) {
    const std::array<std::pair<const char*, double>, 4> series{{{"median.dat", 0.0},
                                                                {"median_norm_k-2.dat", cfg.k - 2.0},
                                                                {"median_norm_k-3.dat", cfg.k - 3.0},
                                                                {"median_norm_k-12_5.dat", cfg.k - 2.4}}};
    for (const auto& [name, e] : series) {
      std::ostringstream d;
      write_plot_data(res, e, d);
      ro.files.emplace_back((std::filesystem::path(o.plots) / name).string(), d.str());
    }
  }
}

/// Parses and runs argv without touching the file system for outputs.
/// Returns the manifest describing the run.
RunManifest execute(const std::vector<std::string>& argv, RunOutputs& ro, Options& o, std::ostream& out,
                    std::ostream& err, int& code, bool& handled);

void write_outputs(const RunOutputs& ro, std::ostream& out) {
  for (const auto& [path, text] : ro.files) {
    auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot write '" + path + "'");
    f << text;
  }
  out << ro.stdout_text;
}

std::vector<OutputDigest> digests(const RunOutputs& ro) {
  std::vector<OutputDigest> d;
  if (!ro.stdout_text.empty()) d.push_back({"-", fnv1a_hex(ro.stdout_text)});
  for (const auto& [path, text] : ro.files) d.push_back({path, fnv1a_hex(text)});
  return d;
}

RunManifest execute(const std::vector<std::string>& argv, RunOutputs& ro, Options& o, std::ostream& out,
                    std::ostream& err, int& code, bool& handled) {
  CLI::App app{"Numerics for Diophantine inequalities with ternary diagonal forms", "terndio"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  app.add_option("--workers", o.workers, "worker threads (0 = available parallelism)");
  app.add_option("--manifest", o.manifest_path, "write the run manifest here instead of stderr");
  app.fallthrough();

  auto* mn = app.add_subcommand("min", "minimum of |f| over an integer box");
  mn->add_option("--k", o.k, "degree")->required()->check(CLI::Range(1, 30));
  mn->add_option("--alpha2", o.alpha2)->required();
  mn->add_option("--alpha3", o.alpha3)->required();
  mn->add_option("--pbox", o.pbox, "L1,U1,L2,U2,L3,U3")->required();
  mn->add_option("--method", o.method)->check(CLI::IsMember({"brute", "fast"}))->capture_default_str();
  mn->add_option("--budget", o.budget, "maximum form evaluations (default 1e9)");
  add_out(mn, o, "JSON output file (default stdout)");

  auto* wt = app.add_subcommand("weights", "support constants and bump weights");
  wt->add_option("--alpha2", o.alpha2)->required();
  wt->add_option("--k", o.k)->required()->check(CLI::Range(2, 30));
  wt->add_option("--emit-profile", o.profile, "CSV of x, w1..w4");
  wt->add_option("--n", o.n, "profile points")->capture_default_str();
  add_out(wt, o, "JSON output file (default stdout)");

  auto* es = app.add_subcommand("expsum", "one value of F1, F2 or S");
  es->add_option("--which", o.which)->check(CLI::IsMember({"f1", "f2", "S"}))->capture_default_str();
  es->add_option("--P", o.P)->required();
  es->add_option("--t", o.t)->required();
  es->add_option("--k", o.k)->capture_default_str();
  es->add_option("--alpha2", o.alpha2)->capture_default_str();
  es->add_option("--alpha3", o.alpha3)->capture_default_str();
  es->add_option("--X1", o.X1, "upper x1 limit for S");
  es->add_option("--X2", o.X2, "upper x2 limit for S");
  add_out(es, o, "JSON output file (default stdout)");

  auto* sc = app.add_subcommand("expsum-scan", "F1 or F2 on a uniform t grid");
  sc->add_option("--which", o.which)->check(CLI::IsMember({"f1", "f2"}))->capture_default_str();
  sc->add_option("--P", o.P)->required();
  sc->add_option("--tmin", o.tmin)->required();
  sc->add_option("--tmax", o.tmax)->required();
  sc->add_option("--n", o.n, "grid points")->capture_default_str();
  sc->add_option("--k", o.k)->capture_default_str();
  sc->add_option("--alpha2", o.alpha2)->capture_default_str();
  sc->add_option("--budget", o.budget, "maximum term evaluations (default 1e9)");
  sc->add_option("--out", o.out, "CSV output file")->required();

  auto* zt = app.add_subcommand("zeta", "zeta on the critical line");
  zt->add_option("--t", o.t)->required();
  add_out(zt, o, "JSON output file (default stdout)");

  auto* np = app.add_subcommand("nearpoints", "counts of points near surfaces and curves");
  np->add_option("--mode", o.mode)->required()->check(CLI::IsMember({"surface", "curve", "i4", "r"}));
  np->add_option("--k", o.k)->capture_default_str();
  np->add_option("--alpha2", o.alpha2)->required();
  np->add_option("--alpha3", o.alpha3)->capture_default_str();
  np->add_option("--Q", o.Q);
  np->add_option("--P", o.P);
  np->add_option("--delta", o.delta);
  np->add_option("--U", o.U);
  np->add_option("--rmode", o.rmode)->check(CLI::IsMember({"quartic", "product-pair"}))->capture_default_str();
  np->add_option("--budget", o.budget, "largest admissible Q or P (default 2000)");
  add_out(np, o, "JSON output file (default stdout)");

  auto* sw = app.add_subcommand("sweep", "alpha3 sampling of minimum values");
  sw->add_option("--config", o.config, "key = value config file")->required();
  sw->add_option("--out", o.out, "CSV output file")->required();
  sw->add_option("--plots", o.plots, "directory for two-column plot data");
  sw->add_option("--budget", o.budget, "override the config evaluation budget");

  auto* rp = app.add_subcommand("replay", "rerun a manifest and compare output digests");
  rp->add_option("manifest", o.replay_manifest, "manifest file")->required();

  std::vector<const char*> cargv;
  for (const auto& a : argv) cargv.push_back(a.c_str());
  handled = false;
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    handled = true;
    int rc = app.exit(e, out, err);
    code = rc == 0 ? kOk : kValidation;
    return {};
  }
  if (o.workers == 0) o.workers = default_workers();

  RunManifest m;
  m.version = kVersion;
  m.argv = argv;
  CLI::App* sub = app.get_subcommands().front();
  m.subcommand = sub->get_name();
  m.parameters.emplace_back("workers", std::to_string(o.workers));
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt == sub->get_help_ptr()) continue;
    std::string name = opt->get_name();
    std::string value;
    if (opt->count() > 0) {
      for (const auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
    } else {
      value = opt->get_default_str();
    }
    m.parameters.emplace_back(name, value);
  }

  const std::string& s = m.subcommand;
  if (s == "min") run_min(o, ro);
  else if (s == "weights") run_weights(o, ro);
  else if (s == "expsum") run_expsum(o, ro);
  else if (s == "expsum-scan") run_expsum_scan(o, ro);
  else if (s == "zeta") run_zeta(o, ro);
  else if (s == "nearpoints") run_nearpoints(o, ro);
  else if (s == "sweep") run_sweep(o, ro);
  m.seed = ro.seed;
  m.seed_from_env = ro.seed_from_env;
  m.outputs = digests(ro);
  return m;
}

int replay(const Options& o, std::ostream& out, std::ostream& err) {
  std::ifstream in(o.replay_manifest);
  if (!in) throw ValidationError("cannot read manifest '" + o.replay_manifest + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  RunManifest recorded = RunManifest::from_json(buf.str());
  if (recorded.subcommand == "replay") throw ValidationError("cannot replay a replay");
  RunOutputs ro;
  Options inner;
  int code = kOk;
  bool handled = false;
  std::ostringstream sink_out, sink_err;
  RunManifest again = execute(recorded.argv, ro, inner, sink_out, sink_err, code, handled);
  if (handled) throw ValidationError("recorded command line no longer parses");
  Json rows = Json::array();
  bool match = again.outputs.size() == recorded.outputs.size();
  for (std::size_t i = 0; i < recorded.outputs.size(); ++i) {
    std::string actual = i < again.outputs.size() ? again.outputs[i].fnv1a : "";
    match = match && actual == recorded.outputs[i].fnv1a && again.outputs[i].target == recorded.outputs[i].target;
    rows.push_back({{"target", recorded.outputs[i].target}, {"expected", recorded.outputs[i].fnv1a}, {"actual", actual}});
  }
  out << dump(Json{{"match", match}, {"outputs", rows}});
  if (!match) err << "terndio: replay produced different outputs\n";
  return match ? kOk : kValidation;
}

}  // namespace

int dispatch(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  RunOutputs ro;
  Options o;
  int code = kOk;
  bool handled = false;
  try {
    auto start = std::chrono::steady_clock::now();
    RunManifest m = execute(argv, ro, o, out, err, code, handled);
    if (handled) return code;
    if (m.subcommand == "replay") return replay(o, out, err);
    write_outputs(ro, out);
    m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.manifest_path.empty()) {
      err << m.to_json();
    } else {
      std::ofstream f(o.manifest_path, std::ios::binary);
      if (!f) throw ValidationError("cannot write manifest '" + o.manifest_path + "'");
      f << m.to_json();
    }
    return kOk;
  } catch (const BudgetExceeded& e) {
    err << "terndio: " << e.what() << " (required " << e.required() << ", budget " << e.budget() << ")\n";
    return kBudget;
  } catch (const std::exception& e) {
    err << "terndio: " << e.what() << "\n";
    return kValidation;
  }
}

}  // namespace terndio::cli
