#include "core/harness.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "core/counterexamples.hpp"
#include "core/error_eval.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"

namespace condlab {

namespace {

using nlohmann::json;

json num_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return fmt_num(v.get<double>());
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  return std::to_string(v.get<long long>());
}

struct Table {
  std::vector<std::string> cols;
  std::vector<std::vector<json>> rows;

  void add(std::vector<json> row) { rows.push_back(std::move(row)); }

  std::string csv() const {
    std::string out;
    for (size_t i = 0; i < cols.size(); ++i) {
      if (i) out += ',';
      out += cols[i];
    }
    out += '\n';
    for (const auto& r : rows) {
      for (size_t i = 0; i < r.size(); ++i) {
        if (i) out += ',';
        out += csv_cell(r[i]);
      }
      out += '\n';
    }
    return out;
  }

  json as_json() const {
    json arr = json::array();
    for (const auto& r : rows) {
      json o;
      for (size_t i = 0; i < cols.size() && i < r.size(); ++i) o[cols[i]] = r[i];
      arr.push_back(std::move(o));
    }
    return arr;
  }
};

struct Writer {
  std::filesystem::path dir;
  std::vector<std::string>* files;

  void text(const std::string& name, const std::string& body) const {
    std::ofstream f(dir / name, std::ios::binary);
    f << body;
    files->push_back(name);
  }

  void doc(const std::string& name, const json& j) const { text(name, j.dump(2) + "\n"); }

  void table(const std::string& stem, const Table& t, Format format) const {
    if (format == Format::csv)
      text(stem + ".csv", t.csv());
    else
      doc(stem + ".json", t.as_json());
  }
};

double binom_stderr(double phat, long long n) {
  if (n < 1) return 0.0;
  return std::sqrt(std::max(0.0, phat * (1.0 - phat)) / static_cast<double>(n));
}

std::string describe(double v) { return fmt_num(v); }

void add_check(RunResult& rr, std::string name, bool pass, std::string detail) {
  rr.checks.push_back(CheckResult{std::move(name), pass, std::move(detail)});
}

// -------------------------------------------------------------- generate

Table run_generate(const Config& c, json& extra) {
  long long n = c.ns[0];
  Labels ys = c.process->sample(n, derive_seed(c.seed, 0));
  LabeledSample s = sample_objects(*c.pair, ys, derive_seed(c.seed, 1));
  Table t;
  t.cols.push_back("i");
  for (int k = 0; k < s.dim; ++k) t.cols.push_back("x" + std::to_string(k));
  t.cols.push_back("y");
  long long ones = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    std::vector<json> row;
    row.emplace_back(static_cast<long long>(i));
    for (double x : s.x(i)) row.emplace_back(num_json(x));
    row.emplace_back(s.y(i));
    t.add(std::move(row));
    ones += s.y(i);
  }
  extra["n"] = n;
  extra["ones"] = ones;
  return t;
}

// ----------------------------------------------------------- consistency

Table run_consistency(const Config& c, RunResult& rr, json& extra) {
  CurveOptions opt;
  opt.ns = c.ns;
  opt.eps = c.eps;
  opt.runs = c.runs;
  opt.seed = c.seed;
  opt.threads = c.threads;
  opt.eval.mc_draws = c.mc_draws;
  auto curve = error_prob_curve(*c.classifier, *c.pair, *c.process, opt);

  Table t;
  t.cols = {"n", "runs", "mean_err", "stderr_mean"};
  for (double e : c.eps) t.cols.push_back("exceed_" + fmt_num(e));
  for (double e : c.eps) t.cols.push_back("exceed_stderr_" + fmt_num(e));
  for (const auto& pt : curve) {
    std::vector<json> row{pt.n, pt.runs, num_json(pt.mean), num_json(pt.stderr_)};
    for (double v : pt.exceed) row.emplace_back(num_json(v));
    for (double v : pt.exceed_stderr) row.emplace_back(num_json(v));
    t.add(std::move(row));
  }

  std::string means;
  for (const auto& pt : curve) {
    if (!means.empty()) means += ' ';
    means += describe(pt.mean);
  }
  extra["means"] = means;

  if (c.checks.monotone_decreasing) {
    bool ok = curve.size() >= 2;
    for (size_t i = 1; i < curve.size(); ++i) ok = ok && curve[i].mean < curve[i - 1].mean;
    add_check(rr, "mean error strictly decreases", ok, "means: " + means);
  }
  if (c.checks.final_mean_below) {
    double last = curve.empty() ? 1.0 : curve.back().mean;
    bool ok = last < *c.checks.final_mean_below;
    add_check(rr, "final mean error below " + fmt_num(*c.checks.final_mean_below), ok,
              "final mean: " + describe(last));
  }
  return t;
}

// ----------------------------------------------------------- kappa-check

Table run_kappa_check(const Config& c, RunResult& rr) {
  double p = c.process->get_if<IidBernoulli>()->p;
  Table t;
  t.cols = {"n", "runs", "p", "kappa", "exceed", "stderr", "bound", "pass"};
  for (size_t ni = 0; ni < c.ns.size(); ++ni) {
    long long n = c.ns[ni];
    long long kap = bounds::kappa(n);
    long long runs = c.runs;
    std::uint64_t n_seed = derive_seed(c.seed, ni);
    std::vector<std::uint8_t> hit(static_cast<size_t>(runs), 0);
    parallel_for(static_cast<size_t>(runs), c.threads, [&](size_t r) {
      Labels ys = c.process->sample(n, derive_seed(n_seed, r));
      long long ones = 0;
      for (auto y : ys) ones += y;
      double dev = std::abs(static_cast<double>(ones) - static_cast<double>(n) * p);
      hit[r] = dev > static_cast<double>(kap) ? 1 : 0;
    });
    long long cnt = 0;
    for (auto h : hit) cnt += h;
    double exceed = static_cast<double>(cnt) / static_cast<double>(runs);
    double se = binom_stderr(exceed, runs);
    double bound = 2.0 / (static_cast<double>(n) * static_cast<double>(n));
    bool pass = exceed <= bound + 4.0 * se;
    t.add({n, runs, num_json(p), kap, num_json(exceed), num_json(se), num_json(bound), pass});
    add_check(rr, "deviation tail at n=" + std::to_string(n), pass,
              "exceed=" + describe(exceed) + " bound=" + describe(bound) +
                  " stderr=" + describe(se));
  }
  return t;
}

// ----------------------------------------------------------- nabla-sweep

Table run_nabla_sweep(const Config& c, json& extra) {
  EvalOptions eval;
  eval.mc_draws = c.mc_draws;
  double eps = c.eps[0];
  Table t;
  t.cols = {"n", "eps", "p", "exceed", "stderr", "is_argmax"};
  json sups = json::array();
  for (size_t ni = 0; ni < c.ns.size(); ++ni) {
    long long n = c.ns[ni];
    NablaReport rep = nabla_estimate(*c.classifier, *c.pair, *c.delta, n, eps, c.grid, c.runs,
                                     derive_seed(c.seed, ni), c.threads, eval);
    for (const auto& pt : rep.points)
      t.add({n, num_json(eps), num_json(pt.p), num_json(pt.exceed), num_json(pt.stderr_),
             pt.p == rep.argmax_p});
    sups.push_back(json{{"n", n},
                        {"value", num_json(rep.value)},
                        {"stderr", num_json(rep.stderr_)},
                        {"argmax_p", num_json(rep.argmax_p)}});
  }
  extra["sup"] = std::move(sups);
  return t;
}

// ------------------------------------------------------------- tolerance

tolerance::Options tolerance_options(const Config& c, tolerance::Mode mode) {
  tolerance::Options opt;
  opt.mode = mode;
  opt.search = c.tol.search;
  opt.kappa = c.tol.kappa;
  opt.budget = c.tol.budget;
  opt.fresh_per_class = c.tol.fresh_per_class;
  opt.mc_draws = c.mc_draws;
  return opt;
}

void add_dist_row(Table& t, long long n, double eps, double p,
                  const tolerance::DistReport& r) {
  t.add({n, num_json(eps), num_json(p), r.runs, num_json(r.exceed), num_json(r.stderr_),
         num_json(r.mean_value), num_json(r.max_value), r.lower_bound});
}

Table run_tolerance(const Config& c, const Writer& w, json& extra) {
  tolerance::Options opt = tolerance_options(c, c.tol.mode);
  Table t;
  t.cols = {"n",      "eps",        "p",         "runs",      "exceed",
            "stderr", "mean_value", "max_value", "lower_bound"};
  for (size_t ni = 0; ni < c.ns.size(); ++ni) {
    long long n = c.ns[ni];
    for (size_t ej = 0; ej < c.eps.size(); ++ej) {
      double e = c.eps[ej];
      std::uint64_t seed = derive_seed(c.seed, 100 + ni * c.eps.size() + ej);
      if (c.grid == 1) {
        auto r = tolerance::tolerance_exceed_prob(*c.classifier, *c.pair, c.tol.p, n, e, opt,
                                                  c.runs, seed, c.threads);
        add_dist_row(t, n, e, c.tol.p, r);
      } else {
        auto s = tolerance::tolerance_sup(*c.classifier, *c.pair, *c.delta, n, e, opt, c.grid,
                                          c.runs, seed, c.threads);
        for (size_t k = 0; k < s.points.size(); ++k) add_dist_row(t, n, e, s.ps[k], s.points[k]);
      }
    }
  }

  // one deterministic instance per n, with the witness spelled out
  json reports = json::array();
  for (size_t ni = 0; ni < c.ns.size(); ++ni) {
    long long n = c.ns[ni];
    Rng label_rng(derive_seed(c.seed, 500 + ni));
    Labels ys(static_cast<size_t>(n));
    for (auto& y : ys) y = label_rng.bernoulli(c.tol.p) ? 1 : 0;
    LabeledSample sample = sample_objects(*c.pair, ys, derive_seed(c.seed, 600 + ni));
    tolerance::Options popt = opt;
    popt.seed = derive_seed(c.seed, 700 + ni);
    auto rep = tolerance::tolerance_pointwise(*c.classifier, *c.pair, c.tol.p, sample, popt);
    json witness;
    witness["removed"] = rep.witness.removed;
    json repl = json::array();
    for (const auto& [idx, obj] : rep.witness.replaced) {
      json x = json::array();
      for (double v : obj.first) x.push_back(num_json(v));
      repl.push_back(json{{"i", idx}, {"x", std::move(x)}, {"y", obj.second}});
    }
    witness["replaced"] = std::move(repl);
    reports.push_back(json{{"n", n},
                           {"p", num_json(c.tol.p)},
                           {"kappa", rep.kappa},
                           {"base_error", num_json(rep.base_error)},
                           {"value", num_json(rep.value)},
                           {"evaluations", rep.evaluations},
                           {"exhaustive", rep.exhaustive},
                           {"witness", std::move(witness)}});
  }
  w.doc("tolerance.json", reports);
  extra["pointwise"] = "tolerance.json";
  return t;
}

// -------------------------------------------------------- counterexample

Table run_counterexample(const Config& c, RunResult& rr) {
  Table t;
  if (c.counter.variant == "alternating") {
    t.cols = {"n", "conditional_error", "iid_count_prob", "iid_alternating_prob",
              "two_pow_bound"};
    for (long long n : c.ns) {
      auto r = counterexamples::alternating_labels(n, c.counter.p);
      t.add({n, num_json(r.conditional_error), num_json(r.iid_count_prob),
             num_json(r.iid_alternating_prob), num_json(r.two_pow_bound)});
    }
    return t;
  }
  auto rows = counterexamples::schedule_simulation(c.counter.atoms, c.counter.rule,
                                                   c.counter.horizon, c.runs, c.seed, c.threads);
  t.cols = {"step", "n", "mean_err1", "min_err1", "runs"};
  for (const auto& r : rows) t.add({r.step, r.n, num_json(r.mean_err1), num_json(r.min_err1), r.runs});
  if (c.checks.min_mean_err1_above) {
    double best = 2.0;
    long long at = -1;
    for (const auto& r : rows)
      if (r.n > c.checks.after_n && r.mean_err1 < best) {
        best = r.mean_err1;
        at = r.n;
      }
    bool any = at >= 0;
    bool ok = any && best >= *c.checks.min_mean_err1_above;
    add_check(rr, "class-1 error stays above " + fmt_num(*c.checks.min_mean_err1_above), ok,
              any ? "min mean_err1 over n > " + std::to_string(c.checks.after_n) + ": " +
                        describe(best) + " (at n=" + std::to_string(at) + ")"
                  : "no steps beyond after_n");
  }
  return t;
}

// ----------------------------------------------------------- bound-check

bool is_vc(Formula f) {
  return f == Formula::vc_agnostic || f == Formula::vc_agnostic_shifted ||
         f == Formula::vc_realizable || f == Formula::vc_uniform_dev;
}

bounds::BoundValue eval_vc(Formula f, const bounds::ShatterFn& S, long long n, double e) {
  switch (f) {
    case Formula::vc_agnostic: return bounds::vc_agnostic(S, n, e);
    case Formula::vc_agnostic_shifted: return bounds::vc_agnostic_shifted(S, n, e);
    case Formula::vc_realizable: return bounds::vc_realizable(S, n, e);
    default: return bounds::vc_uniform_dev(S, n, e);
  }
}

void bound_row_check(const Config& c, RunResult& rr, Table& t, std::vector<json> row,
                     Formula f, long long n, double e, bool vacuous, double rhs_clamped,
                     double empirical, double se) {
  if (vacuous) {
    row.emplace_back(nullptr);
    t.add(std::move(row));
    return;
  }
  bool ok = empirical <= rhs_clamped + 4.0 * se;
  row.emplace_back(ok);
  t.add(std::move(row));
  add_check(rr, std::string(formula_name(f)) + " n=" + std::to_string(n) + " eps=" + fmt_num(e),
            ok, "empirical=" + describe(empirical) + " rhs=" + describe(rhs_clamped) +
                    " stderr=" + describe(se));
  (void)c;
}

Table run_bound_check(const Config& c, RunResult& rr, json& extra) {
  Formula f = c.bound.formula;
  const bounds::ShatterFn& S = c.bound.shatter;
  Table t;

  if (is_vc(f)) {
    t.cols = {"formula", "n", "eps", "rhs", "log_rhs", "vacuous"};
    for (long long n : c.ns)
      for (double e : c.eps) {
        auto b = eval_vc(f, S, n, e);
        t.add({std::string(formula_name(f)), n, num_json(e), num_json(b.clamped),
               num_json(b.log_value), b.vacuous});
      }
    return t;
  }

  if (f == Formula::tolerance_agnostic || f == Formula::tolerance_realizable) {
    // both tails bound the deletion functional, so the empirical side is
    // always searched in deletion mode
    tolerance::Options opt = tolerance_options(c, tolerance::Mode::deletion);
    t.cols = {"formula",   "n",         "eps",        "rhs",         "log_rhs", "vacuous",
              "empirical", "emp_stderr", "lower_bound", "pass"};
    for (size_t ni = 0; ni < c.ns.size(); ++ni) {
      long long n = c.ns[ni];
      for (size_t ej = 0; ej < c.eps.size(); ++ej) {
        double e = c.eps[ej];
        auto b = f == Formula::tolerance_agnostic ? bounds::erm_tolerance_agnostic(S, n, e)
                                                  : bounds::erm_tolerance_realizable(S, n, e);
        std::uint64_t seed = derive_seed(c.seed, 100 + ni * c.eps.size() + ej);
        double emp, se;
        bool lower;
        if (c.grid == 1) {
          auto r = tolerance::tolerance_exceed_prob(*c.classifier, *c.pair, c.tol.p, n, e, opt,
                                                    c.runs, seed, c.threads);
          emp = r.exceed;
          se = r.stderr_;
          lower = r.lower_bound;
        } else {
          auto s = tolerance::tolerance_sup(*c.classifier, *c.pair, *c.delta, n, e, opt, c.grid,
                                            c.runs, seed, c.threads);
          emp = s.value;
          se = s.stderr_;
          lower = false;
          for (const auto& pt : s.points) lower = lower || pt.lower_bound;
        }
        std::vector<json> row{std::string(formula_name(f)),
                              n,
                              num_json(e),
                              num_json(b.clamped),
                              num_json(b.log_value),
                              b.vacuous,
                              num_json(emp),
                              num_json(se),
                              lower};
        bound_row_check(c, rr, t, std::move(row), f, n, e, b.vacuous, b.clamped, emp, se);
      }
    }
    return t;
  }

  // the error-tail and plug-in families compare against the empirical
  // exceedance of the next-step error under the configured label process
  CurveOptions copt;
  copt.ns = c.ns;
  copt.eps = c.eps;
  copt.runs = c.runs;
  copt.seed = derive_seed(c.seed, 1);
  copt.threads = c.threads;
  copt.eval.mc_draws = c.mc_draws;
  auto curve = error_prob_curve(*c.classifier, *c.pair, *c.process, copt);
  double delta = *c.delta;

  if (f == Formula::error_agnostic || f == Formula::error_realizable) {
    t.cols = {"formula", "n",       "eps",        "delta", "c_n", "rhs",
              "log_rhs", "vacuous", "empirical", "emp_stderr", "pass"};
    for (size_t ni = 0; ni < c.ns.size(); ++ni) {
      long long n = c.ns[ni];
      double c_n = c.process->occupancy(delta, n).value;
      for (size_t ej = 0; ej < c.eps.size(); ++ej) {
        double e = c.eps[ej];
        auto b = f == Formula::error_agnostic
                     ? bounds::erm_error_agnostic(S, n, delta, e, c_n, c.bound.indicator)
                     : bounds::erm_error_realizable(S, n, delta, e, c_n);
        double emp = curve[ni].exceed[ej];
        double se = curve[ni].exceed_stderr[ej];
        std::vector<json> row{std::string(formula_name(f)),
                              n,
                              num_json(e),
                              num_json(delta),
                              num_json(c_n),
                              num_json(b.clamped),
                              num_json(b.log_value),
                              b.vacuous,
                              num_json(emp),
                              num_json(se)};
        bound_row_check(c, rr, t, std::move(row), f, n, e, b.vacuous, b.clamped, emp, se);
      }
    }
    return t;
  }

  // plug-in: feed measured sup and tolerance terms through the closed form
  auto mode = f == Formula::plugin_deletion ? bounds::ToleranceMode::deletion
                                            : bounds::ToleranceMode::replacement;
  auto tmode = f == Formula::plugin_deletion ? tolerance::Mode::deletion
                                             : tolerance::Mode::replacement;
  EvalOptions eval;
  eval.mc_draws = c.mc_draws;
  t.cols = {"formula",  "n",     "eps",        "delta",     "c_n",        "alpha",
            "eval_n",   "eval_eps", "nabla",   "nabla_stderr", "tol_sup", "tol_stderr",
            "rhs",      "vacuous", "empirical", "emp_stderr", "pass"};
  json ingredients = json::array();
  for (size_t ni = 0; ni < c.ns.size(); ++ni) {
    long long n = c.ns[ni];
    double c_n = c.process->occupancy(delta, n).value;
    long long eval_n = bounds::plugin_eval_n(n, mode, c.bound.proof_form);
    for (size_t ej = 0; ej < c.eps.size(); ++ej) {
      double e = c.eps[ej];
      double eval_eps = delta * e / 2.0;
      size_t salt = ni * c.eps.size() + ej;
      NablaReport nab = nabla_estimate(*c.classifier, *c.pair, delta, eval_n, eval_eps, c.grid,
                                       c.runs, derive_seed(c.seed, 200 + salt), c.threads, eval);
      tolerance::Options opt = tolerance_options(c, tmode);
      auto sup = tolerance::tolerance_sup(*c.classifier, *c.pair, delta, eval_n, eval_eps, opt,
                                          c.grid, c.runs, derive_seed(c.seed, 300 + salt),
                                          c.threads);
      auto pb = bounds::plugin_error_bound(c_n, n, delta, e,
                                           {nab.value, eval_n, eval_eps},
                                           {sup.value, eval_n, eval_eps}, mode,
                                           c.bound.proof_form);
      double rhs = std::min(pb.value, 1.0);
      double emp = curve[ni].exceed[ej];
      double se = curve[ni].exceed_stderr[ej];
      std::vector<json> row{std::string(formula_name(f)),
                            n,
                            num_json(e),
                            num_json(delta),
                            num_json(pb.c_n),
                            num_json(pb.alpha_n),
                            pb.eval_n,
                            num_json(pb.eval_eps),
                            num_json(nab.value),
                            num_json(nab.stderr_),
                            num_json(sup.value),
                            num_json(sup.stderr_),
                            num_json(rhs),
                            pb.vacuous,
                            num_json(emp),
                            num_json(se)};
      bound_row_check(c, rr, t, std::move(row), f, n, e, pb.vacuous, rhs, emp, se);
      ingredients.push_back(json{{"n", n},
                                 {"eps", num_json(e)},
                                 {"eval_n", pb.eval_n},
                                 {"eval_eps", num_json(pb.eval_eps)},
                                 {"nabla_argmax_p", num_json(nab.argmax_p)},
                                 {"tol_argmax_p", num_json(sup.argmax_p)}});
    }
  }
  extra["plugin_terms"] = std::move(ingredients);
  return t;
}

}  // namespace

std::string fmt_num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

RunResult run(const Config& cfg) {
  namespace fs = std::filesystem;
  RunResult rr;
  fs::create_directories(cfg.out);
  Writer w{fs::path(cfg.out), &rr.files};

  json manifest;
  manifest["tool"] = kToolName;
  manifest["version"] = kToolVersion;
  manifest["kind"] = std::string(kind_name(cfg.kind));
  manifest["seed"] = cfg.seed;
  manifest["format"] = std::string(format_name(cfg.format));
  json echo = config_json(cfg);
  // where the artifacts land and how many workers ran must not change a
  // single output byte, so neither belongs in the reproduction recipe
  echo.erase("out");
  echo.erase("threads");
  manifest["config"] = std::move(echo);
  w.doc("manifest.json", manifest);

  json extra;
  Table t;
  switch (cfg.kind) {
    case Kind::generate: t = run_generate(cfg, extra); break;
    case Kind::consistency: t = run_consistency(cfg, rr, extra); break;
    case Kind::bound_check: t = run_bound_check(cfg, rr, extra); break;
    case Kind::tolerance: t = run_tolerance(cfg, w, extra); break;
    case Kind::counterexample: t = run_counterexample(cfg, rr); break;
    case Kind::kappa_check: t = run_kappa_check(cfg, rr); break;
    case Kind::nabla_sweep: t = run_nabla_sweep(cfg, extra); break;
  }
  w.table("results", t, cfg.format);

  json s;
  s["tool"] = kToolName;
  s["version"] = kToolVersion;
  s["kind"] = std::string(kind_name(cfg.kind));
  s["ok"] = rr.all_pass();
  json checks = json::array();
  for (const auto& c : rr.checks)
    checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  s["checks"] = std::move(checks);
  s["rows"] = t.rows.size();
  if (!extra.is_null()) s["details"] = std::move(extra);
  json files = rr.files;
  files.push_back("summary.json");
  s["files"] = std::move(files);
  w.doc("summary.json", s);
  rr.summary = std::move(s);
  return rr;
}

}  // namespace condlab
