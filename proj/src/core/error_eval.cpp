#include "core/error_eval.hpp"

#include <cmath>

#include "core/parallel.hpp"

namespace condlab {

namespace {

double binom_stderr(double p, long long n) {
  return std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(n));
}

ErrorEstimate class_error(const Fitted& f, const ClassPair& pair, int y, const EvalOptions& eval,
                          std::uint64_t salt) {
  if (eval.mc_draws) return class_error_mc(f, pair, y, *eval.mc_draws, derive_seed(eval.seed, salt));
  return class_error_exact(f, pair, y);
}

}  // namespace

ErrorEstimate class_error_exact(const Fitted& f, const ClassPair& pair, int y) {
  const PiecewiseConstant1D* pc = f.regions();
  if (!pc) fail(Errc::unsupported_dimension, "exact class error needs one-dimensional decision regions");
  ErrorEstimate e;
  e.value = pair.class_measure(y, pc->where(1 - y));
  return e;
}

ErrorEstimate class_error_mc(const Fitted& f, const ClassPair& pair, int y, long long draws,
                             std::uint64_t seed) {
  if (draws < 1) fail(Errc::invalid_argument, "draws must be >= 1");
  Rng rng(seed);
  std::vector<double> x(static_cast<size_t>(pair.dim()));
  long long bad = 0;
  for (long long i = 0; i < draws; ++i) {
    pair.sample_one(y, rng, x.data());
    if (f.predict(x) != y) ++bad;
  }
  ErrorEstimate e;
  e.value = static_cast<double>(bad) / static_cast<double>(draws);
  e.exact = false;
  e.draws = draws;
  e.stderr_ = binom_stderr(e.value, draws);
  return e;
}

StepError step_error(const Fitted& f, const ClassPair& pair, const LabelProcess& process,
                     std::span<const std::uint8_t> history, const EvalOptions& eval) {
  StepError s;
  s.q = process.next_label_prob(history);
  s.err0 = class_error(f, pair, 0, eval, 11);
  s.err1 = class_error(f, pair, 1, eval, 13);
  s.value = s.q * s.err1.value + (1.0 - s.q) * s.err0.value;
  return s;
}

std::vector<CurvePoint> error_prob_curve(const ClassifierSpec& spec, const ClassPair& pair,
                                         const LabelProcess& process, const CurveOptions& opt) {
  if (opt.runs < 1) fail(Errc::invalid_argument, "runs must be >= 1");
  std::vector<CurvePoint> out;
  for (size_t ni = 0; ni < opt.ns.size(); ++ni) {
    const long long n = opt.ns[ni];
    std::uint64_t n_seed = derive_seed(opt.seed, ni);
    std::vector<double> errs(static_cast<size_t>(opt.runs));
    parallel_for(static_cast<size_t>(opt.runs), opt.threads, [&](size_t r) {
      std::uint64_t run_seed = derive_seed(n_seed, r);
      Labels ys = process.sample(n, derive_seed(run_seed, 0));
      LabeledSample sample = sample_objects(pair, ys, derive_seed(run_seed, 1));
      FittedPtr f = fit(spec, sample);
      EvalOptions ev = opt.eval;
      ev.seed = derive_seed(run_seed, 2);
      errs[r] = step_error(*f, pair, process, ys, ev).value;
    });
    CurvePoint pt;
    pt.n = n;
    pt.runs = opt.runs;
    double sum = 0.0;
    for (double e : errs) sum += e;
    pt.mean = sum / static_cast<double>(opt.runs);
    double ss = 0.0;
    for (double e : errs) ss += (e - pt.mean) * (e - pt.mean);
    pt.stderr_ = opt.runs > 1
                     ? std::sqrt(ss / (static_cast<double>(opt.runs) * (static_cast<double>(opt.runs) - 1.0)))
                     : 0.0;
    for (double eps : opt.eps) {
      long long hit = 0;
      for (double e : errs) hit += e > eps;
      double frac = static_cast<double>(hit) / static_cast<double>(opt.runs);
      pt.exceed.push_back(frac);
      pt.exceed_stderr.push_back(binom_stderr(frac, opt.runs));
    }
    out.push_back(std::move(pt));
  }
  return out;
}

NablaReport nabla_estimate(const ClassifierSpec& spec, const ClassPair& pair, double delta,
                           long long n, double eps, int grid, long long runs, std::uint64_t seed,
                           int threads, const EvalOptions& eval) {
  if (!(delta > 0.0 && delta <= 0.5)) fail(Errc::invalid_argument, "delta must lie in (0, 0.5]");
  if (grid < 1) fail(Errc::invalid_argument, "grid must be >= 1");
  NablaReport rep;
  for (int g = 0; g < grid; ++g) {
    double p = grid == 1 ? 0.5 : delta + (1.0 - 2.0 * delta) * static_cast<double>(g) / (grid - 1.0);
    LabelProcess process{IidBernoulli{p}};
    CurveOptions copt;
    copt.ns = {n};
    copt.eps = {eps};
    copt.runs = runs;
    copt.seed = derive_seed(seed, static_cast<std::uint64_t>(g));
    copt.threads = threads;
    copt.eval = eval;
    CurvePoint pt = error_prob_curve(spec, pair, process, copt)[0];
    rep.points.push_back({p, pt.exceed[0], pt.exceed_stderr[0]});
  }
  rep.value = -1.0;
  for (const auto& q : rep.points) {
    if (q.exceed > rep.value) {
      rep.value = q.exceed;
      rep.stderr_ = q.stderr_;
      rep.argmax_p = q.p;
    }
  }
  return rep;
}

}  // namespace condlab
