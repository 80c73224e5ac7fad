#include "core/tolerance.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "core/bounds.hpp"
#include "core/parallel.hpp"

namespace condlab::tolerance {

namespace {

constexpr double kEnumExactCap = 2e6;    // exact search refuses beyond this
constexpr double kEnumStreamCap = 2e5;   // stochastic search enumerates below this

struct Pool {
  std::vector<std::vector<double>> points;
  std::vector<int> labels;

  size_t size() const { return points.size(); }
};

Pool build_pool(const ClassPair& pair, const LabeledSample& sample, long long fresh,
                std::uint64_t seed) {
  Pool pool;
  const int d = pair.dim();
  std::set<std::vector<double>> seen;
  auto push = [&](const std::vector<double>& pt) {
    if (!seen.insert(pt).second) return;
    pool.points.push_back(pt);
    pool.labels.push_back(pair.eta(pt));
  };
  if (d == 1)
    for (double x : pair.support_extremes()) push({x});
  for (size_t i = 0; i < sample.size(); ++i) push({sample.x(i).begin(), sample.x(i).end()});
  Rng rng(derive_seed(seed, 31));
  std::vector<double> buf(static_cast<size_t>(d));
  for (int y = 0; y <= 1; ++y)
    for (long long k = 0; k < fresh; ++k) {
      pair.sample_one(y, rng, buf.data());
      push(buf);
    }
  return pool;
}

// fits on a perturbed copy of the sample and reports the mixture error
// p * err1 + (1-p) * err0
class Evaluator {
 public:
  Evaluator(const ClassifierSpec& spec, const ClassPair& pair, double p, const LabeledSample& base,
            const std::optional<long long>& mc_draws, std::uint64_t seed)
      : spec_(spec), pair_(pair), p_(p), base_(base), mc_draws_(mc_draws), seed_(seed) {}

  double mix_err(const Fitted& f) const {
    double e0, e1;
    if (mc_draws_) {
      e0 = class_error_mc(f, pair_, 0, *mc_draws_, derive_seed(seed_, 11)).value;
      e1 = class_error_mc(f, pair_, 1, *mc_draws_, derive_seed(seed_, 13)).value;
    } else {
      e0 = class_error_exact(f, pair_, 0).value;
      e1 = class_error_exact(f, pair_, 1).value;
    }
    return p_ * e1 + (1.0 - p_) * e0;
  }

  double full() const { return mix_err(*fit(spec_, base_)); }

  double deleted(const std::vector<size_t>& removed) const {
    LabeledSample s;
    s.dim = base_.dim;
    const size_t d = static_cast<size_t>(base_.dim);
    for (size_t i = 0; i < base_.size(); ++i) {
      if (std::binary_search(removed.begin(), removed.end(), i)) continue;
      s.xs.insert(s.xs.end(), base_.xs.begin() + static_cast<long>(i * d),
                  base_.xs.begin() + static_cast<long>((i + 1) * d));
      s.ys.push_back(base_.ys[i]);
    }
    return mix_err(*fit(spec_, s));
  }

  double replaced(const std::vector<std::pair<size_t, size_t>>& asgn, const Pool& pool) const {
    LabeledSample s = base_;
    const size_t d = static_cast<size_t>(base_.dim);
    for (const auto& [i, pi] : asgn) {
      std::copy(pool.points[pi].begin(), pool.points[pi].end(), s.xs.begin() + static_cast<long>(i * d));
      s.ys[i] = static_cast<std::uint8_t>(pool.labels[pi]);
    }
    return mix_err(*fit(spec_, s));
  }

 private:
  const ClassifierSpec& spec_;
  const ClassPair& pair_;
  double p_;
  const LabeledSample& base_;
  std::optional<long long> mc_draws_;
  std::uint64_t seed_;
};

// subsets of {0..n-1} of size 1..jmax, sizes ascending, lexicographic
// within a size; f returns false to stop early
template <class F>
bool for_each_subset(size_t n, long long jmax, F&& f) {
  for (long long j = 1; j <= jmax; ++j) {
    if (static_cast<size_t>(j) > n) break;
    std::vector<size_t> c(static_cast<size_t>(j));
    for (size_t i = 0; i < c.size(); ++i) c[i] = i;
    for (;;) {
      if (!f(c)) return false;
      // advance to the next combination
      size_t i = c.size();
      while (i > 0) {
        --i;
        if (c[i] != n - c.size() + i) break;
        if (i == 0) {
          i = c.size();
          break;
        }
      }
      if (i == c.size()) break;
      ++c[i];
      for (size_t t = i + 1; t < c.size(); ++t) c[t] = c[t - 1] + 1;
    }
  }
  return true;
}

// all assignments of pool entries (with repetition) to the slots of a subset
template <class F>
bool for_each_assignment(const std::vector<size_t>& subset, size_t pool_size, F&& f) {
  std::vector<size_t> digits(subset.size(), 0);
  for (;;) {
    std::vector<std::pair<size_t, size_t>> asgn(subset.size());
    for (size_t i = 0; i < subset.size(); ++i) asgn[i] = {subset[i], digits[i]};
    if (!f(asgn)) return false;
    size_t i = 0;
    while (i < digits.size() && ++digits[i] == pool_size) {
      digits[i] = 0;
      ++i;
    }
    if (i == digits.size()) break;
  }
  return true;
}

struct SearchState {
  double base = 0.0;
  double best = 0.0;
  long long evals = 0;
  Perturbation witness;
};

double consider_deleted(SearchState& st, const Evaluator& ev, const std::vector<size_t>& subset) {
  double e = ev.deleted(subset);
  ++st.evals;
  double v = std::abs(st.base - e);
  if (v > st.best) {
    st.best = v;
    st.witness.removed = subset;
    st.witness.replaced.clear();
  }
  return v;
}

double consider_replaced(SearchState& st, const Evaluator& ev, const Pool& pool,
                         const std::vector<std::pair<size_t, size_t>>& asgn) {
  double e = ev.replaced(asgn, pool);
  ++st.evals;
  double v = std::abs(st.base - e);
  if (v > st.best) {
    st.best = v;
    st.witness.removed.clear();
    st.witness.replaced.clear();
    for (const auto& [i, pi] : asgn)
      st.witness.replaced.emplace_back(i, std::make_pair(pool.points[pi], pool.labels[pi]));
  }
  return v;
}

}  // namespace

double enumeration_size(long long n, long long kappa, Mode mode, long long pool_size) {
  double total = 0.0;
  double c = 1.0;  // C(n, j)
  for (long long j = 1; j <= kappa && j <= n; ++j) {
    c = c * static_cast<double>(n - j + 1) / static_cast<double>(j);
    double per = mode == Mode::replacement ? std::pow(static_cast<double>(pool_size), static_cast<double>(j)) : 1.0;
    total += c * per;
    if (total > 1e18) return 1e18;
  }
  return total;
}

PointwiseReport tolerance_pointwise(const ClassifierSpec& spec, const ClassPair& pair, double p,
                                    const LabeledSample& sample, const Options& opt) {
  const long long n = static_cast<long long>(sample.size());
  if (n == 0) fail(Errc::empty_sample, "cannot perturb an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) fail(Errc::invalid_argument, "p must lie in [0,1]");

  PointwiseReport rep;
  rep.kappa = opt.kappa < 0 ? bounds::kappa(n) : opt.kappa;
  const long long jmax =
      opt.mode == Mode::deletion ? std::min(rep.kappa, n - 1) : std::min(rep.kappa, n);

  Evaluator ev(spec, pair, p, sample, opt.mc_draws, derive_seed(opt.seed, 7));
  SearchState st;
  st.base = ev.full();
  rep.base_error = st.base;

  if (jmax <= 0) {
    rep.exhaustive = true;
    return rep;
  }

  Pool pool;
  if (opt.mode == Mode::replacement) pool = build_pool(pair, sample, opt.fresh_per_class, opt.seed);
  const double total = enumeration_size(n, jmax, opt.mode,
                                        static_cast<long long>(pool.size()));

  if (opt.search == Search::exact) {
    if (n > 16 || rep.kappa > 4 || total > kEnumExactCap)
      fail(Errc::enumeration_too_large, "exact search needs n <= 16, kappa <= 4 and a small pool");
    if (opt.mode == Mode::deletion) {
      for_each_subset(static_cast<size_t>(n), jmax, [&](const std::vector<size_t>& s) {
        consider_deleted(st, ev, s);
        return true;
      });
    } else {
      for_each_subset(static_cast<size_t>(n), jmax, [&](const std::vector<size_t>& s) {
        return for_each_assignment(s, pool.size(), [&](const auto& asgn) {
          consider_replaced(st, ev, pool, asgn);
          return true;
        });
      });
    }
    rep.exhaustive = true;
  } else if (total <= kEnumStreamCap) {
    // small enough to walk the full enumeration in order; the budget cuts
    // a prefix, so a big enough budget reproduces the exact search
    bool done;
    if (opt.mode == Mode::deletion) {
      done = for_each_subset(static_cast<size_t>(n), jmax, [&](const std::vector<size_t>& s) {
        if (st.evals >= opt.budget) return false;
        consider_deleted(st, ev, s);
        return true;
      });
    } else {
      done = for_each_subset(static_cast<size_t>(n), jmax, [&](const std::vector<size_t>& s) {
        return for_each_assignment(s, pool.size(), [&](const auto& asgn) {
          if (st.evals >= opt.budget) return false;
          consider_replaced(st, ev, pool, asgn);
          return true;
        });
      });
    }
    rep.exhaustive = done;
  } else {
    // randomised stream: single edits first, then greedy growth of the
    // best candidate, then random candidates of random size
    Rng rng(derive_seed(opt.seed, 97));
    const long long budget = opt.budget;
    auto pick_index = [&]() { return static_cast<size_t>(rng.below(static_cast<std::uint64_t>(n))); };
    auto pick_pool = [&]() { return static_cast<size_t>(rng.below(pool.size())); };

    if (opt.mode == Mode::deletion) {
      std::set<std::vector<size_t>> tried;
      long long singles = std::min<long long>(budget / 2, n);
      long long attempts = 0;
      while (st.evals < singles && attempts < 8 * singles) {
        ++attempts;
        std::vector<size_t> s{pick_index()};
        if (!tried.insert(s).second) continue;
        consider_deleted(st, ev, s);
      }
      std::vector<size_t> cur = st.witness.removed;
      double cur_val = st.best;
      long long grow_attempts = 0;
      while (st.evals < budget && static_cast<long long>(cur.size()) < jmax && !cur.empty() &&
             grow_attempts < 8 * budget) {
        ++grow_attempts;
        size_t add = pick_index();
        if (std::binary_search(cur.begin(), cur.end(), add)) continue;
        std::vector<size_t> cand = cur;
        cand.insert(std::upper_bound(cand.begin(), cand.end(), add), add);
        if (!tried.insert(cand).second) continue;
        double v = consider_deleted(st, ev, cand);
        if (v > cur_val) {
          cur = std::move(cand);
          cur_val = v;
        }
      }
      long long rand_attempts = 0;
      while (st.evals < budget && rand_attempts < 16 * budget) {
        ++rand_attempts;
        long long size = 1 + static_cast<long long>(rng.below(static_cast<std::uint64_t>(jmax)));
        std::set<size_t> s;
        while (static_cast<long long>(s.size()) < size) s.insert(pick_index());
        std::vector<size_t> cand(s.begin(), s.end());
        if (!tried.insert(cand).second) continue;
        consider_deleted(st, ev, cand);
      }
    } else {
      std::set<std::vector<std::pair<size_t, size_t>>> tried;
      long long singles = budget / 2;
      long long attempts = 0;
      while (st.evals < singles && attempts < 8 * singles) {
        ++attempts;
        std::vector<std::pair<size_t, size_t>> a{{pick_index(), pick_pool()}};
        if (!tried.insert(a).second) continue;
        consider_replaced(st, ev, pool, a);
      }
      long long rand_attempts = 0;
      while (st.evals < budget && rand_attempts < 16 * budget) {
        ++rand_attempts;
        long long size = 1 + static_cast<long long>(rng.below(static_cast<std::uint64_t>(jmax)));
        std::set<size_t> idxs;
        while (static_cast<long long>(idxs.size()) < size) idxs.insert(pick_index());
        std::vector<std::pair<size_t, size_t>> a;
        for (size_t i : idxs) a.emplace_back(i, pick_pool());
        if (!tried.insert(a).second) continue;
        consider_replaced(st, ev, pool, a);
      }
    }
    rep.exhaustive = false;
  }

  rep.value = st.best;
  rep.evaluations = st.evals;
  rep.witness = std::move(st.witness);
  return rep;
}

DistReport tolerance_exceed_prob(const ClassifierSpec& spec, const ClassPair& pair, double p,
                                 long long n, double eps, const Options& opt, long long runs,
                                 std::uint64_t seed, int threads) {
  if (runs < 1) fail(Errc::invalid_argument, "runs must be >= 1");
  LabelProcess process{IidBernoulli{p}};
  std::vector<double> values(static_cast<size_t>(runs));
  std::vector<std::uint8_t> exhaustive(static_cast<size_t>(runs));
  parallel_for(static_cast<size_t>(runs), threads, [&](size_t r) {
    std::uint64_t run_seed = derive_seed(seed, r);
    Labels ys = process.sample(n, derive_seed(run_seed, 0));
    LabeledSample sample = sample_objects(pair, ys, derive_seed(run_seed, 1));
    Options o = opt;
    o.seed = derive_seed(run_seed, 2);
    PointwiseReport rep = tolerance_pointwise(spec, pair, p, sample, o);
    values[r] = rep.value;
    exhaustive[r] = rep.exhaustive ? 1 : 0;
  });
  DistReport out;
  out.n = n;
  out.eps = eps;
  out.runs = runs;
  long long hit = 0;
  double sum = 0.0, mx = 0.0;
  bool all_ex = true;
  for (size_t r = 0; r < values.size(); ++r) {
    hit += values[r] > eps;
    sum += values[r];
    mx = std::max(mx, values[r]);
    all_ex = all_ex && exhaustive[r];
  }
  out.exceed = static_cast<double>(hit) / static_cast<double>(runs);
  out.stderr_ = std::sqrt(std::max(out.exceed * (1.0 - out.exceed), 0.0) / static_cast<double>(runs));
  out.mean_value = sum / static_cast<double>(runs);
  out.max_value = mx;
  out.lower_bound = !all_ex;
  return out;
}

SupReport tolerance_sup(const ClassifierSpec& spec, const ClassPair& pair, double delta,
                        long long n, double eps, const Options& opt, int grid, long long runs,
                        std::uint64_t seed, int threads) {
  if (!(delta > 0.0 && delta <= 0.5)) fail(Errc::invalid_argument, "delta must lie in (0, 0.5]");
  if (grid < 1) fail(Errc::invalid_argument, "grid must be >= 1");
  SupReport rep;
  rep.value = -1.0;
  for (int g = 0; g < grid; ++g) {
    double p = grid == 1 ? 0.5 : delta + (1.0 - 2.0 * delta) * static_cast<double>(g) / (grid - 1.0);
    DistReport d = tolerance_exceed_prob(spec, pair, p, n, eps, opt, runs,
                                         derive_seed(seed, static_cast<std::uint64_t>(g)), threads);
    rep.points.push_back(d);
    rep.ps.push_back(p);
    if (d.exceed > rep.value) {
      rep.value = d.exceed;
      rep.stderr_ = d.stderr_;
      rep.argmax_p = p;
    }
  }
  return rep;
}

}  // namespace condlab::tolerance
