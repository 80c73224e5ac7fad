#include "core/counterexamples.hpp"

#include <cmath>

#include "core/classifiers.hpp"
#include "core/error_eval.hpp"
#include "core/parallel.hpp"

namespace condlab::counterexamples {

namespace {

double log_choose(long long n, long long k) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

// P(|Z - n/2| <= 1) for Z = #zeros among n-1 i.i.d. labels with P(1) = p;
// at most three z values qualify, each evaluated in log space
double count_condition_prob(long long n, double p) {
  const long long m = n - 1;
  const double q = 1.0 - p;
  const long long z_lo = static_cast<long long>(std::ceil(static_cast<double>(n) / 2.0 - 1.0));
  const long long z_hi = static_cast<long long>(std::floor(static_cast<double>(n) / 2.0 + 1.0));
  double total = 0.0;
  for (long long z = std::max<long long>(z_lo, 0); z <= std::min(z_hi, m); ++z)
    total += std::exp(log_choose(m, z) + static_cast<double>(z) * std::log(q) +
                      static_cast<double>(m - z) * std::log(p));
  return std::min(total, 1.0);
}

double pow_prod(double base, long long e) {
  double out = 1.0;
  for (long long i = 0; i < e; ++i) out *= base;
  return out;
}

}  // namespace

AlternatingReport alternating_labels(long long n, double p) {
  if (n < 1) fail(Errc::invalid_argument, "n must be >= 1");
  if (!(p > 0.0 && p < 1.0)) fail(Errc::invalid_argument, "p must lie in (0, 1)");
  AlternatingReport r;
  r.n = n;
  r.p = p;

  // under the alternating chain the count condition always holds: among the
  // first n-1 labels the zero count is within 1 of n/2, so the rule flips
  // and the flipped prediction misses the true label with certainty
  for (int phase = 0; phase < 2; ++phase) {
    long long zeros = 0;
    for (long long i = 1; i <= n - 1; ++i) {
      int y = (i % 2 == 1) ? phase : 1 - phase;
      zeros += y == 0;
    }
    bool cond = std::abs(static_cast<double>(zeros) - static_cast<double>(n) / 2.0) <= 1.0;
    if (!cond) fail(Errc::precondition_violated, "alternating history escaped the count condition");
  }
  r.conditional_error = 1.0;

  r.iid_count_prob = count_condition_prob(n, p);

  // exactly two length-n alternating strings
  const long long ones_a = (n + 1) / 2, ones_b = n / 2;
  r.iid_alternating_prob =
      pow_prod(p, ones_a) * pow_prod(1.0 - p, n - ones_a) + pow_prod(p, ones_b) * pow_prod(1.0 - p, n - ones_b);

  r.two_pow_bound = n - 1 < 1074 ? std::ldexp(1.0, static_cast<int>(1 - n)) : 0.0;
  return r;
}

std::vector<ScheduleStepRow> schedule_simulation(long long atoms, const ScheduleRule& rule,
                                                 long long horizon, long long runs,
                                                 std::uint64_t seed, int threads) {
  if (horizon < 1) fail(Errc::invalid_argument, "horizon must be >= 1");
  if (runs < 1) fail(Errc::invalid_argument, "runs must be >= 1");
  rule.validate();

  LabelProcess process{BlockSchedule{rule}};
  Labels ys = process.sample(horizon, 0);
  std::vector<long long> one_steps;
  for (long long i = 0; i < horizon; ++i)
    if (ys[static_cast<size_t>(i)]) one_steps.push_back(i + 1);

  ClassPair pair{AtomsVsContinuum{atoms}};
  ClassifierSpec nn{NearestNeighbourSpec{}};

  std::vector<std::vector<double>> err(static_cast<size_t>(runs),
                                       std::vector<double>(one_steps.size(), 0.0));
  parallel_for(static_cast<size_t>(runs), threads, [&](size_t r) {
    Rng rng(derive_seed(seed, r));
    LabeledSample sample;
    sample.dim = 1;
    double x = 0.0;
    size_t next_step = 0;
    for (long long i = 0; i < horizon && next_step < one_steps.size(); ++i) {
      if (ys[static_cast<size_t>(i)] && one_steps[next_step] == i + 1) {
        if (sample.size() == 0) {
          err[r][next_step] = 1.0;  // nothing to fit on; the empty rule says 0
        } else {
          FittedPtr f = fit(nn, sample);
          err[r][next_step] = class_error_exact(*f, pair, 1).value;
        }
        ++next_step;
      }
      pair.sample_one(ys[static_cast<size_t>(i)], rng, &x);
      sample.xs.push_back(x);
      sample.ys.push_back(ys[static_cast<size_t>(i)]);
    }
  });

  std::vector<ScheduleStepRow> rows;
  for (size_t s = 0; s < one_steps.size(); ++s) {
    ScheduleStepRow row;
    row.step = static_cast<long long>(s) + 1;
    row.n = one_steps[s];
    row.runs = runs;
    double sum = 0.0, mn = 2.0;
    for (long long r = 0; r < runs; ++r) {
      double e = err[static_cast<size_t>(r)][s];
      sum += e;
      mn = std::min(mn, e);
    }
    row.mean_err1 = sum / static_cast<double>(runs);
    row.min_err1 = mn;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace condlab::counterexamples
