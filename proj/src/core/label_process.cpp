#include "core/label_process.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace condlab {

namespace {

constexpr long long kScheduleCap = 1LL << 62;

bool prob_ok(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

void check_prob(double p, const char* name) {
  if (!prob_ok(p)) fail(Errc::invalid_argument, std::string(name) + " must lie in [0,1]");
}

bool in_band(long long ones, long long n, double delta) {
  double frac = static_cast<double>(ones) / static_cast<double>(n);
  return frac >= delta && frac <= 1.0 - delta;
}

double log_choose(long long n, long long k) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace

long long ScheduleRule::k(long long i) const {
  switch (kind) {
    case Kind::constant:
      return value;
    case Kind::power: {
      long long out = 1;
      for (long long j = 0; j < i; ++j) {
        if (out > kScheduleCap / std::max<long long>(value, 1)) return kScheduleCap;
        out *= value;
      }
      return out;
    }
    case Kind::list: {
      if (values.empty()) fail(Errc::invalid_argument, "empty schedule list");
      size_t idx = static_cast<size_t>(std::min<long long>(i - 1, static_cast<long long>(values.size()) - 1));
      return values[idx];
    }
  }
  return 0;
}

void ScheduleRule::validate() const {
  switch (kind) {
    case Kind::constant:
      if (value < 0) fail(Errc::invalid_argument, "schedule constant must be >= 0");
      break;
    case Kind::power:
      if (value < 1) fail(Errc::invalid_argument, "schedule base must be >= 1");
      break;
    case Kind::list:
      if (values.empty()) fail(Errc::invalid_argument, "schedule list must be nonempty");
      for (long long v : values)
        if (v < 0) fail(Errc::invalid_argument, "schedule entries must be >= 0");
      break;
  }
}

LabelProcess::LabelProcess(IidBernoulli p) : v_(p) { check_prob(p.p, "p"); }

LabelProcess::LabelProcess(TwoStateMarkov p) : v_(p) {
  check_prob(p.t01, "t01");
  check_prob(p.t10, "t10");
  check_prob(p.init1, "init1");
}

LabelProcess::LabelProcess(Periodic p) : v_(std::move(p)) {
  const auto& pat = std::get<Periodic>(v_).pattern;
  if (pat.empty()) fail(Errc::invalid_argument, "periodic pattern must be nonempty");
  for (auto b : pat)
    if (b > 1) fail(Errc::invalid_argument, "labels must be 0 or 1");
}

LabelProcess::LabelProcess(BlockSchedule p) : v_(std::move(p)) {
  std::get<BlockSchedule>(v_).rule.validate();
}

LabelProcess::LabelProcess(ExplicitSeq p) : v_(std::move(p)) {
  for (auto b : std::get<ExplicitSeq>(v_).labels)
    if (b > 1) fail(Errc::invalid_argument, "labels must be 0 or 1");
}

bool LabelProcess::deterministic() const {
  return !std::holds_alternative<IidBernoulli>(v_) && !std::holds_alternative<TwoStateMarkov>(v_);
}

Labels LabelProcess::expand(long long n) const {
  Labels out;
  out.reserve(static_cast<size_t>(n));
  if (const auto* p = std::get_if<Periodic>(&v_)) {
    for (long long i = 0; i < n; ++i) out.push_back(p->pattern[static_cast<size_t>(i % static_cast<long long>(p->pattern.size()))]);
  } else if (const auto* b = std::get_if<BlockSchedule>(&v_)) {
    long long block = 1;
    while (static_cast<long long>(out.size()) < n) {
      out.push_back(1);
      long long zeros = b->rule.k(block++);
      for (long long j = 0; j < zeros && static_cast<long long>(out.size()) < n; ++j) out.push_back(0);
    }
    out.resize(static_cast<size_t>(n));
  } else if (const auto* e = std::get_if<ExplicitSeq>(&v_)) {
    if (static_cast<long long>(e->labels.size()) < n)
      fail(Errc::invalid_argument, "explicit label sequence shorter than requested length");
    out.assign(e->labels.begin(), e->labels.begin() + static_cast<long long>(n));
  } else {
    fail(Errc::invalid_argument, "expand called on a stochastic process");
  }
  return out;
}

Labels LabelProcess::sample(long long n, std::uint64_t seed) const {
  if (n < 0) fail(Errc::invalid_argument, "n must be >= 0");
  if (const auto* p = std::get_if<IidBernoulli>(&v_)) {
    Rng rng(seed);
    Labels out(static_cast<size_t>(n));
    for (auto& y : out) y = rng.bernoulli(p->p) ? 1 : 0;
    return out;
  }
  if (const auto* m = std::get_if<TwoStateMarkov>(&v_)) {
    Rng rng(seed);
    Labels out(static_cast<size_t>(n));
    std::uint8_t cur = 0;
    for (long long i = 0; i < n; ++i) {
      if (i == 0)
        cur = rng.bernoulli(m->init1) ? 1 : 0;
      else
        cur = cur ? (rng.bernoulli(m->t10) ? 0 : 1) : (rng.bernoulli(m->t01) ? 1 : 0);
      out[static_cast<size_t>(i)] = cur;
    }
    return out;
  }
  return expand(n);
}

double LabelProcess::next_label_prob(std::span<const std::uint8_t> history) const {
  if (const auto* p = std::get_if<IidBernoulli>(&v_)) {
    for (auto y : history) {
      double py = y ? p->p : 1.0 - p->p;
      if (py <= 0.0) fail(Errc::impossible_history, "history has probability zero");
    }
    return p->p;
  }
  if (const auto* m = std::get_if<TwoStateMarkov>(&v_)) {
    for (size_t i = 0; i < history.size(); ++i) {
      double py;
      if (i == 0)
        py = history[0] ? m->init1 : 1.0 - m->init1;
      else if (history[i - 1])
        py = history[i] ? 1.0 - m->t10 : m->t10;
      else
        py = history[i] ? m->t01 : 1.0 - m->t01;
      if (py <= 0.0) fail(Errc::impossible_history, "history has probability zero");
    }
    if (history.empty()) return m->init1;
    return history.back() ? 1.0 - m->t10 : m->t01;
  }
  Labels truth = expand(static_cast<long long>(history.size()) + 1);
  for (size_t i = 0; i < history.size(); ++i)
    if (history[i] != truth[i]) fail(Errc::impossible_history, "history has probability zero");
  return truth.back() ? 1.0 : 0.0;
}

OccupancyResult LabelProcess::occupancy(double delta, long long n, std::optional<long long> mc_budget,
                                        std::uint64_t seed) const {
  if (n < 1) fail(Errc::invalid_argument, "n must be >= 1");
  if (!(delta >= 0.0 && delta <= 0.5)) fail(Errc::invalid_argument, "delta must lie in [0, 0.5]");

  OccupancyResult res;
  if (deterministic()) {
    Labels ys = expand(n);
    long long ones = std::count(ys.begin(), ys.end(), std::uint8_t{1});
    res.value = in_band(ones, n, delta) ? 1.0 : 0.0;
    return res;
  }

  if (mc_budget) {
    long long runs = *mc_budget;
    if (runs < 1) fail(Errc::invalid_argument, "mc_budget must be >= 1");
    long long hit = 0;
    for (long long r = 0; r < runs; ++r) {
      Labels ys = sample(n, derive_seed(seed, static_cast<std::uint64_t>(r)));
      long long ones = std::count(ys.begin(), ys.end(), std::uint8_t{1});
      if (in_band(ones, n, delta)) ++hit;
    }
    res.value = static_cast<double>(hit) / static_cast<double>(runs);
    res.exact = false;
    res.runs = runs;
    res.stderr_ = std::sqrt(res.value * (1.0 - res.value) / static_cast<double>(runs));
    return res;
  }

  // the band and its complement are accumulated separately and the smaller
  // side decides the value, so a tail that underflows reports exactly 1 and
  // a near-empty band keeps its relative precision
  if (const auto* p = std::get_if<IidBernoulli>(&v_)) {
    double inside = 0.0, outside = 0.0;
    for (long long k = 0; k <= n; ++k) {
      double lp;
      if (p->p == 0.0)
        lp = (k == 0) ? 0.0 : -INFINITY;
      else if (p->p == 1.0)
        lp = (k == n) ? 0.0 : -INFINITY;
      else
        lp = log_choose(n, k) + static_cast<double>(k) * std::log(p->p) +
             static_cast<double>(n - k) * std::log1p(-p->p);
      (in_band(k, n, delta) ? inside : outside) += std::exp(lp);
    }
    res.value = (inside >= outside) ? 1.0 - std::min(outside, 1.0) : std::min(inside, 1.0);
    return res;
  }

  // two-state chain: forward recursion over (#ones so far, current state),
  // with edge trimming once entries decay below a hard floor; everything
  // trimmed is booked as lost mass so the reported value never overshoots
  const auto& m = std::get<TwoStateMarkov>(v_);
  const double floor_ = (n <= 5000) ? 0.0 : 1e-130;
  std::vector<double> cur0(static_cast<size_t>(n) + 1, 0.0), cur1(static_cast<size_t>(n) + 1, 0.0);
  std::vector<double> nxt0(static_cast<size_t>(n) + 1, 0.0), nxt1(static_cast<size_t>(n) + 1, 0.0);
  long long lo = 0, hi = 1;
  cur0[0] = 1.0 - m.init1;
  cur1[1] = m.init1;
  double lost = 0.0;
  for (long long step = 2; step <= n; ++step) {
    long long nlo = lo, nhi = std::min(hi + 1, n);
    for (long long k = nlo; k <= nhi; ++k) nxt0[static_cast<size_t>(k)] = nxt1[static_cast<size_t>(k)] = 0.0;
    for (long long k = lo; k <= hi; ++k) {
      double a0 = cur0[static_cast<size_t>(k)], a1 = cur1[static_cast<size_t>(k)];
      if (a0 != 0.0) {
        nxt0[static_cast<size_t>(k)] += a0 * (1.0 - m.t01);
        nxt1[static_cast<size_t>(k + 1)] += a0 * m.t01;
      }
      if (a1 != 0.0) {
        nxt1[static_cast<size_t>(k + 1)] += a1 * (1.0 - m.t10);
        nxt0[static_cast<size_t>(k)] += a1 * m.t10;
      }
    }
    std::swap(cur0, nxt0);
    std::swap(cur1, nxt1);
    lo = nlo;
    hi = nhi;
    if (floor_ > 0.0) {
      while (lo < hi && cur0[static_cast<size_t>(lo)] + cur1[static_cast<size_t>(lo)] < floor_) {
        lost += cur0[static_cast<size_t>(lo)] + cur1[static_cast<size_t>(lo)];
        cur0[static_cast<size_t>(lo)] = cur1[static_cast<size_t>(lo)] = 0.0;
        ++lo;
      }
      while (hi > lo && cur0[static_cast<size_t>(hi)] + cur1[static_cast<size_t>(hi)] < floor_) {
        lost += cur0[static_cast<size_t>(hi)] + cur1[static_cast<size_t>(hi)];
        cur0[static_cast<size_t>(hi)] = cur1[static_cast<size_t>(hi)] = 0.0;
        --hi;
      }
    }
  }
  double inside = 0.0, outside = lost;
  for (long long k = lo; k <= hi; ++k) {
    double mass = cur0[static_cast<size_t>(k)] + cur1[static_cast<size_t>(k)];
    (in_band(k, n, delta) ? inside : outside) += mass;
  }
  res.value = (inside >= outside) ? 1.0 - std::min(outside, 1.0) : std::min(inside, 1.0);
  res.lost = lost;
  return res;
}

}  // namespace condlab
