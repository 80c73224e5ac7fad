#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "core/class_pair.hpp"
#include "core/rng.hpp"

namespace testutil {

// small one-dimensional sample with clustered duplicates
inline condlab::LabeledSample random_sample(condlab::Rng& rng, size_t n, bool with_duplicates = true) {
  condlab::LabeledSample s;
  s.dim = 1;
  for (size_t i = 0; i < n; ++i) {
    double x;
    if (with_duplicates && i > 0 && rng.bernoulli(0.2)) {
      x = s.xs[rng.below(s.xs.size())];
      s.ys.push_back(s.ys[std::find(s.xs.begin(), s.xs.end(), x) - s.xs.begin()]);
    } else {
      x = rng.uniform(-1.0, 1.0);
      s.ys.push_back(rng.bernoulli(0.5) ? 1 : 0);
    }
    s.xs.push_back(x);
  }
  return s;
}

// exhaustive single-interval ERM: every window over the sorted points plus
// the empty hypothesis
inline long long brute_interval_errors(const condlab::LabeledSample& s) {
  std::vector<double> ux(s.xs);
  std::sort(ux.begin(), ux.end());
  ux.erase(std::unique(ux.begin(), ux.end()), ux.end());
  long long total1 = 0;
  for (auto y : s.ys) total1 += y;
  long long best = total1;  // empty interval
  for (size_t i = 0; i < ux.size(); ++i)
    for (size_t j = i; j < ux.size(); ++j) {
      long long err = 0;
      for (size_t t = 0; t < s.size(); ++t) {
        bool in = s.xs[t] >= ux[i] && s.xs[t] <= ux[j];
        err += (in ? 1 : 0) != s.y(t);
      }
      best = std::min(best, err);
    }
  return best;
}

// exhaustive ERM over at most k intervals: recursively choose disjoint
// windows of sorted unique positions
inline long long brute_k_intervals_errors(const condlab::LabeledSample& s, int k) {
  std::vector<double> ux(s.xs);
  std::sort(ux.begin(), ux.end());
  ux.erase(std::unique(ux.begin(), ux.end()), ux.end());
  const size_t m = ux.size();
  long long best = 1LL << 60;

  std::vector<std::pair<size_t, size_t>> chosen;
  auto eval = [&]() {
    long long err = 0;
    for (size_t t = 0; t < s.size(); ++t) {
      bool in = false;
      for (auto [a, b] : chosen) in = in || (s.xs[t] >= ux[a] && s.xs[t] <= ux[b]);
      err += (in ? 1 : 0) != s.y(t);
    }
    best = std::min(best, err);
  };
  std::function<void(size_t, int)> rec = [&](size_t from, int left) {
    eval();
    if (left == 0) return;
    for (size_t i = from; i < m; ++i)
      for (size_t j = i; j < m; ++j) {
        chosen.emplace_back(i, j);
        rec(j + 2, left - 1);  // skip one position so intervals stay separated
        chosen.pop_back();
      }
  };
  rec(0, k);
  return best;
}

}  // namespace testutil
