#pragma once

#include "core/class_pair.hpp"
#include "core/label_process.hpp"

namespace condlab::counterexamples {

// Binary objects that equal their labels, driven by a strictly alternating
// label chain, against the flip rule: predict 1 - x when the zero count of
// the first n-1 labels is within 1 of n/2, else predict x. Under the chain
// the rule errs at every step; under i.i.d. labels it errs only on nearly
// balanced (resp. exactly alternating) histories, with exactly computable
// probability.
struct AlternatingReport {
  long long n = 0;
  double p = 0.5;
  double conditional_error = 0.0;   // P(error at step n+1 | alternating chain)
  double iid_count_prob = 0.0;      // P(rule errs) with i.i.d. labels, count condition
  double iid_alternating_prob = 0.0;  // same with the exact-alternation condition
  double two_pow_bound = 0.0;       // 2^(1-n)
};

AlternatingReport alternating_labels(long long n, double p);

// One object class sits on N atoms, the other fills the unit interval.
// Labels follow a schedule: a single 1, then k_i zeros, repeatedly. Rows
// report the nearest-neighbour error on class 1 at each 1-step, i.e. with
// the rule fitted on everything before that step.
struct ScheduleStepRow {
  long long step = 0;  // which 1-block
  long long n = 0;     // position of that 1 in the label sequence
  double mean_err1 = 0.0;
  double min_err1 = 0.0;
  long long runs = 0;
};

std::vector<ScheduleStepRow> schedule_simulation(long long atoms, const ScheduleRule& rule,
                                                 long long horizon, long long runs,
                                                 std::uint64_t seed, int threads = 1);

}  // namespace condlab::counterexamples
