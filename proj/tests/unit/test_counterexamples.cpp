#include "doctest.h"

#include <cmath>

#include "core/bounds.hpp"
#include "core/counterexamples.hpp"

using namespace condlab;
using namespace condlab::counterexamples;

TEST_CASE("the flip rule errs surely on the alternating chain") {
  for (long long n = 1; n <= 12; ++n) {
    auto r = alternating_labels(n, 0.5);
    CHECK(r.conditional_error == 1.0);
    CHECK(r.n == n);
  }
}

TEST_CASE("alternating histories under fair i.i.d. labels have probability 2^(1-n)") {
  for (long long n = 1; n <= 60; ++n) {
    auto r = alternating_labels(n, 0.5);
    CHECK(r.two_pow_bound == std::ldexp(1.0, static_cast<int>(1 - n)));
    CHECK(r.iid_alternating_prob == doctest::Approx(r.two_pow_bound).epsilon(1e-12));
  }
}

TEST_CASE("count condition probability at small sizes by hand") {
  // n = 4: zero count of 3 fair labels must land in {1, 2, 3}
  auto r = alternating_labels(4, 0.5);
  CHECK(r.iid_count_prob == doctest::Approx(7.0 / 8.0).epsilon(1e-12));
  // n = 1: empty history, the condition holds vacuously
  auto r1 = alternating_labels(1, 0.3);
  CHECK(r1.iid_count_prob == doctest::Approx(1.0));
  CHECK(r1.iid_alternating_prob == doctest::Approx(1.0));
}

TEST_CASE("skewed labels keep the exact alternating probability") {
  // n = 5: the two alternating strings carry 3+2 and 2+3 ones/zeros,
  // so the total is p^3 q^2 + p^2 q^3 = (pq)^2
  auto r = alternating_labels(5, 0.3);
  CHECK(r.iid_alternating_prob == doctest::Approx(0.21 * 0.21).epsilon(1e-12));
}

TEST_CASE("count condition at n = 100 against exact big-integer arithmetic") {
  auto r = alternating_labels(100, 0.5);
  bounds::BigInt sum = 0;
  for (int z = 49; z <= 51; ++z) {
    bounds::BigInt c = 1;
    for (int i = 0; i < z; ++i) c = c * (99 - i) / (i + 1);
    sum += c;
  }
  double expect = std::ldexp(sum.convert_to<double>(), -99);
  CHECK(r.iid_count_prob == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("count condition never falls below the alternating probability") {
  for (long long n : {2, 3, 7, 10, 25, 60}) {
    for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      auto r = alternating_labels(n, p);
      CHECK(r.iid_count_prob + 1e-15 >= r.iid_alternating_prob);
      CHECK(r.iid_count_prob <= 1.0);
      CHECK(r.iid_count_prob > 0.0);
    }
  }
}

TEST_CASE("large n stays finite and the count probability shrinks slowly") {
  auto r = alternating_labels(2001, 0.5);
  CHECK(r.two_pow_bound == 0.0);
  CHECK(r.iid_alternating_prob == 0.0);
  CHECK(r.iid_count_prob > 0.01);
  CHECK(r.iid_count_prob < 0.1);
}

TEST_CASE("degenerate inputs are rejected") {
  CHECK_THROWS_AS((void)alternating_labels(0, 0.5), Error);
  CHECK_THROWS_AS((void)alternating_labels(5, 0.0), Error);
  CHECK_THROWS_AS((void)alternating_labels(5, 1.0), Error);
}

TEST_CASE("doubling blocks place the ones at t + 2^t - 2") {
  ScheduleRule rule;  // power, base 2
  auto rows = schedule_simulation(16, rule, 50, 10, 42);
  REQUIRE(rows.size() == 5);
  long long expect_n[] = {1, 4, 9, 18, 35};
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].step == static_cast<long long>(i) + 1);
    CHECK(rows[i].n == expect_n[i]);
    CHECK(rows[i].runs == 10);
    CHECK(rows[i].min_err1 >= 0.0);
    CHECK(rows[i].mean_err1 <= 1.0);
    CHECK(rows[i].min_err1 <= rows[i].mean_err1 + 1e-15);
  }
  // nothing fitted before the first one: certain error
  CHECK(rows[0].mean_err1 == 1.0);
  // by the fifth one only 4 of 16 atoms can ever have been claimed
  CHECK(rows[4].mean_err1 > 0.5);
}

TEST_CASE("back-to-back ones are learned after a single example") {
  ScheduleRule rule;
  rule.kind = ScheduleRule::Kind::constant;
  rule.value = 0;
  auto rows = schedule_simulation(8, rule, 5, 3, 1);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].mean_err1 == 1.0);
  for (size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].mean_err1 == 0.0);
    CHECK(rows[i].min_err1 == 0.0);
  }
}

TEST_CASE("schedule rows are reproducible across thread counts") {
  ScheduleRule rule;
  rule.kind = ScheduleRule::Kind::list;
  rule.values = {1, 2, 3};
  auto a = schedule_simulation(4, rule, 30, 8, 7, 1);
  auto b = schedule_simulation(4, rule, 30, 8, 7, 4);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].n == b[i].n);
    CHECK(a[i].mean_err1 == b[i].mean_err1);
    CHECK(a[i].min_err1 == b[i].min_err1);
  }
}
