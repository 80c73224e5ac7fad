#include "doctest.h"

#include <set>

#include "core/rng.hpp"

using namespace condlab;

TEST_CASE("same seed gives the same stream") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("uniform01 stays in [0,1)") {
  Rng r(7);
  for (int i = 0; i < 10000; ++i) {
    double u = r.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("below respects the bound and hits every residue") {
  Rng r(3);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    auto v = r.below(7);
    CHECK(v < 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
}

TEST_CASE("derived seeds differ across indices and masters") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t m = 0; m < 10; ++m)
    for (std::uint64_t i = 0; i < 100; ++i) seen.insert(derive_seed(m, i));
  CHECK(seen.size() == 1000);
  CHECK(derive_seed(5, 9) == derive_seed(5, 9));
}

TEST_CASE("bernoulli matches its rate roughly") {
  Rng r(11);
  int hits = 0;
  for (int i = 0; i < 100000; ++i) hits += r.bernoulli(0.3);
  CHECK(hits > 29000);
  CHECK(hits < 31000);
}
