#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "core/bounds.hpp"

using namespace condlab;
using namespace condlab::bounds;

namespace {

template <typename F>
std::optional<Errc> thrown_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// count interval-realisable 0/1 patterns on n distinct points by enumeration
long long brute_interval_patterns(int n) {
  std::vector<std::uint64_t> masks{0};
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      std::uint64_t m = 0;
      for (int t = i; t <= j; ++t) m |= 1ULL << t;
      masks.push_back(m);
    }
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  return static_cast<long long>(masks.size());
}

long double choose_ld(long long n, int k) {
  long double c = 1.0L;
  for (int i = 0; i < k; ++i) c = c * static_cast<long double>(n - i) / static_cast<long double>(i + 1);
  return c;
}

}  // namespace

TEST_CASE("deletion depth oracle values and defining inequality") {
  CHECK(kappa(1) == 0);
  CHECK(kappa(2) == 1);
  CHECK(kappa(100) == 21);
  CHECK(kappa(1000000) == 3716);
  long long prev = 0;
  for (long long n = 1; n <= 3000; ++n) {
    long long k = kappa(n);
    double x = static_cast<double>(n) * std::log(static_cast<double>(n));
    CHECK(static_cast<double>(k) * k <= x);
    CHECK(static_cast<double>(k + 1) * (k + 1) > x);
    CHECK(k >= prev);
    if (n >= 2) CHECK(k < n);
    prev = k;
  }
}

TEST_CASE("inflation factor values and pole") {
  CHECK(alpha(4) == doctest::Approx(2.0));
  CHECK(alpha(100) == doctest::Approx(1.0 / 0.9));
  CHECK(thrown_code([] { (void)alpha(1); }) == Errc::pole_at_one);
  CHECK(thrown_code([] { (void)alpha(0); }) == Errc::invalid_argument);
  double prev = alpha(2);
  for (long long n : {4, 16, 100, 10000, 1000000}) {
    double a = alpha(n);
    CHECK(a > 1.0);
    CHECK(a < prev);
    prev = a;
  }
}

TEST_CASE("interval growth function matches pattern enumeration") {
  CHECK(shatter_intervals_exact(1) == 2);
  CHECK(shatter_intervals_exact(3) == 7);
  for (int n = 1; n <= 12; ++n) {
    CHECK(shatter_intervals_exact(n) == brute_interval_patterns(n));
    double exact = shatter_intervals_exact(n).convert_to<double>();
    CHECK(log_shatter_intervals(n) == doctest::Approx(std::log(exact)).epsilon(1e-12));
  }
  CHECK(log_shatter_intervals(2000000000) ==
        doctest::Approx(std::log(2e9) + std::log(2000000001.0) - std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("binomial-sum growth bound, exact and in log space") {
  CHECK(sauer_exact(2, 4) == 11);
  CHECK(sauer_exact(0, 50) == 1);
  CHECK(sauer_exact(1, 5) == 6);
  CHECK(sauer_exact(5, 3) == 8);  // vc >= n gives 2^n
  for (long long n : {1, 2, 5, 17, 40, 60}) {
    for (int vc = 0; vc <= 6; ++vc) {
      long double direct = 0.0L;
      for (int i = 0; i <= std::min<long long>(vc, n); ++i) direct += choose_ld(n, i);
      CHECK(sauer_exact(vc, n).convert_to<double>() ==
            doctest::Approx(static_cast<double>(direct)).epsilon(1e-12));
      double expect = vc >= n ? n * std::log(2.0) : static_cast<double>(std::log(direct));
      CHECK(log_sauer(vc, n) == doctest::Approx(expect).epsilon(1e-9));
    }
  }
}

TEST_CASE("shatter source selects the smaller of class count and pattern count") {
  ShatterFn fin;
  fin.kind = ShatterFn::Kind::finite;
  fin.classes = 10;
  CHECK(fin.log_count(2) == doctest::Approx(2.0 * std::log(2.0)));
  CHECK(fin.log_count(4) == doctest::Approx(std::log(10.0)));
  ShatterFn sa;
  sa.kind = ShatterFn::Kind::sauer;
  sa.vc = 3;
  CHECK(sa.log_count(20) == doctest::Approx(log_sauer(3, 20)));
}

TEST_CASE("uniform deviation tails match direct arithmetic") {
  ShatterFn S;  // intervals
  long long n = 5000;
  double eps = 0.2;
  long double logS = std::log(1.0L + 5000.0L * 5001.0L / 2.0L);
  CHECK(vc_agnostic(S, n, eps).log_value ==
        doctest::Approx(static_cast<double>(std::log(8.0L) + logS - 5000.0L * 0.04L / 128.0L))
            .epsilon(1e-12));
  CHECK(vc_agnostic_shifted(S, n, eps).log_value ==
        doctest::Approx(static_cast<double>(std::log(8.0L) + logS - 5000.0L * 0.04L / 512.0L))
            .epsilon(1e-12));
  CHECK(vc_realizable(S, n, eps).log_value ==
        doctest::Approx(static_cast<double>(std::log(2.0L) + logS - 5000.0L * 0.2L / 2.0L))
            .epsilon(1e-12));
  CHECK(vc_uniform_dev(S, n, eps).log_value ==
        doctest::Approx(static_cast<double>(std::log(8.0L) + logS - 5000.0L * 0.04L / 32.0L))
            .epsilon(1e-12));

  ShatterFn sa;
  sa.kind = ShatterFn::Kind::sauer;
  sa.vc = 3;
  long double sum = 0.0L;
  for (int i = 0; i <= 3; ++i) sum += choose_ld(n, i);
  CHECK(vc_agnostic(sa, n, eps).log_value ==
        doctest::Approx(static_cast<double>(std::log(8.0L) + std::log(sum) - 5000.0L * 0.04L / 128.0L))
            .epsilon(1e-10));
}

TEST_CASE("bound values carry consistent exp, clamp and vacuity fields") {
  ShatterFn S;
  for (auto b : {vc_agnostic(S, 50, 0.1), vc_agnostic(S, 2000000, 0.1), vc_realizable(S, 400, 0.3)}) {
    CHECK(b.value == doctest::Approx(std::exp(b.log_value)));
    CHECK(b.clamped == doctest::Approx(std::min(b.value, 1.0)));
    CHECK(b.vacuous == !(b.log_value < 0.0));
  }
  CHECK(vc_agnostic(S, 50, 0.1).vacuous);
  CHECK(!vc_agnostic(S, 2000000, 0.1).vacuous);
}

TEST_CASE("tolerance tails: guard, direct arithmetic and decay in n") {
  ShatterFn S;
  CHECK(thrown_code([&] { (void)erm_tolerance_agnostic(S, 100, 0.1); }) == Errc::precondition_violated);
  CHECK(thrown_code([&] { (void)erm_tolerance_agnostic(S, 399, 0.1); }) == Errc::precondition_violated);
  CHECK(erm_tolerance_agnostic(S, 401, 0.1).log_value ==
        doctest::Approx(std::log(16.0) + log_shatter_intervals(401) - 401 * 0.01 / 512.0)
            .epsilon(1e-12));

  // the realizable tail at n = 2000, eps = 0.1 written as a plain ratio
  auto rep = erm_tolerance_realizable(S, 2000, 0.1);
  double s2n = 4000.0 * 4001.0 / 2.0 + 1.0;
  CHECK(rep.value == doctest::Approx(4.0 * s2n / 33554432.0).epsilon(1e-12));
  CHECK(!rep.vacuous);

  // past n = 1024/eps^2 the exponential term outruns the pattern count
  double prev_del = erm_tolerance_agnostic(S, 8192, 0.5).log_value;
  double prev_rep = erm_tolerance_realizable(S, 8192, 0.5).log_value;
  for (long long n = 16384; n <= 131072; n *= 2) {
    double d = erm_tolerance_agnostic(S, n, 0.5).log_value;
    double r = erm_tolerance_realizable(S, n, 0.5).log_value;
    CHECK(d < prev_del);
    CHECK(r < prev_rep);
    prev_del = d;
    prev_rep = r;
  }
}

TEST_CASE("conditional error tails match direct arithmetic") {
  ShatterFn S;
  long long n = 1000000;
  double delta = 0.45, eps = 0.5, c = 0.999;
  long double a = 1.0L / (1.0L - 1.0L / std::sqrt(1000000.0L));
  long double count = 1000000.0L * 1000001.0L / 2.0L + 1.0L;

  long double tail_del = 16.0L * a / c * count * std::exp(-1000000.0L * 0.45L * 0.45L * 0.5L * 0.5L / 2048.0L);
  auto d0 = erm_error_agnostic(S, n, delta, eps, c, 0);
  CHECK(d0.value == doctest::Approx(static_cast<double>(tail_del + (1.0L - c))).epsilon(1e-9));
  auto d1 = erm_error_agnostic(S, n, delta, eps, c, 1);
  CHECK(d1.value == doctest::Approx(static_cast<double>(tail_del + 1.0L + (1.0L - c))).epsilon(1e-9));
  CHECK(d1.vacuous);

  long double tail_rep = 4.0L * a / c * count * std::exp(-1000000.0L * 0.45L * 0.5L / 16.0L);
  auto r = erm_error_realizable(S, n, delta, eps, c);
  CHECK(r.value == doctest::Approx(static_cast<double>(tail_rep + (1.0L - c))).epsilon(1e-9));

  CHECK(thrown_code([&] { (void)erm_error_agnostic(S, 10, 0.25, 0.1, 1.0, 0); }) ==
        Errc::precondition_violated);
  CHECK(thrown_code([&] { (void)erm_error_realizable(S, n, 0.6, eps, c); }) == Errc::invalid_argument);
  CHECK(thrown_code([&] { (void)erm_error_realizable(S, n, delta, eps, 1.5); }) == Errc::invalid_argument);
}

TEST_CASE("realizable error tail is astronomically small at large n") {
  ShatterFn S;
  auto b = erm_error_realizable(S, 100000, 0.3, 0.1, 1.0);
  CHECK(b.log_value / std::log(10.0) < -70.0);
  CHECK(b.value < 1e-70);
  CHECK(b.value > 0.0);
  CHECK(!b.vacuous);
  CHECK(b.clamped == b.value);
}

TEST_CASE("delta of one half is allowed and collapses the realizable exponent") {
  ShatterFn S;
  long long n = 50000;
  double eps = 0.2;
  auto b = erm_error_realizable(S, n, 0.5, eps, 1.0);
  double expect = std::log(4.0) + std::log(alpha(n)) + log_shatter_intervals(n) -
                  static_cast<double>(n) * eps / 32.0;
  CHECK(b.log_value == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("every tail is nonincreasing in eps and unimodal in n on the standard grids") {
  ShatterFn S;
  const long long ns[] = {100, 1000, 10000, 100000};
  const double epss[] = {0.1, 0.2, 0.4};
  // entries are missing where a formula's n > 4/eps^2 guard applies
  auto all = [&](long long n, double eps) {
    bool guarded_ok = static_cast<double>(n) > 4.0 / (eps * eps) + 1.0;
    std::vector<std::optional<double>> v;
    v.push_back(vc_agnostic(S, n, eps).log_value);
    v.push_back(vc_agnostic_shifted(S, n, eps).log_value);
    v.push_back(vc_realizable(S, n, eps).log_value);
    v.push_back(vc_uniform_dev(S, n, eps).log_value);
    v.push_back(erm_tolerance_realizable(S, n, eps).log_value);
    v.push_back(guarded_ok ? std::optional<double>(erm_tolerance_agnostic(S, n, eps).log_value)
                           : std::nullopt);
    v.push_back(guarded_ok
                    ? std::optional<double>(erm_error_agnostic(S, n, 0.3, eps, 1.0, 0).log_value)
                    : std::nullopt);
    v.push_back(erm_error_realizable(S, n, 0.3, eps, 1.0).log_value);
    return v;
  };
  for (long long n : ns) {
    auto a = all(n, epss[0]);
    for (double eps : {epss[1], epss[2]}) {
      auto b = all(n, eps);
      for (size_t i = 0; i < a.size(); ++i)
        if (a[i] && b[i]) CHECK(*b[i] <= *a[i] + 1e-12);
      a = b;
    }
  }
  for (double eps : epss) {
    std::vector<std::vector<std::optional<double>>> seq;
    for (long long n : ns) seq.push_back(all(n, eps));
    for (size_t i = 0; i < seq[0].size(); ++i) {
      bool falling = false;
      for (size_t t = 1; t < seq.size(); ++t) {
        if (!seq[t][i] || !seq[t - 1][i]) continue;
        if (falling) CHECK(*seq[t][i] < *seq[t - 1][i]);
        if (*seq[t][i] < *seq[t - 1][i]) falling = true;
      }
    }
  }
}

TEST_CASE("evaluation size for the plug-in bound") {
  CHECK(plugin_eval_n(100, ToleranceMode::replacement, false) == 100);
  CHECK(plugin_eval_n(100, ToleranceMode::deletion, false) == 121);
  CHECK(plugin_eval_n(100, ToleranceMode::deletion, true) == 124);
  for (long long n : {2, 10, 57, 360, 4096}) {
    long long m = plugin_eval_n(n, ToleranceMode::deletion, true);
    CHECK(m - kappa(m) >= n);
    CHECK((m - 1) - kappa(m - 1) < n);
    CHECK(plugin_eval_n(n, ToleranceMode::deletion, false) == n + kappa(n));
  }
}

TEST_CASE("plug-in bound combines its pieces and rejects mismatched inputs") {
  long long n = 100;
  double delta = 0.25, eps = 0.2;
  EmpiricalTerm sup{0.01, 100, 0.025};
  EmpiricalTerm tol{0.005, 100, 0.025};
  auto b = plugin_error_bound(0.9, n, delta, eps, sup, tol, ToleranceMode::replacement);
  CHECK(b.eval_n == 100);
  CHECK(b.eval_eps == doctest::Approx(0.025));
  CHECK(b.alpha_n == doctest::Approx(1.0 / 0.9));
  CHECK(b.value == doctest::Approx((1.0 / 0.9) / 0.9 * 0.015 + 0.1).epsilon(1e-12));
  CHECK(!b.vacuous);

  EmpiricalTerm bad_n{0.01, 101, 0.025};
  CHECK(thrown_code([&] {
          (void)plugin_error_bound(0.9, n, delta, eps, bad_n, tol, ToleranceMode::replacement);
        }) == Errc::argument_mismatch);
  EmpiricalTerm bad_eps{0.01, 100, 0.03};
  CHECK(thrown_code([&] {
          (void)plugin_error_bound(0.9, n, delta, eps, sup, bad_eps, ToleranceMode::replacement);
        }) == Errc::argument_mismatch);

  // deletion mode shifts the evaluation size
  EmpiricalTerm sup_d{0.01, 121, 0.025};
  EmpiricalTerm tol_d{0.005, 121, 0.025};
  auto bd = plugin_error_bound(0.9, n, delta, eps, sup_d, tol_d, ToleranceMode::deletion);
  CHECK(bd.eval_n == 121);
  CHECK(thrown_code([&] {
          (void)plugin_error_bound(0.9, n, delta, eps, sup, tol, ToleranceMode::deletion);
        }) == Errc::argument_mismatch);

  auto zero = plugin_error_bound(0.0, n, delta, eps, sup, tol, ToleranceMode::replacement);
  CHECK(std::isinf(zero.value));
  CHECK(zero.vacuous);
}
