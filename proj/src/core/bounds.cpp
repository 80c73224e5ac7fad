#include "core/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace condlab::bounds {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_choose(long long n, long long k) {
  if (k < 0 || k > n) return kNegInf;
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

double log_sum_exp(const std::vector<double>& ls) {
  double m = kNegInf;
  for (double l : ls) m = std::max(m, l);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double l : ls) s += std::exp(l - m);
  return m + std::log(s);
}

BoundValue make_bound(std::string name, double log_value) {
  BoundValue b;
  b.name = std::move(name);
  b.log_value = log_value;
  b.value = std::exp(log_value);
  b.clamped = std::min(b.value, 1.0);
  b.vacuous = !(log_value < 0.0);
  return b;
}

void check_n(long long n) {
  if (n < 1) fail(Errc::invalid_argument, "n must be >= 1");
}

void check_eps(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) fail(Errc::invalid_argument, "eps must be positive");
}

void check_cn(double c_n) {
  if (!(c_n >= 0.0 && c_n <= 1.0)) fail(Errc::invalid_argument, "c_n must lie in [0,1]");
}

// log of alpha_n / c_n; infinite when c_n == 0
double log_alpha_over_c(long long n, double c_n) {
  if (c_n == 0.0) return std::numeric_limits<double>::infinity();
  return std::log(alpha(n)) - std::log(c_n);
}

}  // namespace

long long kappa(long long n) {
  check_n(n);
  double x = static_cast<double>(n) * std::log(static_cast<double>(n));
  long long k = static_cast<long long>(std::floor(std::sqrt(std::max(x, 0.0))));
  while (static_cast<double>(k + 1) * static_cast<double>(k + 1) <= x) ++k;
  while (k > 0 && static_cast<double>(k) * static_cast<double>(k) > x) --k;
  return k;
}

double alpha(long long n) {
  check_n(n);
  if (n == 1) fail(Errc::pole_at_one, "alpha diverges at n == 1");
  return 1.0 / (1.0 - 1.0 / std::sqrt(static_cast<double>(n)));
}

BigInt shatter_intervals_exact(long long n) {
  check_n(n);
  BigInt m = n;
  return m * (m + 1) / 2 + 1;
}

double log_shatter_intervals(long long n) {
  check_n(n);
  double m = static_cast<double>(n);
  return std::log(m * (m + 1.0) / 2.0 + 1.0);
}

BigInt sauer_exact(int vc, long long n) {
  check_n(n);
  if (vc < 0) fail(Errc::invalid_argument, "vc must be >= 0");
  BigInt total = 0, c = 1;
  for (long long i = 0; i <= std::min<long long>(vc, n); ++i) {
    total += c;
    c = c * (n - i) / (i + 1);
  }
  return total;
}

double log_sauer(int vc, long long n) {
  check_n(n);
  if (vc < 0) fail(Errc::invalid_argument, "vc must be >= 0");
  if (vc >= n) return static_cast<double>(n) * std::log(2.0);
  std::vector<double> ls;
  for (long long i = 0; i <= vc; ++i) ls.push_back(log_choose(n, i));
  return log_sum_exp(ls);
}

double ShatterFn::log_count(long long n) const {
  switch (kind) {
    case Kind::intervals:
      return log_shatter_intervals(n);
    case Kind::sauer:
      return log_sauer(vc, n);
    case Kind::finite: {
      if (classes < 1) fail(Errc::invalid_argument, "class count must be >= 1");
      // a finite class realises at most min(|C|, 2^n) patterns
      return std::min(std::log(static_cast<double>(classes)), static_cast<double>(n) * std::log(2.0));
    }
  }
  return 0.0;
}

BoundValue vc_agnostic(const ShatterFn& S, long long n, double eps) {
  check_n(n);
  check_eps(eps);
  return make_bound("vc_agnostic",
                    std::log(8.0) + S.log_count(n) - static_cast<double>(n) * eps * eps / 128.0);
}

BoundValue vc_agnostic_shifted(const ShatterFn& S, long long n, double eps) {
  check_n(n);
  check_eps(eps);
  return make_bound("vc_agnostic_shifted",
                    std::log(8.0) + S.log_count(n) - static_cast<double>(n) * eps * eps / 512.0);
}

BoundValue vc_realizable(const ShatterFn& S, long long n, double eps) {
  check_n(n);
  check_eps(eps);
  return make_bound("vc_realizable", std::log(2.0) + S.log_count(n) - static_cast<double>(n) * eps / 2.0);
}

BoundValue vc_uniform_dev(const ShatterFn& S, long long n, double eps) {
  check_n(n);
  check_eps(eps);
  return make_bound("vc_uniform_dev",
                    std::log(8.0) + S.log_count(n) - static_cast<double>(n) * eps * eps / 32.0);
}

BoundValue erm_tolerance_agnostic(const ShatterFn& S, long long n, double eps) {
  check_n(n);
  check_eps(eps);
  if (!(static_cast<double>(n) > 4.0 / (eps * eps)))
    fail(Errc::precondition_violated, "agnostic tolerance tail needs n > 4/eps^2");
  return make_bound("erm_tolerance_agnostic",
                    std::log(16.0) + S.log_count(n) - static_cast<double>(n) * eps * eps / 512.0);
}

BoundValue erm_tolerance_realizable(const ShatterFn& S, long long n, double eps) {
  check_n(n);
  check_eps(eps);
  return make_bound("erm_tolerance_realizable",
                    std::log(4.0) + S.log_count(2 * n) -
                        static_cast<double>(n) * eps / 8.0 * std::log(2.0));
}

BoundValue erm_error_agnostic(const ShatterFn& S, long long n, double delta, double eps, double c_n,
                              int indicator) {
  check_n(n);
  check_eps(eps);
  check_cn(c_n);
  if (!(delta > 0.0 && delta <= 0.5)) fail(Errc::invalid_argument, "delta must lie in (0, 0.5]");
  if (indicator != 0 && indicator != 1) fail(Errc::invalid_argument, "indicator must be 0 or 1");
  if (!(static_cast<double>(n) > 4.0 / (eps * eps)))
    fail(Errc::precondition_violated, "agnostic error tail needs n > 4/eps^2");
  double tail = std::log(16.0) + log_alpha_over_c(n, c_n) + S.log_count(n) -
                static_cast<double>(n) * delta * delta * eps * eps / 2048.0;
  std::vector<double> terms{tail};
  if (indicator) terms.push_back(0.0);
  if (c_n < 1.0) terms.push_back(std::log1p(-c_n));
  return make_bound("erm_error_agnostic", log_sum_exp(terms));
}

BoundValue erm_error_realizable(const ShatterFn& S, long long n, double delta, double eps,
                                 double c_n) {
  check_n(n);
  check_eps(eps);
  check_cn(c_n);
  if (!(delta > 0.0 && delta <= 0.5)) fail(Errc::invalid_argument, "delta must lie in (0, 0.5]");
  double tail = std::log(4.0) + log_alpha_over_c(n, c_n) + S.log_count(n) -
                static_cast<double>(n) * delta * eps / 16.0;
  std::vector<double> terms{tail};
  if (c_n < 1.0) terms.push_back(std::log1p(-c_n));
  return make_bound("erm_error_realizable", log_sum_exp(terms));
}

long long plugin_eval_n(long long n, ToleranceMode mode, bool proof_form) {
  check_n(n);
  if (mode == ToleranceMode::replacement) return n;
  if (!proof_form) return n + kappa(n);
  long long m = n;
  while (m - kappa(m) < n) ++m;
  return m;
}

PluginBound plugin_error_bound(double c_n, long long n, double delta, double eps,
                               const EmpiricalTerm& sup_term, const EmpiricalTerm& tol_term,
                               ToleranceMode mode, bool proof_form) {
  check_n(n);
  check_eps(eps);
  check_cn(c_n);
  if (!(delta > 0.0 && delta <= 0.5)) fail(Errc::invalid_argument, "delta must lie in (0, 0.5]");
  if (sup_term.value < 0.0 || tol_term.value < 0.0)
    fail(Errc::invalid_argument, "empirical terms must be nonnegative");

  PluginBound out;
  out.eval_n = plugin_eval_n(n, mode, proof_form);
  out.eval_eps = delta * eps / 2.0;
  auto eps_match = [&](double got) { return std::abs(got - out.eval_eps) <= 1e-12 * std::max(1.0, out.eval_eps); };
  if (sup_term.at_n != out.eval_n || !eps_match(sup_term.at_eps))
    fail(Errc::argument_mismatch, "sup term evaluated at the wrong point");
  if (tol_term.at_n != out.eval_n || !eps_match(tol_term.at_eps))
    fail(Errc::argument_mismatch, "tolerance term evaluated at the wrong point");

  out.c_n = c_n;
  out.alpha_n = alpha(n);
  if (c_n == 0.0) {
    out.value = std::numeric_limits<double>::infinity();
  } else {
    out.value = out.alpha_n / c_n * (sup_term.value + tol_term.value) + (1.0 - c_n);
  }
  out.vacuous = !(out.value < 1.0);
  return out;
}

}  // namespace condlab::bounds
