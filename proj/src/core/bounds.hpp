#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "core/errors.hpp"

namespace condlab::bounds {

using BigInt = boost::multiprecision::cpp_int;

// floor(sqrt(n ln n)); the deletion depth used by the tolerance functionals
long long kappa(long long n);

// 1 / (1 - 1/sqrt(n)); diverges at n == 1
double alpha(long long n);

// growth function of single intervals on the line: n(n+1)/2 + 1
// distinct 0/1 patterns on any n points
BigInt shatter_intervals_exact(long long n);
double log_shatter_intervals(long long n);

// Sauer bound sum_{i<=vc} C(n, i), exact and in log space
BigInt sauer_exact(int vc, long long n);
double log_sauer(int vc, long long n);

struct BoundValue {
  std::string name;
  double log_value = 0.0;  // natural log of the raw right-hand side
  double value = 0.0;      // exp(log_value); may round to 0 or inf
  double clamped = 0.0;    // min(value, 1)
  bool vacuous = false;    // right-hand side >= 1
};

// where a bound gets its shatter coefficient S(n) from
struct ShatterFn {
  enum class Kind { intervals, sauer, finite };
  Kind kind = Kind::intervals;
  int vc = 1;               // for sauer
  long long classes = 1;    // for finite
  double log_count(long long n) const;
};

// i.i.d. uniform-deviation and risk bounds
BoundValue vc_agnostic(const ShatterFn& S, long long n, double eps);          // 8 S(n) e^{-n eps^2/128}
BoundValue vc_agnostic_shifted(const ShatterFn& S, long long n, double eps);  // 8 S(n) e^{-n eps^2/512}
BoundValue vc_realizable(const ShatterFn& S, long long n, double eps);        // 2 S(n) e^{-n eps/2}
BoundValue vc_uniform_dev(const ShatterFn& S, long long n, double eps);       // 8 S(n) e^{-n eps^2/32}

// distribution-free tails for the deletion tolerance of empirical risk
// minimisers; the agnostic form needs n > 4/eps^2, the realizable form
// assumes the true rule lies in the class
BoundValue erm_tolerance_agnostic(const ShatterFn& S, long long n, double eps);    // 16 S(n) e^{-n eps^2/512}
BoundValue erm_tolerance_realizable(const ShatterFn& S, long long n, double eps);  // 4 S(2n) 2^{-n eps/8}

// closed-form error tails for ERM under conditionally independent labels;
// c_n is the probability that the label frequency stays in [delta, 1-delta]
BoundValue erm_error_agnostic(const ShatterFn& S, long long n, double delta, double eps,
                              double c_n, int indicator);
BoundValue erm_error_realizable(const ShatterFn& S, long long n, double delta, double eps,
                                double c_n);

// generic plug-in error bound: alpha_n / c_n * (sup_term + tol_term) + (1 - c_n),
// with both empirical terms checked to sit at the required sample size and
// accuracy (delta * eps / 2). Deletion mode evaluates at n + kappa(n), or at
// the smallest m with m - kappa(m) >= n when proof_form is set; replacement
// mode evaluates at n itself.
enum class ToleranceMode { deletion, replacement };

struct EmpiricalTerm {
  double value = 0.0;
  long long at_n = 0;
  double at_eps = 0.0;
};

struct PluginBound {
  double value = 0.0;
  double c_n = 0.0;
  double alpha_n = 0.0;
  long long eval_n = 0;   // sample size the empirical terms must use
  double eval_eps = 0.0;  // accuracy the empirical terms must use
  bool vacuous = false;
};

long long plugin_eval_n(long long n, ToleranceMode mode, bool proof_form);

PluginBound plugin_error_bound(double c_n, long long n, double delta, double eps,
                               const EmpiricalTerm& sup_term, const EmpiricalTerm& tol_term,
                               ToleranceMode mode, bool proof_form = false);

}  // namespace condlab::bounds
