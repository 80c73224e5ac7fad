#pragma once

#include <optional>

#include "core/class_pair.hpp"
#include "core/classifiers.hpp"
#include "core/label_process.hpp"

namespace condlab {

struct ErrorEstimate {
  double value = 0.0;
  bool exact = true;
  long long draws = 0;
  double stderr_ = 0.0;
};

struct EvalOptions {
  // unset: exact via decision regions (one-dimensional pairs only);
  // set: Monte Carlo with this many draws per class error
  std::optional<long long> mc_draws;
  std::uint64_t seed = 0;
};

// P_y(f(X) != y), from the fitted decision regions
ErrorEstimate class_error_exact(const Fitted& f, const ClassPair& pair, int y);

// the same by sampling X ~ P_y and applying the direct decision rule
ErrorEstimate class_error_mc(const Fitted& f, const ClassPair& pair, int y, long long draws,
                             std::uint64_t seed);

// error of f on the next example: q * err1 + (1-q) * err0 with
// q = P(next label is 1 | history)
struct StepError {
  double value = 0.0;
  double q = 0.0;
  ErrorEstimate err0, err1;
};
StepError step_error(const Fitted& f, const ClassPair& pair, const LabelProcess& process,
                     std::span<const std::uint8_t> history, const EvalOptions& eval = {});

struct CurvePoint {
  long long n = 0;
  long long runs = 0;
  double mean = 0.0;
  double stderr_ = 0.0;
  std::vector<double> exceed;  // P(step error > eps), one entry per eps
  std::vector<double> exceed_stderr;
};

struct CurveOptions {
  std::vector<long long> ns;
  std::vector<double> eps;
  long long runs = 100;
  std::uint64_t seed = 0;
  int threads = 1;
  EvalOptions eval;
};

std::vector<CurvePoint> error_prob_curve(const ClassifierSpec& spec, const ClassPair& pair,
                                         const LabelProcess& process, const CurveOptions& opt);

// empirical sup over p in [delta, 1-delta] of P(step error > eps) when the
// labels are i.i.d. Bernoulli(p): evaluated on a finite grid, so the
// reported value is a certified lower bound on the supremum
struct NablaPoint {
  double p = 0.0;
  double exceed = 0.0;
  double stderr_ = 0.0;
};

struct NablaReport {
  double value = 0.0;
  double stderr_ = 0.0;
  double argmax_p = 0.0;
  std::vector<NablaPoint> points;
};

NablaReport nabla_estimate(const ClassifierSpec& spec, const ClassPair& pair, double delta,
                           long long n, double eps, int grid, long long runs, std::uint64_t seed,
                           int threads = 1, const EvalOptions& eval = {});

}  // namespace condlab
