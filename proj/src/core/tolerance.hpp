#pragma once

#include <optional>
#include <utility>

#include "core/class_pair.hpp"
#include "core/classifiers.hpp"
#include "core/error_eval.hpp"

namespace condlab::tolerance {

enum class Mode { deletion, replacement };
enum class Search { exact, stochastic };

struct Options {
  Mode mode = Mode::deletion;
  Search search = Search::stochastic;
  long long kappa = -1;    // -1: floor(sqrt(n ln n))
  long long budget = 256;  // stochastic search: candidate evaluations
  std::uint64_t seed = 0;
  long long fresh_per_class = 64;  // replacement pool: fresh draws per class
  std::optional<long long> mc_draws;
};

// one candidate perturbation of the training sample
struct Perturbation {
  std::vector<size_t> removed;
  // replacement: sample index -> (new object, its label under eta)
  std::vector<std::pair<size_t, std::pair<std::vector<double>, int>>> replaced;
};

struct PointwiseReport {
  double value = 0.0;       // max |err(full) - err(perturbed)| over tried candidates
  double base_error = 0.0;  // error of the rule fitted on the untouched sample
  long long kappa = 0;
  long long evaluations = 0;
  bool exhaustive = false;  // every admissible perturbation was evaluated
  Perturbation witness;
};

// sensitivity of the fitted rule's next-step error to changing at most
// kappa sample points, for labels mixed i.i.d. with weight p on class 1
PointwiseReport tolerance_pointwise(const ClassifierSpec& spec, const ClassPair& pair, double p,
                                    const LabeledSample& sample, const Options& opt);

struct DistReport {
  long long n = 0;
  double eps = 0.0;
  long long runs = 0;
  double exceed = 0.0;  // fraction of runs with tolerance value > eps
  double stderr_ = 0.0;
  double mean_value = 0.0;
  double max_value = 0.0;
  bool lower_bound = false;  // some run's search was not exhaustive
};

DistReport tolerance_exceed_prob(const ClassifierSpec& spec, const ClassPair& pair, double p,
                                 long long n, double eps, const Options& opt, long long runs,
                                 std::uint64_t seed, int threads = 1);

struct SupReport {
  double value = 0.0;
  double stderr_ = 0.0;
  double argmax_p = 0.0;
  std::vector<DistReport> points;
  std::vector<double> ps;
};

SupReport tolerance_sup(const ClassifierSpec& spec, const ClassPair& pair, double delta,
                        long long n, double eps, const Options& opt, int grid, long long runs,
                        std::uint64_t seed, int threads = 1);

// number of candidates a full enumeration would visit; used by the guards
double enumeration_size(long long n, long long kappa, Mode mode, long long pool_size);

}  // namespace condlab::tolerance
