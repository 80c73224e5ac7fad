#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "core/errors.hpp"
#include "core/rng.hpp"

namespace condlab {

using Labels = std::vector<std::uint8_t>;

// Block length schedule: k(i) is the number of zeros emitted after the
// i-th one (i starts at 1). k(i) == 0 is allowed and degenerates to
// back-to-back ones.
struct ScheduleRule {
  enum class Kind { constant, power, list };
  Kind kind = Kind::power;
  long long value = 2;  // constant: the block length; power: the base
  std::vector<long long> values;

  long long k(long long i) const;
  void validate() const;
};

struct IidBernoulli {
  double p = 0.5;
};

// two-state chain on {0,1}: t01 = P(1 | 0), t10 = P(0 | 1)
struct TwoStateMarkov {
  double t01 = 0.5;
  double t10 = 0.5;
  double init1 = 0.5;
};

struct Periodic {
  Labels pattern;
};

struct BlockSchedule {
  ScheduleRule rule;
};

struct ExplicitSeq {
  Labels labels;
};

struct OccupancyResult {
  double value = 0.0;
  bool exact = true;
  double stderr_ = 0.0;
  long long runs = 0;
  // probability mass dropped by the banded chain recursion; counted
  // toward "outside the band", so value is a certified lower bound
  double lost = 0.0;
};

class LabelProcess {
 public:
  LabelProcess() : v_(IidBernoulli{}) {}
  explicit LabelProcess(IidBernoulli p);
  explicit LabelProcess(TwoStateMarkov p);
  explicit LabelProcess(Periodic p);
  explicit LabelProcess(BlockSchedule p);
  explicit LabelProcess(ExplicitSeq p);

  bool deterministic() const;

  Labels sample(long long n, std::uint64_t seed) const;

  // P(Y_{m+1} = 1 | Y_1..Y_m = history); throws Errc::impossible_history
  // when the history has probability zero under this process
  double next_label_prob(std::span<const std::uint8_t> history) const;

  // P(delta <= (#ones among Y_1..Y_n)/n <= 1 - delta). Exact unless an
  // mc_budget is given for a stochastic process, in which case that many
  // sampled paths are used and a binomial standard error is reported.
  OccupancyResult occupancy(double delta, long long n,
                            std::optional<long long> mc_budget = std::nullopt,
                            std::uint64_t seed = 0) const;

  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&v_);
  }

 private:
  Labels expand(long long n) const;  // deterministic variants only

  std::variant<IidBernoulli, TwoStateMarkov, Periodic, BlockSchedule, ExplicitSeq> v_;
};

}  // namespace condlab
