#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "core/class_pair.hpp"

namespace condlab {

struct CellWidthRule {
  enum class Kind { default_rule, constant, power };
  Kind kind = Kind::default_rule;
  double h = 0.1;         // constant
  double coeff = 1.0;     // power: h_n = coeff * n^-exponent
  double exponent = 0.5;

  double width(long long n, int dim) const;
};

struct NearestNeighbourSpec {};

struct PartitionSpec {
  CellWidthRule cell_width;
};

struct ErmIntervalSpec {};

struct ErmKIntervalsSpec {
  int k = 2;
};

struct BoxUnion {
  std::vector<Box> boxes;  // closed; predicts 1 inside the union
  bool contains(std::span<const double> x) const;
};

struct ErmFiniteSpec {
  std::vector<BoxUnion> hypotheses;
};

struct ClassifierSpec {
  std::variant<NearestNeighbourSpec, PartitionSpec, ErmIntervalSpec, ErmKIntervalsSpec, ErmFiniteSpec> v;

  std::string name() const;

  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&v);
  }
};

// Decision function on the line as sorted breakpoints; piece i covers
// [breaks[i-1], breaks[i]) and carries labels[i]. Built so that at(x)
// agrees with the fitted classifier's direct rule at every double.
struct PiecewiseConstant1D {
  std::vector<double> breaks;
  std::vector<std::uint8_t> labels;  // breaks.size() + 1 entries

  int at(double x) const;
  Region where(int label) const;
};

class Fitted {
 public:
  virtual ~Fitted() = default;
  virtual int predict(std::span<const double> x) const = 0;
  // null when the object dimension is not 1
  virtual const PiecewiseConstant1D* regions() const { return nullptr; }
  virtual bool symmetric() const { return true; }
};

using FittedPtr = std::unique_ptr<const Fitted>;

FittedPtr fit(const ClassifierSpec& spec, const LabeledSample& sample);

long long empirical_errors(const Fitted& f, const LabeledSample& sample);

// exact empirical risk minimisation over single closed intervals;
// ties broken toward the shortest interval, then the leftmost
struct IntervalFit {
  bool empty = true;
  double lo = 0.0, hi = 0.0;
  long long errors = 0;
};
IntervalFit erm_interval(const LabeledSample& sample);

// exact ERM over unions of at most k closed intervals; ties broken toward
// fewer intervals, then smaller total length
struct KIntervalsFit {
  std::vector<std::pair<double, double>> intervals;
  long long errors = 0;
};
KIntervalsFit erm_k_intervals(const LabeledSample& sample, int k);

// smallest x with pred(x) true, given pred monotone (false then true)
// in a neighbourhood of approx; walks outward in ulp space then bisects
double first_where_near(double approx, const std::function<bool(double)>& pred);

}  // namespace condlab
