#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "core/errors.hpp"
#include "core/rng.hpp"

namespace condlab {

// One-dimensional interval with explicit endpoint ownership, so that
// atom masses sitting exactly on a boundary are attributed correctly.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;

  bool contains(double x) const {
    if (x < lo || x > hi) return false;
    if (x == lo && !lo_closed) return false;
    if (x == hi && !hi_closed) return false;
    return true;
  }
};

// finite union of intervals; callers keep the pieces disjoint
using Region = std::vector<Interval>;

struct Box {
  std::vector<double> lo, hi;  // closed box, one entry per axis
  double volume() const;
  bool contains(std::span<const double> x) const;
};

struct DisjointBoxes {
  int dim = 1;
  std::vector<Box> class0, class1;
};

// two finite supports on the line, disjoint across classes
struct DiscreteAlphabet {
  std::vector<double> points0, points1;
  std::vector<double> probs0, probs1;
};

// class 0 uniform on the atoms {j/N : 0 <= j < N}, class 1 uniform on [0,1]
struct AtomsVsContinuum {
  long long atoms = 256;
};

struct LabeledSample {
  int dim = 1;
  std::vector<double> xs;  // flat, row-major
  std::vector<std::uint8_t> ys;

  size_t size() const { return ys.size(); }
  std::span<const double> x(size_t i) const { return {xs.data() + i * static_cast<size_t>(dim), static_cast<size_t>(dim)}; }
  int y(size_t i) const { return ys[i]; }
};

class ClassPair {
 public:
  ClassPair() : v_(AtomsVsContinuum{}) {}
  explicit ClassPair(DisjointBoxes p);
  explicit ClassPair(DiscreteAlphabet p);
  explicit ClassPair(AtomsVsContinuum p);

  int dim() const;

  // one draw from the class-y object distribution
  void sample_one(int y, Rng& rng, double* out) const;

  // the label function induced by the disjoint supports; throws
  // Errc::outside_support off the union of the two supports
  int eta(std::span<const double> x) const;

  // P_y(region); one-dimensional pairs only
  double class_measure(int y, const Region& region) const;

  // extreme points of each class support, as candidate replacement objects
  std::vector<double> support_extremes() const;

  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&v_);
  }

 private:
  std::variant<DisjointBoxes, DiscreteAlphabet, AtomsVsContinuum> v_;
  std::vector<double> cum0_, cum1_;  // cumulative box volumes / point masses
};

// objects drawn independently, object i from class labels[i]; every draw
// is checked against eta before it is accepted into the sample
LabeledSample sample_objects(const ClassPair& pair, const std::vector<std::uint8_t>& labels,
                             std::uint64_t seed);

}  // namespace condlab
