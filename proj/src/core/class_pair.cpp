#include "core/class_pair.hpp"

#include <algorithm>
#include <cmath>

namespace condlab {

namespace {

void build_cum(const std::vector<double>& weights, std::vector<double>& cum) {
  cum.resize(weights.size());
  double acc = 0.0;
  for (size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    cum[i] = acc;
  }
}

size_t pick(const std::vector<double>& cum, double u) {
  double target = u * cum.back();
  auto it = std::upper_bound(cum.begin(), cum.end(), target);
  if (it == cum.end()) --it;
  return static_cast<size_t>(it - cum.begin());
}

double overlap_len(const Interval& a, double lo, double hi) {
  double l = std::max(a.lo, lo), h = std::min(a.hi, hi);
  return h > l ? h - l : 0.0;
}

}  // namespace

double Box::volume() const {
  double v = 1.0;
  for (size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
  return v;
}

bool Box::contains(std::span<const double> x) const {
  for (size_t i = 0; i < lo.size(); ++i)
    if (x[i] < lo[i] || x[i] > hi[i]) return false;
  return true;
}

ClassPair::ClassPair(DisjointBoxes p) : v_(std::move(p)) {
  const auto& b = std::get<DisjointBoxes>(v_);
  if (b.dim < 1) fail(Errc::invalid_argument, "dim must be >= 1");
  if (b.class0.empty() || b.class1.empty()) fail(Errc::invalid_argument, "each class needs at least one box");
  auto check_box = [&](const Box& box) {
    if (static_cast<int>(box.lo.size()) != b.dim || static_cast<int>(box.hi.size()) != b.dim)
      fail(Errc::invalid_argument, "box dimension mismatch");
    for (int i = 0; i < b.dim; ++i)
      if (!(box.lo[i] < box.hi[i])) fail(Errc::invalid_argument, "box sides must have positive length");
  };
  for (const auto& box : b.class0) check_box(box);
  for (const auto& box : b.class1) check_box(box);
  for (const auto& a : b.class0)
    for (const auto& c : b.class1) {
      bool separated = false;
      for (int i = 0; i < b.dim && !separated; ++i)
        separated = a.hi[i] < c.lo[i] || c.hi[i] < a.lo[i];
      if (!separated) fail(Errc::invalid_argument, "class supports must have disjoint closures");
    }
  std::vector<double> w0, w1;
  for (const auto& box : b.class0) w0.push_back(box.volume());
  for (const auto& box : b.class1) w1.push_back(box.volume());
  build_cum(w0, cum0_);
  build_cum(w1, cum1_);
}

ClassPair::ClassPair(DiscreteAlphabet p) : v_(std::move(p)) {
  const auto& a = std::get<DiscreteAlphabet>(v_);
  if (a.points0.empty() || a.points1.empty()) fail(Errc::invalid_argument, "each class needs at least one point");
  if (a.points0.size() != a.probs0.size() || a.points1.size() != a.probs1.size())
    fail(Errc::invalid_argument, "points/probs length mismatch");
  auto check = [](const std::vector<double>& probs) {
    double s = 0.0;
    for (double q : probs) {
      if (!(q > 0.0)) fail(Errc::invalid_argument, "point masses must be positive");
      s += q;
    }
    if (std::abs(s - 1.0) > 1e-9) fail(Errc::invalid_argument, "point masses must sum to 1");
  };
  check(a.probs0);
  check(a.probs1);
  for (double x : a.points0)
    for (double y : a.points1)
      if (x == y) fail(Errc::invalid_argument, "class supports must be disjoint");
  build_cum(a.probs0, cum0_);
  build_cum(a.probs1, cum1_);
}

ClassPair::ClassPair(AtomsVsContinuum p) : v_(p) {
  if (p.atoms < 1) fail(Errc::invalid_argument, "atom count must be >= 1");
}

int ClassPair::dim() const {
  if (const auto* b = std::get_if<DisjointBoxes>(&v_)) return b->dim;
  return 1;
}

void ClassPair::sample_one(int y, Rng& rng, double* out) const {
  if (const auto* b = std::get_if<DisjointBoxes>(&v_)) {
    const auto& boxes = y ? b->class1 : b->class0;
    const auto& cum = y ? cum1_ : cum0_;
    const Box& box = boxes[pick(cum, rng.uniform01())];
    for (int i = 0; i < b->dim; ++i) out[i] = rng.uniform(box.lo[i], box.hi[i]);
    return;
  }
  if (const auto* a = std::get_if<DiscreteAlphabet>(&v_)) {
    const auto& pts = y ? a->points1 : a->points0;
    const auto& cum = y ? cum1_ : cum0_;
    out[0] = pts[pick(cum, rng.uniform01())];
    return;
  }
  const auto& ac = std::get<AtomsVsContinuum>(v_);
  if (y == 0) {
    out[0] = static_cast<double>(rng.below(static_cast<std::uint64_t>(ac.atoms))) / static_cast<double>(ac.atoms);
    return;
  }
  // rejection keeps the draw off the atom set; a hit has probability ~ N * 2^-53
  for (;;) {
    double x = rng.uniform01();
    double j = std::round(x * static_cast<double>(ac.atoms));
    if (j >= 0.0 && j < static_cast<double>(ac.atoms) && j / static_cast<double>(ac.atoms) == x) continue;
    out[0] = x;
    return;
  }
}

int ClassPair::eta(std::span<const double> x) const {
  if (const auto* b = std::get_if<DisjointBoxes>(&v_)) {
    for (const auto& box : b->class0)
      if (box.contains(x)) return 0;
    for (const auto& box : b->class1)
      if (box.contains(x)) return 1;
    fail(Errc::outside_support, "object outside both class supports");
  }
  if (const auto* a = std::get_if<DiscreteAlphabet>(&v_)) {
    for (double p : a->points0)
      if (x[0] == p) return 0;
    for (double p : a->points1)
      if (x[0] == p) return 1;
    fail(Errc::outside_support, "object outside both class supports");
  }
  const auto& ac = std::get<AtomsVsContinuum>(v_);
  double v = x[0];
  if (v < 0.0 || v > 1.0) fail(Errc::outside_support, "object outside both class supports");
  double j = std::round(v * static_cast<double>(ac.atoms));
  if (j >= 0.0 && j < static_cast<double>(ac.atoms) && j / static_cast<double>(ac.atoms) == v) return 0;
  return 1;
}

double ClassPair::class_measure(int y, const Region& region) const {
  if (dim() != 1) fail(Errc::unsupported_dimension, "class_measure needs a one-dimensional pair");
  if (const auto* b = std::get_if<DisjointBoxes>(&v_)) {
    const auto& boxes = y ? b->class1 : b->class0;
    const auto& cum = y ? cum1_ : cum0_;
    double total = cum.back();
    double acc = 0.0;
    for (const auto& box : boxes)
      for (const auto& iv : region) acc += overlap_len(iv, box.lo[0], box.hi[0]);
    return acc / total;
  }
  if (const auto* a = std::get_if<DiscreteAlphabet>(&v_)) {
    const auto& pts = y ? a->points1 : a->points0;
    const auto& probs = y ? a->probs1 : a->probs0;
    double acc = 0.0;
    for (size_t i = 0; i < pts.size(); ++i)
      for (const auto& iv : region)
        if (iv.contains(pts[i])) {
          acc += probs[i];
          break;
        }
    return acc;
  }
  const auto& ac = std::get<AtomsVsContinuum>(v_);
  if (y == 1) {
    double acc = 0.0;
    for (const auto& iv : region) acc += overlap_len(iv, 0.0, 1.0);
    return acc;
  }
  const double N = static_cast<double>(ac.atoms);
  long long count = 0;
  for (const auto& iv : region) {
    double lo = std::max(iv.lo, 0.0), hi = std::min(iv.hi, (N - 1.0) / N);
    if (lo > hi) continue;
    long long jlo = static_cast<long long>(std::ceil(lo * N)) - 2;
    long long jhi = static_cast<long long>(std::floor(hi * N)) + 2;
    jlo = std::max<long long>(jlo, 0);
    jhi = std::min<long long>(jhi, ac.atoms - 1);
    for (long long j = jlo; j <= jhi; ++j)
      if (iv.contains(static_cast<double>(j) / N)) ++count;
  }
  return static_cast<double>(count) / N;
}

std::vector<double> ClassPair::support_extremes() const {
  std::vector<double> out;
  if (const auto* b = std::get_if<DisjointBoxes>(&v_)) {
    if (b->dim != 1) return out;  // d > 1 pools are seeded from duplicates and fresh draws
    for (const auto& box : b->class0) {
      out.push_back(box.lo[0]);
      out.push_back(box.hi[0]);
    }
    for (const auto& box : b->class1) {
      out.push_back(box.lo[0]);
      out.push_back(box.hi[0]);
    }
    return out;
  }
  if (const auto* a = std::get_if<DiscreteAlphabet>(&v_)) {
    auto push_minmax = [&](const std::vector<double>& pts) {
      out.push_back(*std::min_element(pts.begin(), pts.end()));
      out.push_back(*std::max_element(pts.begin(), pts.end()));
    };
    push_minmax(a->points0);
    push_minmax(a->points1);
    return out;
  }
  const auto& ac = std::get<AtomsVsContinuum>(v_);
  const double N = static_cast<double>(ac.atoms);
  out = {0.0, (N - 1.0) / N, 0.5 / N, 1.0};
  return out;
}

LabeledSample sample_objects(const ClassPair& pair, const std::vector<std::uint8_t>& labels,
                             std::uint64_t seed) {
  LabeledSample s;
  s.dim = pair.dim();
  s.ys = labels;
  s.xs.resize(labels.size() * static_cast<size_t>(s.dim));
  Rng rng(seed);
  for (size_t i = 0; i < labels.size(); ++i) {
    double* out = s.xs.data() + i * static_cast<size_t>(s.dim);
    pair.sample_one(labels[i], rng, out);
    if (pair.eta({out, static_cast<size_t>(s.dim)}) != labels[i])
      fail(Errc::outside_support, "generated object disagrees with its label");
  }
  return s;
}

}  // namespace condlab
