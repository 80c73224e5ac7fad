#include "core/classifiers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>

namespace condlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// order-preserving bijection between doubles and unsigned keys
std::uint64_t dkey(double x) {
  std::uint64_t u = std::bit_cast<std::uint64_t>(x);
  return (u >> 63) ? ~u : (u | 0x8000000000000000ULL);
}

double dunkey(std::uint64_t k) {
  return std::bit_cast<double>((k >> 63) ? (k ^ 0x8000000000000000ULL) : ~k);
}

// smallest x in (lo_x, hi_x] with pred(x), for pred monotone and
// pred(lo_x) == false, pred(hi_x) == true
double first_between(double lo_x, double hi_x, const std::function<bool(double)>& pred) {
  std::uint64_t lo = dkey(lo_x), hi = dkey(hi_x);
  while (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (pred(dunkey(mid))) hi = mid;
    else lo = mid;
  }
  return dunkey(hi);
}

struct SortedPoints {
  std::vector<double> ux;             // unique x, ascending
  std::vector<std::uint8_t> ulabel;   // label per unique x
  std::vector<size_t> ufirst;         // lowest original index per unique x
};

SortedPoints sort_points(const LabeledSample& s) {
  std::vector<size_t> order(s.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    double xa = s.xs[a], xb = s.xs[b];
    return xa != xb ? xa < xb : a < b;
  });
  SortedPoints sp;
  for (size_t i : order) {
    double x = s.xs[i];
    if (!sp.ux.empty() && sp.ux.back() == x) continue;
    sp.ux.push_back(x);
    sp.ulabel.push_back(s.ys[i]);
    sp.ufirst.push_back(i);
  }
  return sp;
}

struct Group {
  double x;
  long long w;  // (#ones - #zeros) at this x
};

std::pair<std::vector<Group>, long long> make_groups(const LabeledSample& s) {
  std::vector<double> xs(s.xs);
  std::vector<std::uint8_t> ys(s.ys);
  std::vector<size_t> order(s.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return xs[a] < xs[b]; });
  std::vector<Group> groups;
  long long total1 = 0;
  for (size_t i : order) {
    total1 += ys[i];
    long long w = ys[i] ? 1 : -1;
    if (!groups.empty() && groups.back().x == xs[i])
      groups.back().w += w;
    else
      groups.push_back({xs[i], w});
  }
  return {std::move(groups), total1};
}

class NNFitted final : public Fitted {
 public:
  NNFitted(const LabeledSample& s) : dim_(s.dim) {
    if (dim_ == 1) {
      sp_ = sort_points(s);
      build_regions();
    } else {
      pts_ = s.xs;
      lab_ = s.ys;
    }
  }

  int predict(std::span<const double> x) const override {
    if (dim_ == 1) return predict1(x[0]);
    size_t n = lab_.size();
    double best = kInf;
    size_t best_i = 0;
    for (size_t i = 0; i < n; ++i) {
      double d2 = 0.0;
      for (int a = 0; a < dim_; ++a) {
        double diff = x[static_cast<size_t>(a)] - pts_[i * static_cast<size_t>(dim_) + static_cast<size_t>(a)];
        d2 += diff * diff;
      }
      if (d2 < best) {
        best = d2;
        best_i = i;
      }
    }
    return lab_[best_i];
  }

  const PiecewiseConstant1D* regions() const override { return dim_ == 1 ? &pc_ : nullptr; }

 private:
  int predict1(double x) const {
    const auto& ux = sp_.ux;
    size_t i = static_cast<size_t>(std::lower_bound(ux.begin(), ux.end(), x) - ux.begin());
    if (i == 0) return sp_.ulabel[0];
    if (i == ux.size()) return sp_.ulabel.back();
    double dl = x - ux[i - 1], dr = ux[i] - x;
    if (dl < dr) return sp_.ulabel[i - 1];
    if (dr < dl) return sp_.ulabel[i];
    return sp_.ufirst[i - 1] < sp_.ufirst[i] ? sp_.ulabel[i - 1] : sp_.ulabel[i];
  }

  void build_regions() {
    pc_.breaks.clear();
    pc_.labels.clear();
    pc_.labels.push_back(sp_.ulabel[0]);
    for (size_t i = 1; i < sp_.ux.size(); ++i) {
      if (sp_.ulabel[i] == sp_.ulabel[i - 1]) continue;
      std::uint8_t want = sp_.ulabel[i];
      double b = first_between(sp_.ux[i - 1], sp_.ux[i],
                               [&](double x) { return predict1(x) == want; });
      pc_.breaks.push_back(b);
      pc_.labels.push_back(want);
    }
  }

  int dim_;
  SortedPoints sp_;
  std::vector<double> pts_;
  std::vector<std::uint8_t> lab_;
  PiecewiseConstant1D pc_;
};

class PartitionFitted final : public Fitted {
 public:
  PartitionFitted(const LabeledSample& s, const CellWidthRule& rule) : dim_(s.dim) {
    h_ = rule.width(static_cast<long long>(s.size()), dim_);
    if (dim_ == 1) {
      for (size_t i = 0; i < s.size(); ++i) {
        auto& c = cells1_[cell_of(s.xs[i])];
        (s.ys[i] ? c.second : c.first)++;
      }
      build_regions();
    } else {
      std::vector<long long> key(static_cast<size_t>(dim_));
      for (size_t i = 0; i < s.size(); ++i) {
        for (int a = 0; a < dim_; ++a) key[static_cast<size_t>(a)] = cell_of(s.x(i)[static_cast<size_t>(a)]);
        auto& c = cellsN_[key];
        (s.ys[i] ? c.second : c.first)++;
      }
    }
  }

  int predict(std::span<const double> x) const override {
    if (dim_ == 1) {
      auto it = cells1_.find(cell_of(x[0]));
      if (it == cells1_.end()) return 0;
      return it->second.second > it->second.first ? 1 : 0;
    }
    std::vector<long long> key(static_cast<size_t>(dim_));
    for (int a = 0; a < dim_; ++a) key[static_cast<size_t>(a)] = cell_of(x[static_cast<size_t>(a)]);
    auto it = cellsN_.find(key);
    if (it == cellsN_.end()) return 0;
    return it->second.second > it->second.first ? 1 : 0;
  }

  const PiecewiseConstant1D* regions() const override { return dim_ == 1 ? &pc_ : nullptr; }

 private:
  long long cell_of(double x) const {
    double f = std::floor(x / h_);
    if (f < -9.0e18 || f > 9.0e18) return f < 0 ? std::numeric_limits<long long>::min() / 2
                                                : std::numeric_limits<long long>::max() / 2;
    return static_cast<long long>(f);
  }

  // exact first double belonging to cell >= j; the arithmetic boundary
  // j*h is only approximate because x/h rounds
  double cell_edge(long long j) const {
    double approx = static_cast<double>(j) * h_;
    auto pred = [&](double x) { return cell_of(x) >= j; };
    return first_where_near(approx, pred);
  }

  void build_regions() {
    std::vector<long long> ones;
    for (const auto& [j, c] : cells1_)
      if (c.second > c.first) ones.push_back(j);
    std::sort(ones.begin(), ones.end());
    pc_.breaks.clear();
    pc_.labels.clear();
    pc_.labels.push_back(0);
    size_t i = 0;
    while (i < ones.size()) {
      size_t j = i;
      while (j + 1 < ones.size() && ones[j + 1] == ones[j] + 1) ++j;
      pc_.breaks.push_back(cell_edge(ones[i]));
      pc_.labels.push_back(1);
      pc_.breaks.push_back(cell_edge(ones[j] + 1));
      pc_.labels.push_back(0);
      i = j + 1;
    }
  }

  int dim_;
  double h_;
  std::unordered_map<long long, std::pair<long long, long long>> cells1_;
  std::map<std::vector<long long>, std::pair<long long, long long>> cellsN_;
  PiecewiseConstant1D pc_;
};

class IntervalsFitted final : public Fitted {
 public:
  IntervalsFitted(std::vector<std::pair<double, double>> ivs) : ivs_(std::move(ivs)) {
    std::sort(ivs_.begin(), ivs_.end());
    pc_.labels.push_back(0);
    for (const auto& [lo, hi] : ivs_) {
      pc_.breaks.push_back(lo);
      pc_.labels.push_back(1);
      pc_.breaks.push_back(std::nextafter(hi, kInf));
      pc_.labels.push_back(0);
    }
  }

  int predict(std::span<const double> x) const override {
    for (const auto& [lo, hi] : ivs_)
      if (x[0] >= lo && x[0] <= hi) return 1;
    return 0;
  }

  const PiecewiseConstant1D* regions() const override { return &pc_; }

 private:
  std::vector<std::pair<double, double>> ivs_;
  PiecewiseConstant1D pc_;
};

class FiniteFitted final : public Fitted {
 public:
  FiniteFitted(const BoxUnion& h, size_t index, int dim) : h_(h), index_(index), dim_(dim) {
    if (dim_ == 1) {
      // canonicalise to disjoint closed intervals; unions touching in
      // double space are merged so the breakpoint list stays increasing
      std::vector<std::pair<double, double>> ivs;
      for (const auto& b : h_.boxes) ivs.emplace_back(b.lo[0], b.hi[0]);
      std::sort(ivs.begin(), ivs.end());
      std::vector<std::pair<double, double>> merged;
      for (const auto& iv : ivs) {
        if (!merged.empty() && iv.first <= std::nextafter(merged.back().second, kInf))
          merged.back().second = std::max(merged.back().second, iv.second);
        else
          merged.push_back(iv);
      }
      pc_.labels.push_back(0);
      for (const auto& [lo, hi] : merged) {
        pc_.breaks.push_back(lo);
        pc_.labels.push_back(1);
        pc_.breaks.push_back(std::nextafter(hi, kInf));
        pc_.labels.push_back(0);
      }
      has_pc_ = true;
    }
  }

  int predict(std::span<const double> x) const override { return h_.contains(x) ? 1 : 0; }
  const PiecewiseConstant1D* regions() const override { return has_pc_ ? &pc_ : nullptr; }
  size_t index() const { return index_; }

 private:
  BoxUnion h_;
  size_t index_;
  int dim_;
  bool has_pc_ = false;
  PiecewiseConstant1D pc_;
};

}  // namespace

double CellWidthRule::width(long long n, int dim) const {
  double h_n = 0.0;
  switch (kind) {
    case Kind::default_rule:
      h_n = std::pow(static_cast<double>(n), -1.0 / (2.0 * static_cast<double>(dim)));
      break;
    case Kind::constant:
      h_n = h;
      break;
    case Kind::power:
      h_n = coeff * std::pow(static_cast<double>(n), -exponent);
      break;
  }
  if (!(h_n > 0.0) || !std::isfinite(h_n)) fail(Errc::invalid_argument, "cell width must be positive");
  return h_n;
}

bool BoxUnion::contains(std::span<const double> x) const {
  for (const auto& b : boxes)
    if (b.contains(x)) return true;
  return false;
}

std::string ClassifierSpec::name() const {
  if (std::holds_alternative<NearestNeighbourSpec>(v)) return "nearest_neighbour";
  if (std::holds_alternative<PartitionSpec>(v)) return "partition";
  if (std::holds_alternative<ErmIntervalSpec>(v)) return "erm_interval";
  if (std::holds_alternative<ErmKIntervalsSpec>(v)) return "erm_k_intervals";
  return "erm_finite";
}

int PiecewiseConstant1D::at(double x) const {
  size_t i = static_cast<size_t>(std::upper_bound(breaks.begin(), breaks.end(), x) - breaks.begin());
  return labels[i];
}

Region PiecewiseConstant1D::where(int label) const {
  Region out;
  size_t m = labels.size();
  for (size_t i = 0; i < m; ++i) {
    if (labels[i] != label) continue;
    double lo = (i == 0) ? -kInf : breaks[i - 1];
    bool lo_closed = i != 0;
    size_t j = i;
    while (j + 1 < m && labels[j + 1] == label) ++j;
    double hi = (j == m - 1) ? kInf : breaks[j];
    out.push_back({lo, hi, lo_closed, false});
    i = j;
  }
  return out;
}

double first_where_near(double approx, const std::function<bool(double)>& pred) {
  std::uint64_t lo, hi;
  const std::uint64_t key_max = dkey(std::numeric_limits<double>::max());
  const std::uint64_t key_min = dkey(std::numeric_limits<double>::lowest());
  if (pred(approx)) {
    hi = dkey(approx);
    std::uint64_t step = 1;
    for (;;) {
      lo = (hi > key_min + step) ? hi - step : key_min;
      if (!pred(dunkey(lo))) break;
      if (lo == key_min) fail(Errc::precondition_violated, "predicate has no sign change below");
      step *= 2;
    }
  } else {
    lo = dkey(approx);
    std::uint64_t step = 1;
    for (;;) {
      hi = (lo + step < key_max && lo + step > lo) ? lo + step : key_max;
      if (pred(dunkey(hi))) break;
      if (hi == key_max) fail(Errc::precondition_violated, "predicate has no sign change above");
      step *= 2;
    }
  }
  while (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (pred(dunkey(mid))) hi = mid;
    else lo = mid;
  }
  return dunkey(hi);
}

IntervalFit erm_interval(const LabeledSample& s) {
  if (s.dim != 1) fail(Errc::unsupported_dimension, "interval rules need one-dimensional objects");
  if (s.size() == 0) fail(Errc::empty_sample, "cannot fit on an empty sample");
  auto [groups, total1] = make_groups(s);

  long long best_sum = 0;
  double best_len = 0.0, best_lo = kInf;
  size_t best_i = 0, best_j = 0;
  bool best_empty = true;

  long long cur = 0;
  size_t cur_start = 0;
  for (size_t g = 0; g < groups.size(); ++g) {
    long long ext = cur + groups[g].w;
    if (g > 0 && ext > groups[g].w) {
      cur = ext;
    } else {
      cur = groups[g].w;
      cur_start = g;
    }
    double len = groups[g].x - groups[cur_start].x;
    double lo = groups[cur_start].x;
    if (cur > best_sum || (cur == best_sum && (len < best_len || (len == best_len && lo < best_lo)))) {
      best_sum = cur;
      best_len = len;
      best_lo = lo;
      best_i = cur_start;
      best_j = g;
      best_empty = false;
    }
  }

  IntervalFit out;
  out.errors = total1 - std::max<long long>(best_sum, 0);
  if (!best_empty && best_sum > 0) {
    out.empty = false;
    out.lo = groups[best_i].x;
    out.hi = groups[best_j].x;
  } else {
    out.empty = true;
    out.errors = total1;
  }
  return out;
}

KIntervalsFit erm_k_intervals(const LabeledSample& s, int k) {
  if (s.dim != 1) fail(Errc::unsupported_dimension, "interval rules need one-dimensional objects");
  if (s.size() == 0) fail(Errc::empty_sample, "cannot fit on an empty sample");
  if (k < 1) fail(Errc::invalid_argument, "k must be >= 1");
  auto [groups, total1] = make_groups(s);
  const size_t m = groups.size();
  const size_t kk = static_cast<size_t>(k);

  struct Val {
    long long sum = 0;
    double len = 0.0;
    bool valid = false;
  };
  auto better = [](const Val& a, const Val& b) {
    if (!b.valid) return a.valid;
    if (!a.valid) return false;
    if (a.sum != b.sum) return a.sum > b.sum;
    return a.len < b.len;
  };

  std::vector<Val> out_prev(kk + 1), in_prev(kk + 1), out_cur(kk + 1), in_cur(kk + 1);
  out_prev[0] = {0, 0.0, true};
  // choices: out: 1 = closed an interval at the previous group;
  //          in:  1 = opened here
  std::vector<std::uint8_t> ch_out(m * (kk + 1)), ch_in(m * (kk + 1));

  for (size_t g = 0; g < m; ++g) {
    double gap = g > 0 ? groups[g].x - groups[g - 1].x : 0.0;
    for (size_t t = 0; t <= kk; ++t) {
      Val stay = out_prev[t];
      Val close = in_prev[t];
      if (better(close, stay)) {
        out_cur[t] = close;
        ch_out[g * (kk + 1) + t] = 1;
      } else {
        out_cur[t] = stay;
        ch_out[g * (kk + 1) + t] = 0;
      }

      Val open, extend;
      if (t >= 1 && out_prev[t - 1].valid)
        open = {out_prev[t - 1].sum + groups[g].w, out_prev[t - 1].len, true};
      if (in_prev[t].valid) extend = {in_prev[t].sum + groups[g].w, in_prev[t].len + gap, true};
      if (better(open, extend)) {
        in_cur[t] = open;
        ch_in[g * (kk + 1) + t] = 1;
      } else {
        in_cur[t] = extend;
        ch_in[g * (kk + 1) + t] = 0;
      }
    }
    std::swap(out_prev, out_cur);
    std::swap(in_prev, in_cur);
  }

  // final pick: max sum, then fewest intervals, then smallest length;
  // prefer the closed state on full ties
  Val best;
  size_t best_t = 0;
  bool best_in = false;
  for (size_t t = 0; t <= kk; ++t) {
    for (int is_in = 0; is_in < 2; ++is_in) {
      const Val& v = is_in ? in_prev[t] : out_prev[t];
      if (!v.valid) continue;
      bool take = !best.valid || v.sum > best.sum ||
                  (v.sum == best.sum && (t < best_t || (t == best_t && v.len < best.len)));
      if (take) {
        best = v;
        best_t = t;
        best_in = is_in == 1;
      }
    }
  }

  KIntervalsFit out;
  out.errors = total1 - std::max<long long>(best.valid ? best.sum : 0, 0);
  if (!best.valid || best.sum <= 0) {
    out.errors = total1;
    return out;
  }

  // walk back through the recorded choices
  std::vector<std::pair<size_t, size_t>> spans;
  size_t t = best_t;
  bool inside = best_in;
  size_t end = m;  // group index where the current interval ends
  for (size_t g = m; g-- > 0;) {
    if (inside) {
      if (end == m) end = g;
      if (ch_in[g * (kk + 1) + t] == 1) {
        spans.emplace_back(g, end);
        end = m;
        inside = false;
        --t;
      }
    } else {
      if (ch_out[g * (kk + 1) + t] == 1) {
        inside = true;
        end = m;  // interval ends at g - 1, set on the next iteration
      }
    }
  }
  std::reverse(spans.begin(), spans.end());
  for (auto [a, b] : spans) out.intervals.emplace_back(groups[a].x, groups[b].x);
  return out;
}

FittedPtr fit(const ClassifierSpec& spec, const LabeledSample& sample) {
  if (sample.size() == 0) fail(Errc::empty_sample, "cannot fit on an empty sample");
  if (std::holds_alternative<NearestNeighbourSpec>(spec.v)) return std::make_unique<NNFitted>(sample);
  if (const auto* p = std::get_if<PartitionSpec>(&spec.v))
    return std::make_unique<PartitionFitted>(sample, p->cell_width);
  if (std::holds_alternative<ErmIntervalSpec>(spec.v)) {
    IntervalFit f = erm_interval(sample);
    std::vector<std::pair<double, double>> ivs;
    if (!f.empty) ivs.emplace_back(f.lo, f.hi);
    return std::make_unique<IntervalsFitted>(std::move(ivs));
  }
  if (const auto* p = std::get_if<ErmKIntervalsSpec>(&spec.v)) {
    KIntervalsFit f = erm_k_intervals(sample, p->k);
    return std::make_unique<IntervalsFitted>(std::move(f.intervals));
  }
  const auto& fin = std::get<ErmFiniteSpec>(spec.v);
  if (fin.hypotheses.empty()) fail(Errc::invalid_argument, "hypothesis list must be nonempty");
  for (const auto& h : fin.hypotheses)
    for (const auto& b : h.boxes) {
      if (static_cast<int>(b.lo.size()) != sample.dim || static_cast<int>(b.hi.size()) != sample.dim)
        fail(Errc::invalid_argument, "hypothesis dimension mismatch");
      for (size_t a = 0; a < b.lo.size(); ++a)
        if (!(b.lo[a] <= b.hi[a])) fail(Errc::invalid_argument, "box sides must be ordered");
    }
  long long best_err = std::numeric_limits<long long>::max();
  size_t best_i = 0;
  for (size_t i = 0; i < fin.hypotheses.size(); ++i) {
    long long err = 0;
    for (size_t j = 0; j < sample.size(); ++j)
      err += (fin.hypotheses[i].contains(sample.x(j)) ? 1 : 0) != sample.y(j);
    if (err < best_err) {
      best_err = err;
      best_i = i;
    }
  }
  return std::make_unique<FiniteFitted>(fin.hypotheses[best_i], best_i, sample.dim);
}

long long empirical_errors(const Fitted& f, const LabeledSample& sample) {
  long long err = 0;
  for (size_t i = 0; i < sample.size(); ++i) err += f.predict(sample.x(i)) != sample.y(i);
  return err;
}

}  // namespace condlab
