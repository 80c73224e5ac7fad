#include "core/config.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <sstream>

namespace condlab {

namespace {

using nlohmann::json;
using Diags = std::vector<std::string>;

void note(Diags& d, const std::string& path, const std::string& msg) {
  d.push_back(path.empty() ? msg : path + ": " + msg);
}

const json* get(const json& o, const char* key) {
  auto it = o.find(key);
  return it == o.end() ? nullptr : &*it;
}

std::string sub(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void check_keys(const json& o, std::initializer_list<const char*> allowed, const std::string& path,
                Diags& d) {
  for (auto it = o.begin(); it != o.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known) note(d, path, "unknown field '" + it.key() + "'");
  }
}

bool want_object(const json& j, const std::string& path, Diags& d) {
  if (j.is_object()) return true;
  note(d, path, "must be an object");
  return false;
}

std::optional<double> as_num(const json& j, const std::string& path, Diags& d) {
  if (j.is_number()) return j.get<double>();
  note(d, path, "must be a number");
  return std::nullopt;
}

std::optional<long long> as_int(const json& j, const std::string& path, Diags& d) {
  if (j.is_number_integer()) return j.get<long long>();
  note(d, path, "must be an integer");
  return std::nullopt;
}

std::optional<bool> as_bool(const json& j, const std::string& path, Diags& d) {
  if (j.is_boolean()) return j.get<bool>();
  note(d, path, "must be true or false");
  return std::nullopt;
}

std::optional<std::string> as_str(const json& j, const std::string& path, Diags& d) {
  if (j.is_string()) return j.get<std::string>();
  note(d, path, "must be a string");
  return std::nullopt;
}

std::optional<std::vector<double>> as_num_array(const json& j, const std::string& path, Diags& d) {
  if (!j.is_array()) {
    note(d, path, "must be an array of numbers");
    return std::nullopt;
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      note(d, path + "[" + std::to_string(i) + "]", "must be a number");
      return std::nullopt;
    }
    out.push_back(j[i].get<double>());
  }
  return out;
}

std::optional<std::vector<long long>> as_int_array(const json& j, const std::string& path,
                                                   Diags& d) {
  if (!j.is_array()) {
    note(d, path, "must be an array of integers");
    return std::nullopt;
  }
  std::vector<long long> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer()) {
      note(d, path + "[" + std::to_string(i) + "]", "must be an integer");
      return std::nullopt;
    }
    out.push_back(j[i].get<long long>());
  }
  return out;
}

// 0/1 labels, written either as an array or as a string of '0'/'1' characters
std::optional<Labels> as_labels(const json& j, const std::string& path, Diags& d) {
  Labels out;
  if (j.is_string()) {
    for (char c : j.get<std::string>()) {
      if (c != '0' && c != '1') {
        note(d, path, "label strings may only contain '0' and '1'");
        return std::nullopt;
      }
      out.push_back(c == '1' ? 1 : 0);
    }
    return out;
  }
  if (j.is_array()) {
    for (size_t i = 0; i < j.size(); ++i) {
      if (!j[i].is_number_integer() || j[i].get<long long>() < 0 || j[i].get<long long>() > 1) {
        note(d, path + "[" + std::to_string(i) + "]", "labels must be 0 or 1");
        return std::nullopt;
      }
      out.push_back(static_cast<std::uint8_t>(j[i].get<long long>()));
    }
    return out;
  }
  note(d, path, "must be a label array or a '0'/'1' string");
  return std::nullopt;
}

std::string labels_string(const Labels& ls) {
  std::string s;
  s.reserve(ls.size());
  for (auto b : ls) s.push_back(b ? '1' : '0');
  return s;
}

std::optional<ScheduleRule> parse_schedule(const json& j, const std::string& path, Diags& d) {
  if (!want_object(j, path, d)) return std::nullopt;
  check_keys(j, {"type", "value", "base", "values"}, path, d);
  const json* jt = get(j, "type");
  if (!jt) {
    note(d, path, "type is required (constant | power | list)");
    return std::nullopt;
  }
  auto t = as_str(*jt, sub(path, "type"), d);
  if (!t) return std::nullopt;
  ScheduleRule r;
  if (*t == "constant") {
    r.kind = ScheduleRule::Kind::constant;
    const json* jv = get(j, "value");
    if (!jv) {
      note(d, path, "constant schedules need a value");
      return std::nullopt;
    }
    auto v = as_int(*jv, sub(path, "value"), d);
    if (!v) return std::nullopt;
    r.value = *v;
  } else if (*t == "power") {
    r.kind = ScheduleRule::Kind::power;
    const json* jv = get(j, "base");
    if (jv) {
      auto v = as_int(*jv, sub(path, "base"), d);
      if (!v) return std::nullopt;
      r.value = *v;
    }
  } else if (*t == "list") {
    r.kind = ScheduleRule::Kind::list;
    const json* jv = get(j, "values");
    if (!jv) {
      note(d, path, "list schedules need values");
      return std::nullopt;
    }
    auto v = as_int_array(*jv, sub(path, "values"), d);
    if (!v) return std::nullopt;
    r.values = std::move(*v);
  } else {
    note(d, sub(path, "type"), "unknown schedule type '" + *t + "'");
    return std::nullopt;
  }
  try {
    r.validate();
  } catch (const Error& e) {
    note(d, path, e.what());
    return std::nullopt;
  }
  return r;
}

json schedule_json(const ScheduleRule& r) {
  json j;
  switch (r.kind) {
    case ScheduleRule::Kind::constant:
      j["type"] = "constant";
      j["value"] = r.value;
      break;
    case ScheduleRule::Kind::power:
      j["type"] = "power";
      j["base"] = r.value;
      break;
    case ScheduleRule::Kind::list:
      j["type"] = "list";
      j["values"] = r.values;
      break;
  }
  return j;
}

std::optional<LabelProcess> parse_process(const json& j, const std::string& path, Diags& d) {
  if (!want_object(j, path, d)) return std::nullopt;
  const json* jt = get(j, "type");
  if (!jt) {
    note(d, path,
         "type is required (iid_bernoulli | two_state_markov | periodic | block_schedule | "
         "explicit)");
    return std::nullopt;
  }
  auto t = as_str(*jt, sub(path, "type"), d);
  if (!t) return std::nullopt;
  size_t before = d.size();
  try {
    if (*t == "iid_bernoulli") {
      check_keys(j, {"type", "p"}, path, d);
      IidBernoulli p;
      if (const json* jp = get(j, "p")) {
        auto v = as_num(*jp, sub(path, "p"), d);
        if (v) p.p = *v;
      }
      if (d.size() > before) return std::nullopt;
      return LabelProcess(p);
    }
    if (*t == "two_state_markov") {
      check_keys(j, {"type", "t01", "t10", "init1"}, path, d);
      TwoStateMarkov p;
      if (const json* v = get(j, "t01")) {
        auto x = as_num(*v, sub(path, "t01"), d);
        if (x) p.t01 = *x;
      }
      if (const json* v = get(j, "t10")) {
        auto x = as_num(*v, sub(path, "t10"), d);
        if (x) p.t10 = *x;
      }
      if (const json* v = get(j, "init1")) {
        auto x = as_num(*v, sub(path, "init1"), d);
        if (x) p.init1 = *x;
      }
      if (d.size() > before) return std::nullopt;
      return LabelProcess(p);
    }
    if (*t == "periodic") {
      check_keys(j, {"type", "pattern"}, path, d);
      const json* jp = get(j, "pattern");
      if (!jp) {
        note(d, path, "periodic processes need a pattern");
        return std::nullopt;
      }
      auto ls = as_labels(*jp, sub(path, "pattern"), d);
      if (!ls) return std::nullopt;
      return LabelProcess(Periodic{std::move(*ls)});
    }
    if (*t == "block_schedule") {
      check_keys(j, {"type", "schedule"}, path, d);
      const json* js = get(j, "schedule");
      if (!js) {
        note(d, path, "block_schedule processes need a schedule");
        return std::nullopt;
      }
      auto r = parse_schedule(*js, sub(path, "schedule"), d);
      if (!r) return std::nullopt;
      return LabelProcess(BlockSchedule{std::move(*r)});
    }
    if (*t == "explicit") {
      check_keys(j, {"type", "labels"}, path, d);
      const json* jl = get(j, "labels");
      if (!jl) {
        note(d, path, "explicit processes need labels");
        return std::nullopt;
      }
      auto ls = as_labels(*jl, sub(path, "labels"), d);
      if (!ls) return std::nullopt;
      return LabelProcess(ExplicitSeq{std::move(*ls)});
    }
  } catch (const Error& e) {
    note(d, path, e.what());
    return std::nullopt;
  }
  note(d, sub(path, "type"), "unknown process type '" + *t + "'");
  return std::nullopt;
}

json process_json(const LabelProcess& p) {
  json j;
  if (const auto* b = p.get_if<IidBernoulli>()) {
    j["type"] = "iid_bernoulli";
    j["p"] = b->p;
  } else if (const auto* m = p.get_if<TwoStateMarkov>()) {
    j["type"] = "two_state_markov";
    j["t01"] = m->t01;
    j["t10"] = m->t10;
    j["init1"] = m->init1;
  } else if (const auto* q = p.get_if<Periodic>()) {
    j["type"] = "periodic";
    j["pattern"] = labels_string(q->pattern);
  } else if (const auto* s = p.get_if<BlockSchedule>()) {
    j["type"] = "block_schedule";
    j["schedule"] = schedule_json(s->rule);
  } else if (const auto* e = p.get_if<ExplicitSeq>()) {
    j["type"] = "explicit";
    j["labels"] = labels_string(e->labels);
  }
  return j;
}

// a box is [lo, hi] on the line or {"lo": [...], "hi": [...]} in general
std::optional<Box> parse_box(const json& j, const std::string& path, Diags& d) {
  Box b;
  if (j.is_array()) {
    auto v = as_num_array(j, path, d);
    if (!v) return std::nullopt;
    if (v->size() != 2) {
      note(d, path, "a one-dimensional box is [lo, hi]");
      return std::nullopt;
    }
    b.lo = {(*v)[0]};
    b.hi = {(*v)[1]};
  } else if (j.is_object()) {
    check_keys(j, {"lo", "hi"}, path, d);
    const json* jl = get(j, "lo");
    const json* jh = get(j, "hi");
    if (!jl || !jh) {
      note(d, path, "boxes need lo and hi");
      return std::nullopt;
    }
    auto lo = as_num_array(*jl, sub(path, "lo"), d);
    auto hi = as_num_array(*jh, sub(path, "hi"), d);
    if (!lo || !hi) return std::nullopt;
    if (lo->size() != hi->size() || lo->empty()) {
      note(d, path, "lo and hi must be nonempty and the same length");
      return std::nullopt;
    }
    b.lo = std::move(*lo);
    b.hi = std::move(*hi);
  } else {
    note(d, path, "must be [lo, hi] or {lo, hi}");
    return std::nullopt;
  }
  for (size_t i = 0; i < b.lo.size(); ++i)
    if (!(b.lo[i] <= b.hi[i])) {
      note(d, path, "box sides must be ordered lo <= hi");
      return std::nullopt;
    }
  return b;
}

json box_json(const Box& b) {
  if (b.lo.size() == 1) return json::array({b.lo[0], b.hi[0]});
  return json{{"lo", b.lo}, {"hi", b.hi}};
}

std::optional<std::vector<Box>> parse_boxes(const json& j, const std::string& path, Diags& d) {
  if (!j.is_array()) {
    note(d, path, "must be an array of boxes");
    return std::nullopt;
  }
  std::vector<Box> out;
  for (size_t i = 0; i < j.size(); ++i) {
    auto b = parse_box(j[i], path + "[" + std::to_string(i) + "]", d);
    if (!b) return std::nullopt;
    out.push_back(std::move(*b));
  }
  return out;
}

std::optional<ClassPair> parse_pair(const json& j, const std::string& path, Diags& d) {
  if (!want_object(j, path, d)) return std::nullopt;
  const json* jt = get(j, "type");
  if (!jt) {
    note(d, path, "type is required (disjoint_boxes | discrete | atoms_vs_continuum)");
    return std::nullopt;
  }
  auto t = as_str(*jt, sub(path, "type"), d);
  if (!t) return std::nullopt;
  size_t before = d.size();
  try {
    if (*t == "disjoint_boxes") {
      check_keys(j, {"type", "dim", "class0", "class1"}, path, d);
      DisjointBoxes p;
      if (const json* v = get(j, "dim")) {
        auto x = as_int(*v, sub(path, "dim"), d);
        if (x) p.dim = static_cast<int>(*x);
      }
      const json* j0 = get(j, "class0");
      const json* j1 = get(j, "class1");
      if (!j0 || !j1) {
        note(d, path, "disjoint_boxes needs class0 and class1 box lists");
        return std::nullopt;
      }
      auto b0 = parse_boxes(*j0, sub(path, "class0"), d);
      auto b1 = parse_boxes(*j1, sub(path, "class1"), d);
      if (!b0 || !b1 || d.size() > before) return std::nullopt;
      p.class0 = std::move(*b0);
      p.class1 = std::move(*b1);
      return ClassPair(std::move(p));
    }
    if (*t == "discrete") {
      check_keys(j, {"type", "points0", "probs0", "points1", "probs1"}, path, d);
      DiscreteAlphabet p;
      const json* p0 = get(j, "points0");
      const json* p1 = get(j, "points1");
      if (!p0 || !p1) {
        note(d, path, "discrete pairs need points0 and points1");
        return std::nullopt;
      }
      auto x0 = as_num_array(*p0, sub(path, "points0"), d);
      auto x1 = as_num_array(*p1, sub(path, "points1"), d);
      if (!x0 || !x1) return std::nullopt;
      p.points0 = std::move(*x0);
      p.points1 = std::move(*x1);
      for (int c = 0; c < 2; ++c) {
        const char* key = c ? "probs1" : "probs0";
        auto& probs = c ? p.probs1 : p.probs0;
        size_t npts = (c ? p.points1 : p.points0).size();
        if (const json* v = get(j, key)) {
          auto q = as_num_array(*v, sub(path, key), d);
          if (!q) return std::nullopt;
          probs = std::move(*q);
        } else if (npts > 0) {
          probs.assign(npts, 1.0 / static_cast<double>(npts));
        }
      }
      if (d.size() > before) return std::nullopt;
      return ClassPair(std::move(p));
    }
    if (*t == "atoms_vs_continuum") {
      check_keys(j, {"type", "atoms"}, path, d);
      AtomsVsContinuum p;
      if (const json* v = get(j, "atoms")) {
        auto x = as_int(*v, sub(path, "atoms"), d);
        if (x) p.atoms = *x;
      }
      if (d.size() > before) return std::nullopt;
      return ClassPair(p);
    }
  } catch (const Error& e) {
    note(d, path, e.what());
    return std::nullopt;
  }
  note(d, sub(path, "type"), "unknown pair type '" + *t + "'");
  return std::nullopt;
}

json pair_json(const ClassPair& p) {
  json j;
  if (const auto* b = p.get_if<DisjointBoxes>()) {
    j["type"] = "disjoint_boxes";
    j["dim"] = b->dim;
    json c0 = json::array(), c1 = json::array();
    for (const auto& box : b->class0) c0.push_back(box_json(box));
    for (const auto& box : b->class1) c1.push_back(box_json(box));
    j["class0"] = std::move(c0);
    j["class1"] = std::move(c1);
  } else if (const auto* a = p.get_if<DiscreteAlphabet>()) {
    j["type"] = "discrete";
    j["points0"] = a->points0;
    j["probs0"] = a->probs0;
    j["points1"] = a->points1;
    j["probs1"] = a->probs1;
  } else if (const auto* c = p.get_if<AtomsVsContinuum>()) {
    j["type"] = "atoms_vs_continuum";
    j["atoms"] = c->atoms;
  }
  return j;
}

std::optional<CellWidthRule> parse_cell_width(const json& j, const std::string& path, Diags& d) {
  if (!want_object(j, path, d)) return std::nullopt;
  const json* jt = get(j, "type");
  if (!jt) {
    note(d, path, "type is required (default | constant | power)");
    return std::nullopt;
  }
  auto t = as_str(*jt, sub(path, "type"), d);
  if (!t) return std::nullopt;
  CellWidthRule r;
  if (*t == "default") {
    check_keys(j, {"type"}, path, d);
    r.kind = CellWidthRule::Kind::default_rule;
  } else if (*t == "constant") {
    check_keys(j, {"type", "h"}, path, d);
    r.kind = CellWidthRule::Kind::constant;
    if (const json* v = get(j, "h")) {
      auto x = as_num(*v, sub(path, "h"), d);
      if (x) r.h = *x;
    }
    if (!(r.h > 0.0)) {
      note(d, path, "cell width must be positive");
      return std::nullopt;
    }
  } else if (*t == "power") {
    check_keys(j, {"type", "coeff", "exponent"}, path, d);
    r.kind = CellWidthRule::Kind::power;
    if (const json* v = get(j, "coeff")) {
      auto x = as_num(*v, sub(path, "coeff"), d);
      if (x) r.coeff = *x;
    }
    if (const json* v = get(j, "exponent")) {
      auto x = as_num(*v, sub(path, "exponent"), d);
      if (x) r.exponent = *x;
    }
    if (!(r.coeff > 0.0) || !(r.exponent > 0.0)) {
      note(d, path, "coeff and exponent must be positive");
      return std::nullopt;
    }
  } else {
    note(d, sub(path, "type"), "unknown cell width type '" + *t + "'");
    return std::nullopt;
  }
  return r;
}

json cell_width_json(const CellWidthRule& r) {
  switch (r.kind) {
    case CellWidthRule::Kind::constant:
      return json{{"type", "constant"}, {"h", r.h}};
    case CellWidthRule::Kind::power:
      return json{{"type", "power"}, {"coeff", r.coeff}, {"exponent", r.exponent}};
    case CellWidthRule::Kind::default_rule:
      break;
  }
  return json{{"type", "default"}};
}

std::optional<ClassifierSpec> parse_classifier(const json& j, const std::string& path, Diags& d) {
  if (!want_object(j, path, d)) return std::nullopt;
  const json* jt = get(j, "type");
  if (!jt) {
    note(d, path,
         "type is required (nearest_neighbour | partition | erm_interval | erm_k_intervals | "
         "erm_finite)");
    return std::nullopt;
  }
  auto t = as_str(*jt, sub(path, "type"), d);
  if (!t) return std::nullopt;
  size_t before = d.size();
  if (*t == "nearest_neighbour") {
    check_keys(j, {"type"}, path, d);
    if (d.size() > before) return std::nullopt;
    return ClassifierSpec{NearestNeighbourSpec{}};
  }
  if (*t == "partition") {
    check_keys(j, {"type", "cell_width"}, path, d);
    PartitionSpec s;
    if (const json* v = get(j, "cell_width")) {
      auto r = parse_cell_width(*v, sub(path, "cell_width"), d);
      if (!r) return std::nullopt;
      s.cell_width = *r;
    }
    if (d.size() > before) return std::nullopt;
    return ClassifierSpec{s};
  }
  if (*t == "erm_interval") {
    check_keys(j, {"type"}, path, d);
    if (d.size() > before) return std::nullopt;
    return ClassifierSpec{ErmIntervalSpec{}};
  }
  if (*t == "erm_k_intervals") {
    check_keys(j, {"type", "k"}, path, d);
    ErmKIntervalsSpec s;
    if (const json* v = get(j, "k")) {
      auto x = as_int(*v, sub(path, "k"), d);
      if (x) s.k = static_cast<int>(*x);
    }
    if (s.k < 1) note(d, sub(path, "k"), "must be >= 1");
    if (d.size() > before) return std::nullopt;
    return ClassifierSpec{s};
  }
  if (*t == "erm_finite") {
    check_keys(j, {"type", "hypotheses"}, path, d);
    const json* jh = get(j, "hypotheses");
    if (!jh || !jh->is_array() || jh->empty()) {
      note(d, path, "erm_finite needs a nonempty hypotheses array");
      return std::nullopt;
    }
    ErmFiniteSpec s;
    for (size_t i = 0; i < jh->size(); ++i) {
      auto boxes = parse_boxes((*jh)[i], sub(path, "hypotheses") + "[" + std::to_string(i) + "]", d);
      if (!boxes) return std::nullopt;
      s.hypotheses.push_back(BoxUnion{std::move(*boxes)});
    }
    if (d.size() > before) return std::nullopt;
    return ClassifierSpec{std::move(s)};
  }
  note(d, sub(path, "type"), "unknown classifier type '" + *t + "'");
  return std::nullopt;
}

json classifier_json(const ClassifierSpec& s) {
  json j;
  j["type"] = s.name();
  if (const auto* p = s.get_if<PartitionSpec>()) {
    j["cell_width"] = cell_width_json(p->cell_width);
  } else if (const auto* k = s.get_if<ErmKIntervalsSpec>()) {
    j["k"] = k->k;
  } else if (const auto* f = s.get_if<ErmFiniteSpec>()) {
    json hs = json::array();
    for (const auto& h : f->hypotheses) {
      json boxes = json::array();
      for (const auto& b : h.boxes) boxes.push_back(box_json(b));
      hs.push_back(std::move(boxes));
    }
    j["hypotheses"] = std::move(hs);
  }
  return j;
}

std::optional<bounds::ShatterFn> parse_shatter(const json& j, const std::string& path, Diags& d) {
  if (!want_object(j, path, d)) return std::nullopt;
  const json* jt = get(j, "type");
  if (!jt) {
    note(d, path, "type is required (intervals | sauer | finite)");
    return std::nullopt;
  }
  auto t = as_str(*jt, sub(path, "type"), d);
  if (!t) return std::nullopt;
  bounds::ShatterFn s;
  if (*t == "intervals") {
    check_keys(j, {"type"}, path, d);
    s.kind = bounds::ShatterFn::Kind::intervals;
  } else if (*t == "sauer") {
    check_keys(j, {"type", "vc"}, path, d);
    s.kind = bounds::ShatterFn::Kind::sauer;
    if (const json* v = get(j, "vc")) {
      auto x = as_int(*v, sub(path, "vc"), d);
      if (x) s.vc = static_cast<int>(*x);
    }
    if (s.vc < 0) {
      note(d, sub(path, "vc"), "must be >= 0");
      return std::nullopt;
    }
  } else if (*t == "finite") {
    check_keys(j, {"type", "classes"}, path, d);
    s.kind = bounds::ShatterFn::Kind::finite;
    if (const json* v = get(j, "classes")) {
      auto x = as_int(*v, sub(path, "classes"), d);
      if (x) s.classes = *x;
    }
    if (s.classes < 1) {
      note(d, sub(path, "classes"), "must be >= 1");
      return std::nullopt;
    }
  } else {
    note(d, sub(path, "type"), "unknown shatter type '" + *t + "'");
    return std::nullopt;
  }
  return s;
}

json shatter_json(const bounds::ShatterFn& s) {
  switch (s.kind) {
    case bounds::ShatterFn::Kind::sauer:
      return json{{"type", "sauer"}, {"vc", s.vc}};
    case bounds::ShatterFn::Kind::finite:
      return json{{"type", "finite"}, {"classes", s.classes}};
    case bounds::ShatterFn::Kind::intervals:
      break;
  }
  return json{{"type", "intervals"}};
}

void parse_tolerance_section(const json& j, Config& c, Diags& d) {
  const std::string path = "tolerance";
  if (!want_object(j, path, d)) return;
  check_keys(j, {"mode", "search", "budget", "kappa", "fresh_per_class", "p"}, path, d);
  if (const json* v = get(j, "mode")) {
    auto s = as_str(*v, sub(path, "mode"), d);
    if (s) {
      if (*s == "deletion")
        c.tol.mode = tolerance::Mode::deletion;
      else if (*s == "replacement")
        c.tol.mode = tolerance::Mode::replacement;
      else
        note(d, sub(path, "mode"), "must be deletion or replacement");
    }
  }
  if (const json* v = get(j, "search")) {
    auto s = as_str(*v, sub(path, "search"), d);
    if (s) {
      if (*s == "exact")
        c.tol.search = tolerance::Search::exact;
      else if (*s == "stochastic")
        c.tol.search = tolerance::Search::stochastic;
      else
        note(d, sub(path, "search"), "must be exact or stochastic");
    }
  }
  if (const json* v = get(j, "budget")) {
    auto x = as_int(*v, sub(path, "budget"), d);
    if (x) {
      if (*x < 1)
        note(d, sub(path, "budget"), "must be >= 1");
      else
        c.tol.budget = *x;
    }
  }
  if (const json* v = get(j, "kappa")) {
    auto x = as_int(*v, sub(path, "kappa"), d);
    if (x) {
      if (*x < -1)
        note(d, sub(path, "kappa"), "must be >= 0, or -1 for the default depth");
      else
        c.tol.kappa = *x;
    }
  }
  if (const json* v = get(j, "fresh_per_class")) {
    auto x = as_int(*v, sub(path, "fresh_per_class"), d);
    if (x) {
      if (*x < 1)
        note(d, sub(path, "fresh_per_class"), "must be >= 1");
      else
        c.tol.fresh_per_class = *x;
    }
  }
  if (const json* v = get(j, "p")) {
    auto x = as_num(*v, sub(path, "p"), d);
    if (x) {
      if (!(*x >= 0.0 && *x <= 1.0))
        note(d, sub(path, "p"), "must lie in [0, 1]");
      else
        c.tol.p = *x;
    }
  }
}

void parse_bound_section(const json& j, Config& c, Diags& d) {
  const std::string path = "bound";
  if (!want_object(j, path, d)) return;
  check_keys(j, {"formula", "shatter", "indicator", "proof_form"}, path, d);
  const json* jf = get(j, "formula");
  if (!jf) {
    note(d, path, "formula is required");
  } else if (auto s = as_str(*jf, sub(path, "formula"), d)) {
    auto f = formula_from_name(*s);
    if (!f)
      note(d, sub(path, "formula"), "unknown formula '" + *s + "'");
    else
      c.bound.formula = *f;
  }
  if (const json* v = get(j, "shatter")) {
    auto s = parse_shatter(*v, sub(path, "shatter"), d);
    if (s) c.bound.shatter = *s;
  }
  if (const json* v = get(j, "indicator")) {
    auto x = as_int(*v, sub(path, "indicator"), d);
    if (x) {
      if (*x != 0 && *x != 1)
        note(d, sub(path, "indicator"), "must be 0 or 1");
      else
        c.bound.indicator = static_cast<int>(*x);
    }
  }
  if (const json* v = get(j, "proof_form")) {
    auto b = as_bool(*v, sub(path, "proof_form"), d);
    if (b) c.bound.proof_form = *b;
  }
}

void parse_counterexample_section(const json& j, Config& c, Diags& d) {
  const std::string path = "counterexample";
  if (!want_object(j, path, d)) return;
  check_keys(j, {"variant", "p", "atoms", "schedule", "horizon"}, path, d);
  if (const json* v = get(j, "variant")) {
    auto s = as_str(*v, sub(path, "variant"), d);
    if (s) {
      if (*s != "alternating" && *s != "schedule")
        note(d, sub(path, "variant"), "must be alternating or schedule");
      else
        c.counter.variant = *s;
    }
  }
  if (const json* v = get(j, "p")) {
    auto x = as_num(*v, sub(path, "p"), d);
    if (x) c.counter.p = *x;
  }
  if (const json* v = get(j, "atoms")) {
    auto x = as_int(*v, sub(path, "atoms"), d);
    if (x) {
      if (*x < 1)
        note(d, sub(path, "atoms"), "must be >= 1");
      else
        c.counter.atoms = *x;
    }
  }
  if (const json* v = get(j, "schedule")) {
    auto r = parse_schedule(*v, sub(path, "schedule"), d);
    if (r) c.counter.rule = *r;
  }
  if (const json* v = get(j, "horizon")) {
    auto x = as_int(*v, sub(path, "horizon"), d);
    if (x) {
      if (*x < 1)
        note(d, sub(path, "horizon"), "must be >= 1");
      else
        c.counter.horizon = *x;
    }
  }
}

void parse_checks_section(const json& j, Config& c, Diags& d) {
  const std::string path = "checks";
  if (!want_object(j, path, d)) return;
  check_keys(j, {"monotone_decreasing", "final_mean_below", "min_mean_err1_above", "after_n"},
             path, d);
  if (const json* v = get(j, "monotone_decreasing")) {
    auto b = as_bool(*v, sub(path, "monotone_decreasing"), d);
    if (b) c.checks.monotone_decreasing = *b;
  }
  if (const json* v = get(j, "final_mean_below")) {
    auto x = as_num(*v, sub(path, "final_mean_below"), d);
    if (x) c.checks.final_mean_below = *x;
  }
  if (const json* v = get(j, "min_mean_err1_above")) {
    auto x = as_num(*v, sub(path, "min_mean_err1_above"), d);
    if (x) c.checks.min_mean_err1_above = *x;
  }
  if (const json* v = get(j, "after_n")) {
    auto x = as_int(*v, sub(path, "after_n"), d);
    if (x) {
      if (*x < 0)
        note(d, sub(path, "after_n"), "must be >= 0");
      else
        c.checks.after_n = *x;
    }
  }
}

int pair_dim(const Config& c) { return c.pair ? c.pair->dim() : 0; }

bool uses_interval_rule(const ClassifierSpec& s) {
  return s.get_if<ErmIntervalSpec>() != nullptr || s.get_if<ErmKIntervalsSpec>() != nullptr;
}

bool is_vc_formula(Formula f) {
  return f == Formula::vc_agnostic || f == Formula::vc_agnostic_shifted ||
         f == Formula::vc_realizable || f == Formula::vc_uniform_dev;
}

bool is_plugin_formula(Formula f) {
  return f == Formula::plugin_deletion || f == Formula::plugin_replacement;
}

bool is_agnostic_tail(Formula f) {
  return f == Formula::tolerance_agnostic || f == Formula::error_agnostic;
}

bool formula_needs_delta(Formula f) {
  return is_plugin_formula(f) || f == Formula::error_agnostic || f == Formula::error_realizable;
}

bool formula_needs_process(Formula f) {
  return is_plugin_formula(f) || f == Formula::error_agnostic || f == Formula::error_realizable;
}

bool uses_tolerance_section(const Config& c, bool has_bound) {
  if (c.kind == Kind::tolerance) return true;
  if (c.kind != Kind::bound_check || !has_bound) return false;
  Formula f = c.bound.formula;
  return is_plugin_formula(f) || f == Formula::tolerance_agnostic ||
         f == Formula::tolerance_realizable;
}

void require(bool ok, Diags& d, const std::string& msg) {
  if (!ok) note(d, "", msg);
}

struct Parsed {
  Config cfg;
  bool has_tol = false, has_bound = false, has_counter = false, has_checks = false;
};

// everything that spans more than one field
void cross_checks(Parsed& p, Diags& d) {
  Config& c = p.cfg;
  const bool has_bound = p.has_bound;
  const std::string kn(kind_name(c.kind));

  if (p.has_tol && !uses_tolerance_section(c, has_bound))
    note(d, "tolerance", "this kind does not read the tolerance section");
  if (has_bound && c.kind != Kind::bound_check)
    note(d, "bound", "only the bound-check kind reads the bound section");
  if (p.has_counter && c.kind != Kind::counterexample)
    note(d, "counterexample", "only the counterexample kind reads this section");
  switch (c.kind) {
    case Kind::generate:
      require(c.process.has_value(), d, kn + " needs a process");
      require(c.pair.has_value(), d, kn + " needs a pair");
      require(!c.ns.empty(), d, kn + " needs ns (the first entry is the sample size)");
      break;
    case Kind::consistency:
      require(c.process.has_value(), d, kn + " needs a process");
      require(c.pair.has_value(), d, kn + " needs a pair");
      require(c.classifier.has_value(), d, kn + " needs a classifier");
      require(!c.ns.empty(), d, kn + " needs ns");
      break;
    case Kind::bound_check: {
      require(has_bound, d, kn + " needs a bound section naming the formula");
      require(!c.ns.empty(), d, kn + " needs ns");
      require(!c.eps.empty(), d, kn + " needs eps");
      if (!has_bound) break;
      Formula f = c.bound.formula;
      if (!is_vc_formula(f)) {
        require(c.pair.has_value(), d, kn + " with an empirical side needs a pair");
        require(c.classifier.has_value(), d, kn + " with an empirical side needs a classifier");
      }
      if (formula_needs_process(f))
        require(c.process.has_value(), d,
                std::string(formula_name(f)) + " needs a process for the occupancy term");
      if (formula_needs_delta(f) && !c.delta)
        note(d, "", std::string(formula_name(f)) + " needs delta");
      if ((f == Formula::tolerance_agnostic || f == Formula::tolerance_realizable) && c.grid > 1 &&
          !c.delta)
        note(d, "", "a tolerance sweep over a p grid needs delta");
      if (is_agnostic_tail(f)) {
        for (long long n : c.ns)
          for (double e : c.eps)
            if (!(static_cast<double>(n) > 4.0 / (e * e))) {
              note(d, "",
                   std::string(formula_name(f)) + " needs n > 4/eps^2 (n=" + std::to_string(n) +
                       ", eps=" + std::to_string(e) + ")");
            }
      }
      break;
    }
    case Kind::tolerance:
      require(c.pair.has_value(), d, kn + " needs a pair");
      require(c.classifier.has_value(), d, kn + " needs a classifier");
      require(!c.ns.empty(), d, kn + " needs ns");
      require(!c.eps.empty(), d, kn + " needs eps");
      if (c.grid > 1 && !c.delta) note(d, "", "a tolerance sweep over a p grid needs delta");
      if (c.tol.search == tolerance::Search::exact) {
        for (long long n : c.ns) {
          long long k = c.tol.kappa >= 0 ? std::min(c.tol.kappa, n) : bounds::kappa(n);
          if (n > 16 || k > 4)
            note(d, "",
                 "exact search needs n <= 16 and kappa <= 4 (n=" + std::to_string(n) +
                     " gives kappa=" + std::to_string(k) + ")");
        }
      }
      break;
    case Kind::counterexample:
      if (c.counter.variant == "alternating") {
        require(!c.ns.empty(), d, "the alternating variant needs ns");
        if (!(c.counter.p > 0.0 && c.counter.p < 1.0))
          note(d, "counterexample.p", "must lie strictly inside (0, 1)");
      }
      break;
    case Kind::kappa_check:
      require(c.process.has_value(), d, kn + " needs a process");
      if (c.process && c.process->get_if<IidBernoulli>() == nullptr)
        note(d, "process", kn + " needs an iid_bernoulli process");
      require(!c.ns.empty(), d, kn + " needs ns");
      break;
    case Kind::nabla_sweep:
      require(c.pair.has_value(), d, kn + " needs a pair");
      require(c.classifier.has_value(), d, kn + " needs a classifier");
      require(c.delta.has_value(), d, kn + " needs delta");
      require(!c.ns.empty(), d, kn + " needs ns");
      if (c.eps.size() != 1) note(d, "", kn + " uses a single eps entry");
      break;
  }

  if (c.classifier && c.pair) {
    int dim = pair_dim(c);
    if (uses_interval_rule(*c.classifier) && dim != 1)
      note(d, "classifier",
           c.classifier->name() + " requires dimension 1 (pair dimension is " +
               std::to_string(dim) + ")");
    if (const auto* f = c.classifier->get_if<ErmFiniteSpec>()) {
      for (const auto& h : f->hypotheses)
        for (const auto& b : h.boxes)
          if (static_cast<int>(b.lo.size()) != dim) {
            note(d, "classifier", "hypothesis boxes must match the pair dimension");
            break;
          }
    }
  }

  // exact next-step error evaluation works through one-dimensional regions
  bool evaluates_errors =
      c.kind == Kind::consistency || c.kind == Kind::tolerance || c.kind == Kind::nabla_sweep ||
      (c.kind == Kind::bound_check && has_bound && !is_vc_formula(c.bound.formula));
  if (evaluates_errors && c.pair && pair_dim(c) != 1 && !c.mc_draws)
    note(d, "", "exact error evaluation needs a one-dimensional pair; set mc_draws to sample");

  if (c.process && c.process->get_if<ExplicitSeq>() && !c.ns.empty()) {
    bool samples_labels = c.kind == Kind::generate || c.kind == Kind::consistency ||
                          c.kind == Kind::kappa_check ||
                          (c.kind == Kind::bound_check && has_bound &&
                           formula_needs_process(c.bound.formula));
    long long worst = *std::max_element(c.ns.begin(), c.ns.end());
    if (samples_labels && c.process->get_if<ExplicitSeq>()->labels.size() <
                              static_cast<size_t>(worst))
      note(d, "process", "explicit label sequence is shorter than the largest n");
  }

  if (c.checks.monotone_decreasing && c.kind != Kind::consistency)
    note(d, "checks.monotone_decreasing", "only applies to the consistency kind");
  if (c.checks.final_mean_below && c.kind != Kind::consistency)
    note(d, "checks.final_mean_below", "only applies to the consistency kind");
  if (c.checks.min_mean_err1_above &&
      !(c.kind == Kind::counterexample && c.counter.variant == "schedule"))
    note(d, "checks.min_mean_err1_above", "only applies to schedule counterexamples");
  if (c.checks.after_n > 0 &&
      !(c.kind == Kind::counterexample && c.counter.variant == "schedule"))
    note(d, "checks.after_n", "only applies to schedule counterexamples");
}

Parsed do_parse(const json& doc, const Overrides& ov, Diags& d) {
  Parsed out;
  Config& c = out.cfg;
  if (!doc.is_object()) {
    note(d, "", "the config must be a JSON object");
    return out;
  }
  check_keys(doc,
             {"kind", "seed", "out", "threads", "format", "runs", "mc_draws", "ns", "n_range",
              "eps", "delta", "grid", "process", "pair", "classifier", "tolerance", "bound",
              "counterexample", "checks"},
             "", d);

  std::optional<Kind> doc_kind;
  if (const json* v = get(doc, "kind")) {
    if (auto s = as_str(*v, "kind", d)) {
      doc_kind = kind_from_name(*s);
      if (!doc_kind) note(d, "kind", "unknown kind '" + *s + "'");
    }
  }
  if (ov.kind) {
    if (doc_kind && *doc_kind != *ov.kind)
      note(d, "kind",
           std::string("the config says '") + std::string(kind_name(*doc_kind)) +
               "' but the command asked for '" + std::string(kind_name(*ov.kind)) + "'");
    c.kind = *ov.kind;
  } else if (doc_kind) {
    c.kind = *doc_kind;
  } else if (!get(doc, "kind")) {
    note(d, "kind", "is required");
  }

  bool have_seed = false;
  if (const json* v = get(doc, "seed")) {
    if (v->is_number_unsigned()) {
      c.seed = v->get<std::uint64_t>();
      have_seed = true;
    } else if (v->is_number_integer() && v->get<long long>() >= 0) {
      c.seed = static_cast<std::uint64_t>(v->get<long long>());
      have_seed = true;
    } else {
      note(d, "seed", "must be an unsigned integer");
    }
  }
  if (ov.seed) {
    c.seed = *ov.seed;
    have_seed = true;
  }
  if (!have_seed) note(d, "seed", "a master seed is required; runs are never wall-clock seeded");

  if (const json* v = get(doc, "out")) {
    if (auto s = as_str(*v, "out", d)) c.out = *s;
  }
  if (ov.out) c.out = *ov.out;

  if (const json* v = get(doc, "threads")) {
    if (auto x = as_int(*v, "threads", d)) {
      if (*x < 1)
        note(d, "threads", "must be >= 1");
      else
        c.threads = static_cast<int>(*x);
    }
  }
  if (ov.threads) {
    if (*ov.threads < 1)
      note(d, "threads", "must be >= 1");
    else
      c.threads = *ov.threads;
  }

  if (const json* v = get(doc, "format")) {
    if (auto s = as_str(*v, "format", d)) {
      auto f = format_from_name(*s);
      if (!f)
        note(d, "format", "must be csv or json");
      else
        c.format = *f;
    }
  }
  if (ov.format) c.format = *ov.format;

  if (const json* v = get(doc, "runs")) {
    if (auto x = as_int(*v, "runs", d)) {
      if (*x < 1)
        note(d, "runs", "must be >= 1");
      else
        c.runs = *x;
    }
  }
  if (const json* v = get(doc, "mc_draws")) {
    if (auto x = as_int(*v, "mc_draws", d)) {
      if (*x < 1)
        note(d, "mc_draws", "must be >= 1");
      else
        c.mc_draws = *x;
    }
  }
  if (const json* v = get(doc, "grid")) {
    if (auto x = as_int(*v, "grid", d)) {
      if (*x < 1)
        note(d, "grid", "must be >= 1");
      else
        c.grid = static_cast<int>(*x);
    }
  }

  const json* jns = get(doc, "ns");
  const json* jrange = get(doc, "n_range");
  if (jns && jrange) note(d, "", "give ns or n_range, not both");
  if (jns) {
    if (auto xs = as_int_array(*jns, "ns", d)) {
      bool ok = true;
      for (long long n : *xs)
        if (n < 1) {
          note(d, "ns", "entries must be >= 1");
          ok = false;
          break;
        }
      if (ok) {
        if (xs->empty())
          note(d, "ns", "must be nonempty");
        else
          c.ns = std::move(*xs);
      }
    }
  } else if (jrange) {
    if (want_object(*jrange, "n_range", d)) {
      check_keys(*jrange, {"from", "to", "step"}, "n_range", d);
      long long from = 0, to = -1, step = 1;
      bool ok = true;
      if (const json* v = get(*jrange, "from")) {
        auto x = as_int(*v, "n_range.from", d);
        ok = ok && x.has_value();
        if (x) from = *x;
      } else {
        note(d, "n_range", "needs from");
        ok = false;
      }
      if (const json* v = get(*jrange, "to")) {
        auto x = as_int(*v, "n_range.to", d);
        ok = ok && x.has_value();
        if (x) to = *x;
      } else {
        note(d, "n_range", "needs to");
        ok = false;
      }
      if (const json* v = get(*jrange, "step")) {
        auto x = as_int(*v, "n_range.step", d);
        ok = ok && x.has_value();
        if (x) step = *x;
      }
      if (ok) {
        if (from < 1 || to < from || step < 1) {
          note(d, "n_range", "needs 1 <= from <= to and step >= 1");
        } else {
          for (long long n = from; n <= to; n += step) c.ns.push_back(n);
        }
      }
    }
  }

  if (const json* v = get(doc, "eps")) {
    if (auto xs = as_num_array(*v, "eps", d)) {
      for (double e : *xs)
        if (!(e > 0.0 && e <= 1.0)) {
          note(d, "eps", "entries must lie in (0, 1]");
          xs->clear();
          break;
        }
      if (!xs->empty()) c.eps = std::move(*xs);
    }
  }

  if (const json* v = get(doc, "delta")) {
    if (auto x = as_num(*v, "delta", d)) {
      if (!(*x > 0.0 && *x <= 0.5))
        note(d, "", "delta must lie in (0, 1/2]");
      else
        c.delta = *x;
    }
  }

  if (const json* v = get(doc, "process")) {
    auto p = parse_process(*v, "process", d);
    if (p) c.process = std::move(*p);
  }
  if (const json* v = get(doc, "pair")) {
    auto p = parse_pair(*v, "pair", d);
    if (p) c.pair = std::move(*p);
  }
  if (const json* v = get(doc, "classifier")) {
    auto p = parse_classifier(*v, "classifier", d);
    if (p) c.classifier = std::move(*p);
  }
  if (const json* v = get(doc, "tolerance")) {
    out.has_tol = true;
    parse_tolerance_section(*v, c, d);
  }
  if (const json* v = get(doc, "bound")) {
    out.has_bound = true;
    parse_bound_section(*v, c, d);
  }
  if (const json* v = get(doc, "counterexample")) {
    out.has_counter = true;
    parse_counterexample_section(*v, c, d);
  }
  if (const json* v = get(doc, "checks")) {
    out.has_checks = true;
    parse_checks_section(*v, c, d);
  }

  // cross-field constraints only make sense once the fields themselves parsed
  if (d.empty()) cross_checks(out, d);
  return out;
}

}  // namespace

std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::generate: return "generate";
    case Kind::consistency: return "consistency";
    case Kind::bound_check: return "bound-check";
    case Kind::tolerance: return "tolerance";
    case Kind::counterexample: return "counterexample";
    case Kind::kappa_check: return "kappa-check";
    case Kind::nabla_sweep: return "nabla-sweep";
  }
  return "";
}

std::optional<Kind> kind_from_name(std::string_view name) {
  for (Kind k : {Kind::generate, Kind::consistency, Kind::bound_check, Kind::tolerance,
                 Kind::counterexample, Kind::kappa_check, Kind::nabla_sweep})
    if (name == kind_name(k)) return k;
  return std::nullopt;
}

std::string_view format_name(Format f) { return f == Format::csv ? "csv" : "json"; }

std::optional<Format> format_from_name(std::string_view name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  return std::nullopt;
}

std::string_view formula_name(Formula f) {
  switch (f) {
    case Formula::plugin_deletion: return "plugin_deletion";
    case Formula::plugin_replacement: return "plugin_replacement";
    case Formula::tolerance_agnostic: return "tolerance_agnostic";
    case Formula::tolerance_realizable: return "tolerance_realizable";
    case Formula::error_agnostic: return "error_agnostic";
    case Formula::error_realizable: return "error_realizable";
    case Formula::vc_agnostic: return "vc_agnostic";
    case Formula::vc_agnostic_shifted: return "vc_agnostic_shifted";
    case Formula::vc_realizable: return "vc_realizable";
    case Formula::vc_uniform_dev: return "vc_uniform_dev";
  }
  return "";
}

std::optional<Formula> formula_from_name(std::string_view name) {
  for (Formula f :
       {Formula::plugin_deletion, Formula::plugin_replacement, Formula::tolerance_agnostic,
        Formula::tolerance_realizable, Formula::error_agnostic, Formula::error_realizable,
        Formula::vc_agnostic, Formula::vc_agnostic_shifted, Formula::vc_realizable,
        Formula::vc_uniform_dev})
    if (name == formula_name(f)) return f;
  return std::nullopt;
}

std::vector<std::string> validate_config(const nlohmann::json& doc, const Overrides& ov) {
  std::vector<std::string> d;
  do_parse(doc, ov, d);
  return d;
}

std::vector<std::string> validate_config_text(const std::string& text, const Overrides& ov) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) return {"the config is not valid JSON"};
  return validate_config(doc, ov);
}

Config parse_config(const nlohmann::json& doc, const Overrides& ov) {
  std::vector<std::string> d;
  Parsed p = do_parse(doc, ov, d);
  if (!d.empty()) {
    std::ostringstream msg;
    for (size_t i = 0; i < d.size(); ++i) msg << (i ? "; " : "") << d[i];
    fail(Errc::invalid_config, msg.str());
  }
  return std::move(p.cfg);
}

Config parse_config_text(const std::string& text, const Overrides& ov) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) fail(Errc::invalid_config, "the config is not valid JSON");
  return parse_config(doc, ov);
}

nlohmann::json config_json(const Config& c) {
  json j;
  j["kind"] = std::string(kind_name(c.kind));
  j["seed"] = c.seed;
  j["out"] = c.out;
  j["threads"] = c.threads;
  j["format"] = std::string(format_name(c.format));
  j["runs"] = c.runs;
  if (c.mc_draws) j["mc_draws"] = *c.mc_draws;
  if (!c.ns.empty()) j["ns"] = c.ns;
  if (!c.eps.empty()) j["eps"] = c.eps;
  if (c.delta) j["delta"] = *c.delta;
  j["grid"] = c.grid;
  if (c.process) j["process"] = process_json(*c.process);
  if (c.pair) j["pair"] = pair_json(*c.pair);
  if (c.classifier) j["classifier"] = classifier_json(*c.classifier);
  if (uses_tolerance_section(c, c.kind == Kind::bound_check)) {
    j["tolerance"] = json{{"mode", c.tol.mode == tolerance::Mode::deletion ? "deletion"
                                                                           : "replacement"},
                          {"search", c.tol.search == tolerance::Search::exact ? "exact"
                                                                              : "stochastic"},
                          {"budget", c.tol.budget},
                          {"kappa", c.tol.kappa},
                          {"fresh_per_class", c.tol.fresh_per_class},
                          {"p", c.tol.p}};
  }
  if (c.kind == Kind::bound_check) {
    j["bound"] = json{{"formula", std::string(formula_name(c.bound.formula))},
                      {"shatter", shatter_json(c.bound.shatter)},
                      {"indicator", c.bound.indicator},
                      {"proof_form", c.bound.proof_form}};
  }
  if (c.kind == Kind::counterexample) {
    j["counterexample"] = json{{"variant", c.counter.variant},
                               {"p", c.counter.p},
                               {"atoms", c.counter.atoms},
                               {"schedule", schedule_json(c.counter.rule)},
                               {"horizon", c.counter.horizon}};
  }
  json checks;
  if (c.checks.monotone_decreasing) checks["monotone_decreasing"] = true;
  if (c.checks.final_mean_below) checks["final_mean_below"] = *c.checks.final_mean_below;
  if (c.checks.min_mean_err1_above) checks["min_mean_err1_above"] = *c.checks.min_mean_err1_above;
  if (c.checks.after_n > 0) checks["after_n"] = c.checks.after_n;
  if (!checks.empty()) j["checks"] = std::move(checks);
  return j;
}

}  // namespace condlab
