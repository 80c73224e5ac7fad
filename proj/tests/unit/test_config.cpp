#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "core/config.hpp"
#include "helpers.hpp"

using namespace condlab;
using nlohmann::json;

namespace {

bool has_diag(const std::vector<std::string>& ds, const std::string& needle) {
  for (const auto& d : ds)
    if (d.find(needle) != std::string::npos) return true;
  return false;
}

template <class F>
std::optional<Errc> thrown_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

json base_consistency() {
  return json{
      {"kind", "consistency"},
      {"seed", 42},
      {"ns", {4, 8}},
      {"process", {{"type", "two_state_markov"}, {"t01", 0.3}, {"t10", 0.3}, {"init1", 0.5}}},
      {"pair",
       {{"type", "disjoint_boxes"},
        {"dim", 1},
        {"class0", {{0.0, 0.4}}},
        {"class1", {{0.6, 1.0}}}}},
      {"classifier", {{"type", "nearest_neighbour"}}},
  };
}

}  // namespace

TEST_CASE("names round-trip for every kind, format and formula") {
  for (Kind k : {Kind::generate, Kind::consistency, Kind::bound_check, Kind::tolerance,
                 Kind::counterexample, Kind::kappa_check, Kind::nabla_sweep})
    CHECK(kind_from_name(kind_name(k)) == k);
  for (Format f : {Format::csv, Format::json}) CHECK(format_from_name(format_name(f)) == f);
  for (Formula f :
       {Formula::plugin_deletion, Formula::plugin_replacement, Formula::tolerance_agnostic,
        Formula::tolerance_realizable, Formula::error_agnostic, Formula::error_realizable,
        Formula::vc_agnostic, Formula::vc_agnostic_shifted, Formula::vc_realizable,
        Formula::vc_uniform_dev})
    CHECK(formula_from_name(formula_name(f)) == f);
  CHECK(!kind_from_name("bogus"));
  CHECK(!format_from_name("yaml"));
  CHECK(!formula_from_name("hoeffding"));
}

TEST_CASE("a minimal config fills the documented defaults") {
  Config c = parse_config(base_consistency());
  CHECK(c.kind == Kind::consistency);
  CHECK(c.seed == 42);
  CHECK(c.out == ".");
  CHECK(c.threads == 1);
  CHECK(c.format == Format::csv);
  CHECK(c.runs == 200);
  CHECK(!c.mc_draws);
  CHECK(c.ns == std::vector<long long>{4, 8});
  CHECK(c.eps.empty());
  CHECK(!c.delta);
  CHECK(c.grid == 1);
  CHECK(c.process);
  CHECK(c.pair);
  CHECK(c.pair->dim() == 1);
  CHECK(c.classifier);
  CHECK(c.classifier->name() == "nearest_neighbour");
}

TEST_CASE("delta outside the half-open unit half is rejected with the exact wording") {
  json doc = base_consistency();
  doc["delta"] = 0.7;
  auto ds = validate_config(doc);
  CHECK(has_diag(ds, "delta must lie in (0, 1/2]"));
  doc["delta"] = 0.5;
  CHECK(validate_config(doc).empty());
  doc["delta"] = 0.0;
  CHECK(has_diag(validate_config(doc), "delta must lie in (0, 1/2]"));
}

TEST_CASE("a missing master seed is a diagnostic, not a silent fallback") {
  json doc = base_consistency();
  doc.erase("seed");
  auto ds = validate_config(doc);
  REQUIRE(!ds.empty());
  CHECK(has_diag(ds, "seed"));
  CHECK(thrown_code([&] { parse_config(doc); }) == Errc::invalid_config);

  Overrides ov;
  ov.seed = 7;
  CHECK(validate_config(doc, ov).empty());
  CHECK(parse_config(doc, ov).seed == 7);
}

TEST_CASE("interval rules demand one-dimensional pairs") {
  json doc = base_consistency();
  doc["classifier"] = {{"type", "erm_interval"}};
  doc["pair"] = {{"type", "disjoint_boxes"},
                 {"dim", 2},
                 {"class0", {{{"lo", {0.0, 0.0}}, {"hi", {0.4, 1.0}}}}},
                 {"class1", {{{"lo", {0.6, 0.0}}, {"hi", {1.0, 1.0}}}}}};
  doc["mc_draws"] = 100;
  auto ds = validate_config(doc);
  CHECK(has_diag(ds, "requires dimension 1"));
}

TEST_CASE("exact evaluation refuses multi-dimensional pairs unless mc_draws is set") {
  json doc = base_consistency();
  doc["pair"] = {{"type", "disjoint_boxes"},
                 {"dim", 2},
                 {"class0", {{{"lo", {0.0, 0.0}}, {"hi", {0.4, 1.0}}}}},
                 {"class1", {{{"lo", {0.6, 0.0}}, {"hi", {1.0, 1.0}}}}}};
  auto ds = validate_config(doc);
  CHECK(has_diag(ds, "mc_draws"));
  doc["mc_draws"] = 1000;
  CHECK(validate_config(doc).empty());
}

TEST_CASE("unknown fields are named in the diagnostics") {
  json doc = base_consistency();
  doc["surprise"] = 1;
  CHECK(has_diag(validate_config(doc), "unknown field 'surprise'"));
  doc.erase("surprise");
  doc["process"]["momentum"] = 2;
  CHECK(has_diag(validate_config(doc), "process: unknown field 'momentum'"));
}

TEST_CASE("kind overrides must agree with an explicit config kind") {
  json doc = base_consistency();
  Overrides ov;
  ov.kind = Kind::tolerance;
  CHECK(has_diag(validate_config(doc, ov), "asked for 'tolerance'"));

  doc.erase("kind");
  ov.kind = Kind::consistency;
  CHECK(validate_config(doc, ov).empty());
  CHECK(has_diag(validate_config(doc), "kind"));
}

TEST_CASE("n_range expands to an inclusive stepped list") {
  json doc = base_consistency();
  doc.erase("ns");
  doc["n_range"] = {{"from", 2}, {"to", 10}, {"step", 4}};
  Config c = parse_config(doc);
  CHECK(c.ns == std::vector<long long>{2, 6, 10});

  doc["ns"] = {1, 2};
  CHECK(has_diag(validate_config(doc), "not both"));
  doc.erase("ns");
  doc["n_range"] = {{"from", 5}, {"to", 2}};
  CHECK(has_diag(validate_config(doc), "n_range"));
}

TEST_CASE("scalar fields are range-checked") {
  json doc = base_consistency();
  doc["threads"] = 0;
  doc["runs"] = 0;
  doc["grid"] = 0;
  doc["mc_draws"] = 0;
  doc["eps"] = {0.0};
  auto ds = validate_config(doc);
  CHECK(has_diag(ds, "threads"));
  CHECK(has_diag(ds, "runs"));
  CHECK(has_diag(ds, "grid"));
  CHECK(has_diag(ds, "mc_draws"));
  CHECK(has_diag(ds, "eps"));

  doc = base_consistency();
  doc["ns"] = {4, 0};
  CHECK(has_diag(validate_config(doc), "ns"));
  doc["ns"] = json::array();
  CHECK(has_diag(validate_config(doc), "nonempty"));
  doc["ns"] = {4, 2.5};
  CHECK(has_diag(validate_config(doc), "integer"));
}

TEST_CASE("label patterns parse from strings and arrays alike") {
  json doc = base_consistency();
  doc["process"] = {{"type", "periodic"}, {"pattern", "01"}};
  Config a = parse_config(doc);
  doc["process"] = {{"type", "periodic"}, {"pattern", {0, 1}}};
  Config b = parse_config(doc);
  CHECK(a.process->sample(6, 0) == b.process->sample(6, 0));
  CHECK(a.process->sample(4, 0) == Labels{0, 1, 0, 1});

  doc["process"] = {{"type", "periodic"}, {"pattern", "012"}};
  CHECK(has_diag(validate_config(doc), "pattern"));
}

TEST_CASE("process probabilities are validated by construction") {
  json doc = base_consistency();
  doc["process"] = {{"type", "iid_bernoulli"}, {"p", 1.5}};
  CHECK(has_diag(validate_config(doc), "process"));
  doc["process"] = {{"type", "two_state_markov"}, {"t01", -0.1}};
  CHECK(has_diag(validate_config(doc), "process"));
  doc["process"] = {{"type", "warp"}};
  CHECK(has_diag(validate_config(doc), "unknown process type 'warp'"));
}

TEST_CASE("pairs inherit the module's support checks") {
  json doc = base_consistency();
  doc["pair"] = {{"type", "disjoint_boxes"},
                 {"dim", 1},
                 {"class0", {{0.0, 0.5}}},
                 {"class1", {{0.4, 1.0}}}};
  CHECK(has_diag(validate_config(doc), "disjoint"));

  doc["pair"] = {{"type", "discrete"}, {"points0", {0.0, 0.25}}, {"points1", {1.0}}};
  Config c = parse_config(doc);
  const auto* alpha = c.pair->get_if<DiscreteAlphabet>();
  REQUIRE(alpha != nullptr);
  CHECK(alpha->probs0 == std::vector<double>{0.5, 0.5});
  CHECK(alpha->probs1 == std::vector<double>{1.0});
}

TEST_CASE("classifier specs parse with their knobs") {
  json doc = base_consistency();
  doc["classifier"] = {{"type", "partition"},
                       {"cell_width", {{"type", "constant"}, {"h", 0.25}}}};
  Config c = parse_config(doc);
  const auto* part = c.classifier->get_if<PartitionSpec>();
  REQUIRE(part != nullptr);
  CHECK(part->cell_width.width(100, 1) == 0.25);

  doc["classifier"] = {{"type", "erm_k_intervals"}, {"k", 0}};
  CHECK(has_diag(validate_config(doc), "classifier.k"));

  doc["classifier"] = {{"type", "erm_finite"}, {"hypotheses", json::array()}};
  CHECK(has_diag(validate_config(doc), "hypotheses"));

  doc["classifier"] = {{"type", "erm_finite"},
                       {"hypotheses", {{{0.0, 0.5}}, json::array()}}};
  CHECK(validate_config(doc).empty());
}

TEST_CASE("sections are rejected under kinds that never read them") {
  json doc = base_consistency();
  doc["tolerance"] = {{"mode", "deletion"}};
  CHECK(has_diag(validate_config(doc), "tolerance"));
  doc.erase("tolerance");
  doc["bound"] = {{"formula", "vc_agnostic"}};
  CHECK(has_diag(validate_config(doc), "bound"));
  doc.erase("bound");
  doc["counterexample"] = {{"variant", "alternating"}};
  CHECK(has_diag(validate_config(doc), "counterexample"));
}

TEST_CASE("kind-specific requirements are spelled out") {
  json doc{{"kind", "kappa-check"}, {"seed", 1}, {"ns", {100}},
           {"process", {{"type", "two_state_markov"}}}};
  CHECK(has_diag(validate_config(doc), "iid_bernoulli"));

  doc = json{{"kind", "nabla-sweep"}, {"seed", 1}, {"ns", {16}}, {"eps", {0.1, 0.2}},
             {"delta", 0.2},
             {"pair", base_consistency()["pair"]},
             {"classifier", {{"type", "nearest_neighbour"}}}};
  CHECK(has_diag(validate_config(doc), "single eps"));
  doc["eps"] = {0.1};
  CHECK(validate_config(doc).empty());

  doc = json{{"kind", "bound-check"}, {"seed", 1}, {"ns", {100}}, {"eps", {0.1}},
             {"bound", {{"formula", "tolerance_agnostic"}}},
             {"pair", base_consistency()["pair"]},
             {"classifier", {{"type", "erm_interval"}}}};
  CHECK(has_diag(validate_config(doc), "n > 4/eps^2"));
  doc["ns"] = {401};
  CHECK(validate_config(doc).empty());

  doc = json{{"kind", "tolerance"}, {"seed", 1}, {"ns", {20}}, {"eps", {0.1}},
             {"tolerance", {{"search", "exact"}}},
             {"pair", base_consistency()["pair"]},
             {"classifier", {{"type", "nearest_neighbour"}}}};
  CHECK(has_diag(validate_config(doc), "exact search"));
  doc["ns"] = {8};
  doc["tolerance"] = {{"search", "exact"}, {"kappa", 2}};
  CHECK(validate_config(doc).empty());

  doc = json{{"kind", "consistency"}, {"seed", 1}, {"ns", {4, 8}},
             {"process", {{"type", "explicit"}, {"labels", "0101"}}},
             {"pair", base_consistency()["pair"]},
             {"classifier", {{"type", "nearest_neighbour"}}}};
  CHECK(has_diag(validate_config(doc), "shorter"));
  doc["ns"] = {2, 4};
  CHECK(validate_config(doc).empty());
}

TEST_CASE("checks belong to the kinds that apply them") {
  json doc = base_consistency();
  doc["checks"] = {{"min_mean_err1_above", 0.2}};
  CHECK(has_diag(validate_config(doc), "schedule counterexamples"));

  doc = json{{"kind", "counterexample"}, {"seed", 1},
             {"counterexample",
              {{"variant", "schedule"}, {"schedule", {{"type", "power"}, {"base", 2}}},
               {"horizon", 50}}},
             {"checks", {{"monotone_decreasing", true}}}};
  CHECK(has_diag(validate_config(doc), "consistency"));
}

TEST_CASE("invalid JSON text surfaces as one diagnostic") {
  CHECK(has_diag(validate_config_text("{nope", {}), "not valid JSON"));
  CHECK(thrown_code([] { parse_config_text("{nope", {}); }) == Errc::invalid_config);
  json doc = base_consistency();
  CHECK(validate_config_text(doc.dump(), {}).empty());
}

TEST_CASE("canonical serialisation is a fixed point of parsing") {
  std::vector<json> docs;
  docs.push_back(base_consistency());
  {
    json d = base_consistency();
    d["kind"] = "generate";
    d["process"] = {{"type", "periodic"}, {"pattern", {0, 1, 1}}};
    d.erase("classifier");
    docs.push_back(d);
  }
  {
    json d{{"kind", "tolerance"}, {"seed", 9}, {"ns", {8}}, {"eps", {0.1, 0.2}},
           {"grid", 3}, {"delta", 0.2}, {"runs", 5},
           {"pair", base_consistency()["pair"]},
           {"classifier", {{"type", "erm_k_intervals"}, {"k", 2}}},
           {"tolerance",
            {{"mode", "replacement"}, {"search", "stochastic"}, {"budget", 17}, {"kappa", 2},
             {"fresh_per_class", 3}, {"p", 0.4}}}};
    docs.push_back(d);
  }
  {
    json d{{"kind", "bound-check"}, {"seed", 3}, {"ns", {2000}}, {"eps", {0.1}},
           {"delta", 0.25}, {"runs", 4},
           {"pair", base_consistency()["pair"]},
           {"classifier", {{"type", "erm_interval"}}},
           {"process", {{"type", "iid_bernoulli"}, {"p", 0.5}}},
           {"bound",
            {{"formula", "plugin_deletion"}, {"shatter", {{"type", "sauer"}, {"vc", 2}}},
             {"proof_form", true}}},
           {"tolerance", {{"budget", 8}}}};
    docs.push_back(d);
  }
  {
    json d{{"kind", "counterexample"}, {"seed", 5}, {"runs", 3},
           {"counterexample",
            {{"variant", "schedule"}, {"atoms", 32},
             {"schedule", {{"type", "list"}, {"values", {1, 2, 3}}}}, {"horizon", 20}}},
           {"checks", {{"min_mean_err1_above", 0.5}, {"after_n", 4}}}};
    docs.push_back(d);
  }
  {
    json d{{"kind", "kappa-check"}, {"seed", 8}, {"ns", {64}}, {"runs", 11},
           {"process", {{"type", "iid_bernoulli"}, {"p", 0.3}}}};
    docs.push_back(d);
  }
  {
    json d{{"kind", "nabla-sweep"}, {"seed", 2}, {"ns", {16}}, {"eps", {0.15}},
           {"delta", 0.1}, {"grid", 4}, {"runs", 6}, {"format", "json"},
           {"pair", base_consistency()["pair"]},
           {"classifier",
            {{"type", "partition"}, {"cell_width", {{"type", "power"}, {"coeff", 2.0},
                                                    {"exponent", 0.25}}}}}};
    docs.push_back(d);
  }

  for (const auto& doc : docs) {
    CAPTURE(doc.dump());
    REQUIRE(validate_config(doc).empty());
    Config c1 = parse_config(doc);
    json j1 = config_json(c1);
    REQUIRE(validate_config(j1).empty());
    Config c2 = parse_config(j1);
    json j2 = config_json(c2);
    CHECK(j1 == j2);
  }
}

TEST_CASE("overrides land in the canonical form") {
  Overrides ov;
  ov.out = "elsewhere";
  ov.threads = 4;
  ov.format = Format::json;
  Config c = parse_config(base_consistency(), ov);
  json j = config_json(c);
  CHECK(j["out"] == "elsewhere");
  CHECK(j["threads"] == 4);
  CHECK(j["format"] == "json");
}
