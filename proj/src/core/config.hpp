#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "core/bounds.hpp"
#include "core/class_pair.hpp"
#include "core/classifiers.hpp"
#include "core/label_process.hpp"
#include "core/tolerance.hpp"

namespace condlab {

enum class Kind {
  generate,
  consistency,
  bound_check,
  tolerance,
  counterexample,
  kappa_check,
  nabla_sweep,
};

enum class Format { csv, json };

enum class Formula {
  plugin_deletion,
  plugin_replacement,
  tolerance_agnostic,
  tolerance_realizable,
  error_agnostic,
  error_realizable,
  vc_agnostic,
  vc_agnostic_shifted,
  vc_realizable,
  vc_uniform_dev,
};

std::string_view kind_name(Kind k);
std::optional<Kind> kind_from_name(std::string_view name);
std::string_view format_name(Format f);
std::optional<Format> format_from_name(std::string_view name);
std::string_view formula_name(Formula f);
std::optional<Formula> formula_from_name(std::string_view name);

struct ToleranceConfig {
  tolerance::Mode mode = tolerance::Mode::deletion;
  tolerance::Search search = tolerance::Search::stochastic;
  long long budget = 256;
  long long kappa = -1;  // -1: floor(sqrt(n ln n))
  long long fresh_per_class = 64;
  double p = 0.5;  // class-1 weight when no delta grid is requested
};

struct BoundCheckConfig {
  Formula formula = Formula::vc_agnostic;
  bounds::ShatterFn shatter;
  int indicator = 0;      // caller-supplied indicator term of the agnostic error tail
  bool proof_form = false;  // deletion plug-in: evaluate at the smallest m with m - kappa(m) >= n
};

struct CounterexampleConfig {
  std::string variant = "alternating";  // alternating | schedule
  double p = 0.5;
  long long atoms = 256;
  ScheduleRule rule;
  long long horizon = 10000;
};

struct Checks {
  bool monotone_decreasing = false;
  std::optional<double> final_mean_below;
  std::optional<double> min_mean_err1_above;
  long long after_n = 0;  // schedule rows with n <= after_n are exempt
};

struct Config {
  Kind kind = Kind::consistency;
  std::uint64_t seed = 0;
  std::string out = ".";
  int threads = 1;
  Format format = Format::csv;

  long long runs = 200;
  std::optional<long long> mc_draws;  // absent: exact one-dimensional evaluation

  std::vector<long long> ns;
  std::vector<double> eps;
  std::optional<double> delta;
  int grid = 1;

  std::optional<LabelProcess> process;
  std::optional<ClassPair> pair;
  std::optional<ClassifierSpec> classifier;

  ToleranceConfig tol;
  BoundCheckConfig bound;
  CounterexampleConfig counter;
  Checks checks;
};

// command-line values that take precedence over the config document
struct Overrides {
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<Format> format;
  std::optional<Kind> kind;
};

// every problem found, one message per field; empty iff parse_config succeeds
std::vector<std::string> validate_config(const nlohmann::json& doc, const Overrides& ov = {});
std::vector<std::string> validate_config_text(const std::string& text, const Overrides& ov = {});

// throws Error(Errc::invalid_config) carrying the joined diagnostics
Config parse_config(const nlohmann::json& doc, const Overrides& ov = {});
Config parse_config_text(const std::string& text, const Overrides& ov = {});

// canonical serialisation; parse_config(config_json(c)) reproduces c exactly
nlohmann::json config_json(const Config& c);

}  // namespace condlab
