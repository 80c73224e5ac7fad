#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "core/config.hpp"

namespace condlab {

inline constexpr const char* kToolName = "condlab";
inline constexpr const char* kToolVersion = "0.1.0";

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct RunResult {
  std::vector<CheckResult> checks;
  std::vector<std::string> files;  // written artifacts, relative to the output directory
  nlohmann::json summary;          // the contents of summary.json

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Executes the experiment and writes manifest.json, results.csv or
// results.json, kind-specific extras, and summary.json into cfg.out.
// All randomness descends from cfg.seed, so the artifacts are
// byte-identical across reruns and thread counts.
RunResult run(const Config& cfg);

// shortest decimal form that parses back to the same value; non-finite
// values become "inf", "-inf" and "nan"
std::string fmt_num(double v);

}  // namespace condlab
