#include "condlab/condlab.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "core/config.hpp"
#include "core/errors.hpp"
#include "core/harness.hpp"

struct condlab_run {
  std::string text;
  condlab::Overrides overrides;
  std::string summary;
  std::string error;
  // kept apart from `error`, which successful calls clear
  std::string file_error;
  bool has_summary = false;
  bool file_missing = false;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

condlab_status fail(condlab_run* run, condlab_status st, std::string msg) {
  run->error = std::move(msg);
  return st;
}

condlab_status ok(condlab_run* run) {
  run->error.clear();
  return CONDLAB_OK;
}

}  // namespace

extern "C" {

const char* condlab_version(void) { return condlab::kToolVersion; }

condlab_run* condlab_run_create(const char* config_json) {
  auto* run = new (std::nothrow) condlab_run;
  if (!run) return nullptr;
  run->text = config_json ? config_json : "";
  return run;
}

condlab_run* condlab_run_create_from_file(const char* path) {
  auto* run = new (std::nothrow) condlab_run;
  if (!run) return nullptr;
  std::ifstream f(path ? path : "", std::ios::binary);
  if (!f.good()) {
    run->file_missing = true;
    run->file_error = std::string("cannot read config file: ") + (path ? path : "(null)");
    run->error = run->file_error;
    return run;
  }
  std::stringstream ss;
  ss << f.rdbuf();
  run->text = ss.str();
  return run;
}

void condlab_run_destroy(condlab_run* run) { delete run; }

condlab_status condlab_run_set_out_dir(condlab_run* run, const char* dir) {
  if (!run) return CONDLAB_BAD_ARGUMENT;
  if (!dir) return fail(run, CONDLAB_BAD_ARGUMENT, "out dir must not be null");
  run->overrides.out = dir;
  return ok(run);
}

condlab_status condlab_run_set_seed(condlab_run* run, uint64_t seed) {
  if (!run) return CONDLAB_BAD_ARGUMENT;
  run->overrides.seed = seed;
  return ok(run);
}

condlab_status condlab_run_set_threads(condlab_run* run, int threads) {
  if (!run) return CONDLAB_BAD_ARGUMENT;
  if (threads < 1) return fail(run, CONDLAB_BAD_ARGUMENT, "threads must be >= 1");
  run->overrides.threads = threads;
  return ok(run);
}

condlab_status condlab_run_set_format(condlab_run* run, const char* format) {
  if (!run) return CONDLAB_BAD_ARGUMENT;
  auto f = condlab::format_from_name(format ? format : "");
  if (!f)
    return fail(run, CONDLAB_BAD_ARGUMENT,
                std::string("unknown format '") + (format ? format : "(null)") + "'");
  run->overrides.format = *f;
  return ok(run);
}

condlab_status condlab_run_set_kind(condlab_run* run, const char* kind) {
  if (!run) return CONDLAB_BAD_ARGUMENT;
  auto k = condlab::kind_from_name(kind ? kind : "");
  if (!k)
    return fail(run, CONDLAB_BAD_ARGUMENT,
                std::string("unknown kind '") + (kind ? kind : "(null)") + "'");
  run->overrides.kind = *k;
  return ok(run);
}

condlab_status condlab_run_validate(condlab_run* run, char** diagnostics_json) {
  if (!run) return CONDLAB_BAD_ARGUMENT;
  if (diagnostics_json) *diagnostics_json = nullptr;
  try {
    std::vector<std::string> diags;
    if (run->file_missing)
      diags.push_back(run->file_error);
    else
      diags = condlab::validate_config_text(run->text, run->overrides);
    if (diagnostics_json) {
      nlohmann::json arr = diags;
      *diagnostics_json = dup_string(arr.dump());
    }
    if (diags.empty()) return ok(run);
    std::string joined;
    for (const auto& d : diags) {
      if (!joined.empty()) joined += "; ";
      joined += d;
    }
    return fail(run, CONDLAB_INVALID_CONFIG, std::move(joined));
  } catch (const std::exception& e) {
    return fail(run, CONDLAB_RUNTIME_ERROR, e.what());
  }
}

condlab_status condlab_run_execute(condlab_run* run) {
  if (!run) return CONDLAB_BAD_ARGUMENT;
  run->summary.clear();
  run->has_summary = false;
  if (run->file_missing) return fail(run, CONDLAB_INVALID_CONFIG, run->file_error);
  try {
    condlab::Config cfg = condlab::parse_config_text(run->text, run->overrides);
    condlab::RunResult rr = condlab::run(cfg);
    run->summary = rr.summary.dump(2) + "\n";
    run->has_summary = true;
    if (!rr.all_pass()) {
      std::string msg;
      for (const auto& c : rr.checks)
        if (!c.pass) {
          if (!msg.empty()) msg += "; ";
          msg += c.name + ": " + c.detail;
        }
      return fail(run, CONDLAB_PREDICATE_FAILED, std::move(msg));
    }
    return ok(run);
  } catch (const condlab::Error& e) {
    auto st = e.code() == condlab::Errc::invalid_config ? CONDLAB_INVALID_CONFIG
                                                        : CONDLAB_RUNTIME_ERROR;
    return fail(run, st, e.what());
  } catch (const std::exception& e) {
    return fail(run, CONDLAB_RUNTIME_ERROR, e.what());
  }
}

const char* condlab_run_summary_json(const condlab_run* run) {
  if (!run || !run->has_summary) return nullptr;
  return run->summary.c_str();
}

const char* condlab_run_error(const condlab_run* run) {
  if (!run || run->error.empty()) return nullptr;
  return run->error.c_str();
}

void condlab_string_free(char* s) { std::free(s); }

}  // extern "C"
