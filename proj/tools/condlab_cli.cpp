#include <cstdio>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "condlab/condlab.h"

namespace {

struct Common {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-c,--config", c.config, "config document (JSON file)")->required();
  cmd->add_option("-o,--out", c.out, "output directory (overrides the config)");
  cmd->add_option("--seed", c.seed, "master seed (overrides the config)");
  cmd->add_option("-j,--threads", c.threads, "worker threads (overrides the config)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", c.format, "results format")
      ->check(CLI::IsMember({"csv", "json"}));
}

int exit_code(condlab_status st) {
  switch (st) {
    case CONDLAB_OK: return 0;
    case CONDLAB_PREDICATE_FAILED: return 1;
    case CONDLAB_INVALID_CONFIG: return 2;
    default: return 3;
  }
}

struct Handle {
  condlab_run* run;
  ~Handle() { condlab_run_destroy(run); }
};

int report(const condlab_run* run, condlab_status st) {
  if (st != CONDLAB_OK) {
    const char* msg = condlab_run_error(run);
    std::fprintf(stderr, "error: %s\n", msg ? msg : "unknown failure");
  }
  return exit_code(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulation lab for pattern recognition on conditionally independent data"};
  app.set_version_flag("--version", condlab_version());
  app.require_subcommand(1);

  Common c;
  const std::map<std::string, const char*> kinds = {
      {"generate", "generate"},       {"evaluate", "consistency"},
      {"tolerance", "tolerance"},     {"bounds", "bound-check"},
      {"counterexample", "counterexample"}, {"experiment", nullptr},
      {"validate", nullptr},
  };
  add_common(app.add_subcommand("generate", "draw one labeled sample and write it out"), c);
  add_common(app.add_subcommand("evaluate", "estimate classifier error curves"), c);
  add_common(app.add_subcommand("tolerance", "measure tolerance-to-data distributions"), c);
  add_common(app.add_subcommand("bounds", "check closed-form bounds against simulation"), c);
  add_common(app.add_subcommand("counterexample", "run the negative examples"), c);
  add_common(app.add_subcommand("experiment", "run whatever kind the config names"), c);
  add_common(app.add_subcommand("validate", "check a config without running it"), c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const std::string sub = app.get_subcommands().front()->get_name();

  Handle h{condlab_run_create_from_file(c.config.c_str())};
  if (!h.run) {
    std::fprintf(stderr, "error: out of memory\n");
    return 3;
  }
  condlab_status st = CONDLAB_OK;
  if (c.out) st = condlab_run_set_out_dir(h.run, c.out->c_str());
  if (st == CONDLAB_OK && c.seed) st = condlab_run_set_seed(h.run, *c.seed);
  if (st == CONDLAB_OK && c.threads) st = condlab_run_set_threads(h.run, *c.threads);
  if (st == CONDLAB_OK && c.format) st = condlab_run_set_format(h.run, c.format->c_str());
  if (st == CONDLAB_OK) {
    if (const char* kind = kinds.at(sub)) st = condlab_run_set_kind(h.run, kind);
  }
  if (st != CONDLAB_OK) return report(h.run, st);

  if (sub == "validate") {
    char* diags = nullptr;
    st = condlab_run_validate(h.run, &diags);
    if (diags) {
      for (const auto& d : nlohmann::json::parse(diags))
        std::fprintf(stderr, "config error: %s\n", d.get<std::string>().c_str());
      condlab_string_free(diags);
    }
    if (st == CONDLAB_OK) std::printf("config ok\n");
    return exit_code(st);
  }

  st = condlab_run_execute(h.run);
  if (const char* summary = condlab_run_summary_json(h.run)) std::fputs(summary, stdout);
  return report(h.run, st);
}
