#include "cli/run.hpp"

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "cli/manifest.hpp"
#include "clogfuse/fusion/assimilate.hpp"
#include "clogfuse/util/error.hpp"
#include "clogfuse/util/parallel.hpp"

namespace clogfuse::cli {

namespace {

struct Invocation {
  std::string config_path;
  std::vector<std::string> overrides;
  std::size_t threads = 0;
  std::string out_dir;
};

using Command = void (*)(const Context&);

const std::map<std::string, std::pair<Command, std::string>>& commands() {
  static const std::map<std::string, std::pair<Command, std::string>> table{
      {"simulate", {&cmd_simulate, "Simulate a prior ensemble"}},
      {"surrogate", {&cmd_surrogate, "Fit the surrogate and audit Q2 and conformal coverage"}},
      {"assimilate", {&cmd_assimilate, "Run BMU then the windowed ensemble smoother"}},
      {"rul", {&cmd_rul, "Remaining useful life before and after assimilation"}},
      {"report", {&cmd_report, "Plot-ready long-format CSV tables"}},
  };
  return table;
}

/// Loads the file, then applies the seed environment variable and the
/// --set overrides, in that order.
PipelineConfig load_config(const Invocation& inv) {
  const std::filesystem::path path(inv.config_path);
  nlohmann::json doc = read_config_file(path);
  if (const char* env = std::getenv("CLOGFUSE_SEED"); env && *env)
    apply_override(doc, std::string("seed=") + env);
  for (const auto& o : inv.overrides) apply_override(doc, o);
  auto config = parse_config(doc, path.parent_path());
  if (!inv.out_dir.empty()) config.output_dir = inv.out_dir;
  return config;
}

int execute(const std::string& name, const Invocation& inv, std::ostream& out, std::ostream& err) {
  PipelineConfig config;
  try {
    config = load_config(inv);
  } catch (const ConfigKeyError& e) {
    err << "clogfuse: config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ConfigError& e) {
    err << "clogfuse: config error: " << e.what() << '\n';
    return kConfigError;
  }

  set_max_threads(inv.threads);
  Manifest manifest(name, config.source, config.seed);
  int status = kSuccess;
  try {
    std::filesystem::create_directories(config.output_dir);
    const Context ctx{config, config.output_dir, manifest, out};
    commands().at(name).first(ctx);
  } catch (const ConfigKeyError& e) {
    err << "clogfuse: config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const fusion::StageError& e) {
    err << "clogfuse: " << name << " failed in stage " << e.what() << '\n';
    manifest["error"] = {{"stage", e.stage()}, {"message", e.what()}};
    status = kRuntimeError;
  } catch (const std::exception& e) {
    err << "clogfuse: " << name << " failed: " << e.what() << '\n';
    manifest["error"] = {{"stage", name}, {"message", e.what()}};
    status = kRuntimeError;
  }
  try {
    manifest.write(config.output_dir / "manifest.json");
  } catch (const std::exception& e) {
    err << "clogfuse: cannot write manifest: " << e.what() << '\n';
    return kRuntimeError;
  }
  for (const auto& w : manifest.json()["warnings"]) err << "clogfuse: warning: " << w.get<std::string>() << '\n';
  return status;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Clogging prognostics by data assimilation", "clogfuse"};
  app.set_version_flag("--version", std::string(CLOGFUSE_VERSION));
  app.require_subcommand(1);

  Invocation inv;
  std::string chosen;
  for (const auto& [name, entry] : commands()) {
    auto* sub = app.add_subcommand(name, entry.second);
    sub->add_option("--config", inv.config_path, "Configuration file (JSON)")->required();
    sub->add_option("--set", inv.overrides, "Override a config entry, key.path=value");
    sub->add_option("--threads", inv.threads, "Worker thread cap (0: hardware concurrency)");
    sub->add_option("--out", inv.out_dir, "Output directory");
    sub->callback([&chosen, n = name] { chosen = n; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kConfigError;
  }
  return execute(chosen, inv, out, err);
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace clogfuse::cli
