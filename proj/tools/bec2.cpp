#include <atomic>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bec2/commands.hpp"
#include "bec2/config.hpp"
#include "bec2/errors.hpp"
#include "bec2/output.hpp"

namespace {

volatile std::sig_atomic_t g_signal = 0;

void on_signal(int) { g_signal = 1; }

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::string format;
  int jobs = 1;
  bool seedless = true;
};

// --out beats the config's output.dir, which beats BEC2_OUT, which beats
// ./bec2_out.
std::filesystem::path resolve_out_dir(const CommonArgs& args, const bec2::RunConfig* cfg) {
  if (!args.out_dir.empty()) return args.out_dir;
  if (cfg && !cfg->output.dir.empty()) return cfg->output.dir;
  if (const char* env = std::getenv("BEC2_OUT"); env && *env) return env;
  return "./bec2_out";
}

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required) {
  auto* config = cmd->add_option("-c,--config", args.config_path, "JSON run configuration");
  if (config_required) {
    config->required();
  }
  config->check(CLI::ExistingFile);
  cmd->add_option("-o,--out", args.out_dir,
                  "Output directory (overrides the config and BEC2_OUT)");
  cmd->add_option("-f,--format", args.format, "Table format for this run")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("-j,--jobs", args.jobs, "Worker threads for sweeps")
      ->check(CLI::Range(1, 256));
  cmd->add_flag("--seedless", args.seedless,
                "Run without any random number generation (always on; the tool "
                "draws no random numbers anywhere)");
}

int dispatch(const std::string& name, const CommonArgs& args) {
  bec2::RunConfig cfg = bec2::parse_config_file(args.config_path);
  if (!args.format.empty()) {
    const bec2::TableFormat fmt =
        args.format == "json" ? bec2::TableFormat::json : bec2::TableFormat::csv;
    cfg.output.table_format = fmt;
  }
  bec2::CommandOptions opts;
  opts.out_dir = resolve_out_dir(args, &cfg);
  opts.jobs = args.jobs;
  opts.cancelled = [] { return g_signal != 0; };
  return bec2::run_command(name, cfg, opts);
}

}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);

  CLI::App app{"Mean-field optics and diffraction toolkit for two-component "
               "atomic gases in far-detuned light"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(bec2::tool_version));

  CommonArgs args;

  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub physics_subs[] = {
      {"index", "Refractive index and screening along a density sweep"},
      {"chi", "Susceptibility along a density sweep"},
      {"diffract", "Closed-form diffraction spectrum"},
      {"simulate", "Split-step propagation through the light sheet"},
      {"sweep", "Run a command over a parameter grid"},
  };
  for (const Sub& s : physics_subs) {
    add_common(app.add_subcommand(s.name, s.help), args, true);
  }
  auto* validate = app.add_subcommand(
      "validate", "Run the built-in acceptance checks and print one line each");
  add_common(validate, args, false);

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (sub->get_name() == "validate") {
      std::optional<std::filesystem::path> out;
      if (!args.out_dir.empty()) {
        out = args.out_dir;
      } else if (const char* env = std::getenv("BEC2_OUT"); env && *env) {
        out = env;
      }
      return bec2::run_validate(out, std::cout);
    }
    return dispatch(sub->get_name(), args);
  } catch (const bec2::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.exit_code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(bec2::ExitCode::failure);
  }
}
