#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wavedg_cli/commands.hpp"
#include "wavedg_cli/config.hpp"

namespace {

// Leftover arguments must come as "--key value" or "--key=value" pairs.
bool apply_overrides(const std::vector<std::string>& extras, wavedg::cli::Config& cfg, std::string& bad) {
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& a = extras[i];
    if (a.rfind("--", 0) != 0 || a.size() < 3) {
      bad = a;
      return false;
    }
    const std::string body = a.substr(2);
    const auto eq = body.find('=');
    if (eq != std::string::npos) {
      cfg.set(body.substr(0, eq), body.substr(eq + 1));
    } else if (i + 1 < extras.size()) {
      cfg.set(body, extras[++i]);
    } else {
      bad = a;
      return false;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Staggered energy-based DG for the wave equation: experiment harness"};
  app.require_subcommand(1);
  std::string config_path;
  for (const char* name : {"converge", "spectrum", "ltsaudit", "evolve"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "key = value configuration file");
    sub->allow_extras();
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  wavedg::cli::Config cfg;
  try {
    if (!config_path.empty()) cfg = wavedg::cli::Config::load(config_path);
  } catch (const wavedg::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  }
  std::string bad;
  if (!apply_overrides(sub->remaining(), cfg, bad)) {
    std::cerr << "config error: malformed override '" << bad << "'\n";
    return 1;
  }
  return wavedg::cli::run_command(sub->get_name(), cfg, std::cout, std::cerr);
}
