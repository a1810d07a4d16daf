// hyperperc: command-line driver. Values are merged as
// defaults < --config file < --key flags.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "hyperperc/commands.hpp"

using namespace hyperperc;

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo lab for hyperbolic Poisson-Voronoi and tiling percolation", "hyperperc"};
  app.require_subcommand(1);

  struct Options {
    std::string config_path;
    std::map<std::string, std::string> flags;
  };
  std::map<std::string, Options> options;
  const std::map<std::string, std::string> about = {
      {"gen-tiling", "build a {p,q} tiling ball and its dual"},
      {"voronoi-sample", "draw a colored Poisson sample and its Voronoi complex"},
      {"densities", "estimate vertex, edge and face densities of the Voronoi tiling"},
      {"phase-sweep", "classify (p, lambda) points by boundary-reaching clusters"},
      {"pc-estimate", "estimate p_c from window-ladder crossings"},
      {"pu-estimate", "estimate the uniqueness threshold p_u"},
      {"graph-perc", "bond percolation sweep on a tiling ball"},
      {"decay", "two-point connectivity decay below p_c"},
      {"render", "SVG picture of a sample, a tiling or a phase table"},
  };
  for (const std::string& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name, about.at(name));
    Options& opt = options[name];
    sub->add_option("--config", opt.config_path, "key = value file");
    for (const KeySpec& k : command_keys(name)) {
      std::string help = k.help;
      if (!k.default_value.empty()) help += " [" + k.default_value + "]";
      sub->add_option_function<std::string>(
          "--" + k.key, [&opt, key = k.key](const std::string& v) { opt.flags[key] = v; }, help);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  const Options& opt = options[name];
  ExperimentConfig config;
  try {
    config = default_config(name);
    if (!opt.config_path.empty()) {
      std::ifstream in(opt.config_path);
      if (!in) throw Error(ErrorKind::Config, "cannot read config file '" + opt.config_path + "'");
      std::ostringstream text;
      text << in.rdbuf();
      merge_config(config, ExperimentConfig::parse(text.str()));
    }
    for (const auto& [key, value] : opt.flags) config.set(key, value);
  } catch (const Error& e) {
    std::cerr << "hyperperc " << name << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  return run_command(config, std::cerr);
}
