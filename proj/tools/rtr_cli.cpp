#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rtr/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"exact refined recursion engine"};
  app.require_subcommand(1);

  std::string config_file, curve, params, override_file, out_dir;
  int budget = -1, voros_order = -1, jobs = -1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_file, "JSON config file");
    sub->add_option("--curve", curve, "weber | whittaker | airy | dbes");
    sub->add_option("--params", params, "e.g. s=2,mass=3,mu=1/3,nu_plus=3/5");
    sub->add_option("--budget", budget, "max 2g+n");
    sub->add_option("--voros-order", voros_order, "highest compared coefficient");
    sub->add_option("--omega-override", override_file, "JSON file {\"n\": c, ...}");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--jobs", jobs, "worker count");
  };
  for (const char* name : {"bps", "omega", "free-energy", "voros", "verify"})
    add_common(app.add_subcommand(name));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    rtr::RunConfig cfg;
    if (!config_file.empty()) {
      std::ifstream f(config_file);
      if (!f) throw rtr::ConfigError("cannot read config file: " + config_file);
      std::stringstream ss;
      ss << f.rdbuf();
      cfg = rtr::parse_config_text(ss.str());
    }
    if (!curve.empty()) cfg.curve = rtr::parse_curve(curve);
    if (!params.empty()) rtr::apply_param_string(cfg, params);
    if (budget >= 0) cfg.budget = budget;
    if (voros_order >= 0) cfg.voros_order = voros_order;
    if (jobs >= 0) cfg.jobs = jobs;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!override_file.empty()) {
      std::ifstream f(override_file);
      if (!f) throw rtr::ConfigError("cannot read override file: " + override_file);
      std::stringstream ss;
      ss << f.rdbuf();
      auto tmp = rtr::parse_config_text("{\"omega_override\":" + ss.str() + "}");
      cfg.has_override = true;
      cfg.omega_override = tmp.omega_override;
    }
    return rtr::run_command(app.get_subcommands().front()->get_name(), cfg);
  } catch (const rtr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
}
