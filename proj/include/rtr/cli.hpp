#ifndef RTR_CLI_HPP
#define RTR_CLI_HPP

#include <string>

#include "rtr/wkb.hpp"

namespace rtr {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// hard cap on the 2g+n budget; entries beyond this are out of reach for the
// exact engine in reasonable time
inline constexpr int kBudgetCap = 9;

struct RunConfig {
  CurveName curve = CurveName::Weber;
  CurveParams params;
  RunConfig() {
    params.s = 2;
    params.mass = 3;
    params.mu = Rational(1) / 3;
    params.nu_plus = Rational(3) / 5;
  }
  int budget = 7;       // max 2g+n for table dumps and the invariant sweep
  int voros_order = 5;  // K for the coefficient comparisons
  bool has_override = false;
  LaurentPolyInt omega_override;
  std::string out_dir = "out";
  int jobs = 1;
};

CurveName parse_curve(const std::string& s);

// config JSON: {"curve": ..., "s": "p/q", "mass": ..., "mu": ..., "nu_plus":
// ..., "budget": N, "voros_order": K, "omega_override": {"n": c, ...},
// "out": dir, "jobs": N}
RunConfig parse_config_text(const std::string& json_text);

// comma-separated overrides, e.g. "s=2,mass=3,mu=1/3,nu_plus=3/5"
void apply_param_string(RunConfig& cfg, const std::string& kv);

void validate_config(const RunConfig& cfg);

// commands: bps, omega, free-energy, voros, verify.
// returns 0 when every check passes, 1 when an exact identity fails
// (the report names the failing check), 2 on configuration errors.
int run_command(const std::string& command, const RunConfig& cfg);

}  // namespace rtr

#endif
