#include "rtr/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "rtr/energies.hpp"
#include "rtr/recursion.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace rtr {

namespace {

std::string rstr(const Rational& q) { return q.str(); }

json params_json(const RunConfig& cfg) {
  json p;
  p["s"] = rstr(cfg.params.s);
  p["mass"] = rstr(cfg.params.mass);
  p["mu"] = rstr(cfg.params.mu);
  p["nu_plus"] = rstr(cfg.params.nu_plus);
  return p;
}

json omega_json(const LaurentPolyInt& w) {
  json o = json::object();
  for (auto& [n, c] : w.coef) o[std::to_string(n)] = c;
  return o;
}

json header_json(const std::string& command, const RunConfig& cfg) {
  json r;
  r["command"] = command;
  r["curve"] = curve_name_str(cfg.curve);
  r["params"] = params_json(cfg);
  r["budget"] = cfg.budget;
  r["voros_order"] = cfg.voros_order;
  if (cfg.has_override) r["omega_override"] = omega_json(cfg.omega_override);
  // conventions fixed once for the whole artifact: the hbar-linear correction
  // to the central charge is stored with the 2*pi*i factor divided out, and
  // the regularized path runs between the two points over x = infinity with
  // the minus-labeled end as the lower limit.
  r["conventions"] = {
      {"central_charge_correction", "stored divided by 2*pi*i"},
      {"path_orientation", "from the minus-labeled pole to the plus-labeled pole"},
  };
  return r;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << text;
}

struct Reporter {
  json report;
  json checks = json::array();
  fs::path dir;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  bool failed = false;
  std::string first_failure;

  Reporter(const std::string& command, const RunConfig& cfg) {
    report = header_json(command, cfg);
    dir = cfg.out_dir;
    fs::create_directories(dir);
  }

  void record(const std::string& name, bool ok, const json& detail = json::object()) {
    json c;
    c["check"] = name;
    c["ok"] = ok;
    if (!detail.empty()) c["detail"] = detail;
    checks.push_back(c);
    if (!ok && !failed) {
      failed = true;
      first_failure = name;
    }
  }

  int finish() {
    report["checks"] = checks;
    report["ok"] = !failed;
    if (failed) report["first_failure"] = first_failure;
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    write_file(dir / "report.json", report.dump(2) + "\n");
    // kept out of report.json so identical configs give byte-identical reports
    write_file(dir / "timing.json", json{{"total_ms", ms}}.dump(2) + "\n");
    if (failed) std::cerr << "FAIL: " << first_failure << "\n";
    return failed ? 1 : 0;
  }
};

RefinedBPSStructure structure_for(const RunConfig& cfg, const CurveModel& c) {
  auto b = bps_structure(c);
  if (cfg.has_override) b = with_replaced_omega(b, cfg.omega_override);
  return b;
}

int cmd_bps(const RunConfig& cfg) {
  auto c = build_curve(cfg.curve, cfg.params);
  Reporter rep("bps", cfg);
  auto b = structure_for(cfg, c);
  json classes = json::array();
  for (auto& cl : b.active) {
    json e;
    e["label"] = cl.label;
    e["central_charge_over_2_pi_i"] = rstr(cl.zhat);
    e["hbar_correction_over_2_pi_i"] = rstr(cl.zcheck);
    e["pole_weight"] = rstr(cl.nu);
    e["pairing_with_path"] = cl.pairing;
    e["invariant"] = omega_json(cl.omega);
    classes.push_back(e);
  }
  rep.report["rank"] = b.rank;
  rep.report["deformation_Q"] = rstr(b.Q());
  rep.report["classes"] = classes;
  rep.record("structure-well-formed", !b.active.empty() || b.rank == 0);
  return rep.finish();
}

int cmd_omega(const RunConfig& cfg) {
  auto c = build_curve(cfg.curve, cfg.params);
  Reporter rep("omega", cfg);
  OmegaTable t(c);
  fs::path odir = rep.dir / "omega_table";
  fs::create_directories(odir);
  write_file(odir / "FORMAT.txt",
             "One file per differential, named omega_<2g>_<n>.txt.\n"
             "Each file holds the body of the differential: the rational\n"
             "function f(z1,..,zn) with omega = f dz1...dzn, written as a\n"
             "polynomial with exact rational coefficients divided by a product\n"
             "of the irreducible factors listed in parentheses. Variables are\n"
             "named z1..zn.\n");
  json entries = json::array();
  for (int g2 = 0; g2 <= cfg.budget - 1; ++g2)
    for (int n = 1; g2 + n <= cfg.budget && n <= (g2 == 0 ? 4 : 3); ++n) {
      if (g2 + n < 3) continue;
      const FactoredRational& body = t.omega(g2, n);
      std::string fname = "omega_" + std::to_string(g2) + "_" + std::to_string(n) + ".txt";
      write_file(odir / fname, body.str() + "\n");
      entries.push_back({{"g2", g2}, {"n", n}, {"file", "omega_table/" + fname},
                         {"zero", body.is_zero()}});
    }
  rep.report["entries"] = entries;
  rep.record("table-computed", true);
  return rep.finish();
}

int cmd_free_energy(const RunConfig& cfg) {
  auto c = build_curve(cfg.curve, cfg.params);
  Reporter rep("free-energy", cfg);
  OmegaTable t(c);
  bool massive = cfg.curve == CurveName::Weber || cfg.curve == CurveName::Whittaker;
  json rows = json::array();
  std::string csv = "g2,recursion,recursion_log,closed_form,closed_log,match\n";
  for (int g2 = 3; g2 + 1 <= cfg.budget; ++g2) {
    auto rec = free_energy_stable(t, g2);
    FreeEnergyRecord cf;
    cf.value = 0;
    cf.log_coeff = 0;
    if (massive) cf = closed_form_F(structure_for(cfg, c), g2);
    bool ok = rec.value == cf.value && rec.log_coeff == cf.log_coeff;
    rows.push_back({{"g2", g2},
                    {"recursion", rstr(rec.value)},
                    {"recursion_log", rstr(rec.log_coeff)},
                    {"closed_form", rstr(cf.value)},
                    {"closed_log", rstr(cf.log_coeff)},
                    {"match", ok}});
    csv += std::to_string(g2) + "," + rstr(rec.value) + "," + rstr(rec.log_coeff) + "," +
           rstr(cf.value) + "," + rstr(cf.log_coeff) + "," + (ok ? "1" : "0") + "\n";
    rep.record("free-energy-closed-form g2=" + std::to_string(g2), ok);
  }
  rep.report["free_energies"] = rows;
  write_file(rep.dir / "free_energies.csv", csv);
  return rep.finish();
}

int cmd_voros(const RunConfig& cfg) {
  auto c = build_curve(cfg.curve, cfg.params);
  Reporter rep("voros", cfg);
  if (cfg.curve != CurveName::Weber && cfg.curve != CurveName::Whittaker)
    throw ConfigError("voros coefficients need a curve with a mass parameter");
  int K = cfg.voros_order;
  auto b = structure_for(cfg, c);
  auto odd = t_odd(riccati(quantum_curve(c), c, K + 1), c);
  auto path = voros_path(odd, c, K);
  json rows = json::array();
  std::string csv = "k,wkb_path,charge_formula,match\n";
  for (int k = 1; k <= K; ++k) {
    Rational vb = closed_form_Vk(b, k);
    bool ok = path[size_t(k - 1)] == vb;
    rows.push_back({{"k", k},
                    {"wkb_path", rstr(path[size_t(k - 1)])},
                    {"charge_formula", rstr(vb)},
                    {"match", ok}});
    csv += std::to_string(k) + "," + rstr(path[size_t(k - 1)]) + "," + rstr(vb) + "," +
           (ok ? "1" : "0") + "\n";
    rep.record("voros-two-route k=" + std::to_string(k), ok);
  }
  {
    OmegaTable t(c);
    rep.record("voros-free-energy-route", difference_relation_check(t, K));
  }
  auto vc = voros_cycle(odd, c);
  auto cv = cycle_voros(bps_structure(c), c);
  rep.report["cycle"] = {
      {"residue_route_pi_over_hbar", rstr(vc.hbar_m1_pi)},
      {"residue_route_pi_const", rstr(vc.hbar0_pi)},
      {"charge_route_pi_over_hbar", rstr(cv.hbar_m1_pi)},
      {"charge_route_plain_const", rstr(cv.hbar0_plain)},
      {"charge_route_pi_const", rstr(cv.hbar0_pi)},
  };
  rep.record("cycle-two-term",
             vc.hbar_m1_pi == cv.hbar_m1_pi && vc.hbar0_pi == cv.hbar0_pi + 2 * cv.hbar0_plain);
  rep.report["voros"] = rows;
  write_file(rep.dir / "voros.csv", csv);
  return rep.finish();
}

int cmd_verify(const RunConfig& cfg) {
  auto c = build_curve(cfg.curve, cfg.params);
  Reporter rep("verify", cfg);
  OmegaTable t(c);
  bool massive = cfg.curve == CurveName::Weber || cfg.curve == CurveName::Whittaker;

  // cheap per-entry invariants first
  for (int g2 = 0; g2 <= cfg.budget - 1 && !rep.failed; ++g2)
    for (int n = 1; g2 + n <= cfg.budget && n <= (g2 == 0 ? 4 : 3) && !rep.failed; ++n) {
      if (g2 + n < 3) continue;
      std::string tag = " (" + std::to_string(g2) + "," + std::to_string(n) + ")";
      const FactoredRational& body = t.omega(g2, n);
      rep.record("symmetry" + tag, symmetry_ok(body, n));
      if (rep.failed) break;
      rep.record("pole-locus" + tag, pole_locus_ok(c, body));
      if (rep.failed) break;
      rep.record("residue-free" + tag, residue_free_ok(c, body, true));
    }

  if (!rep.failed) rep.record("loop-equation (2,2)", loop_eq_check(t, 2, 2));
  if (!rep.failed) rep.record("loop-equation (2,3)", loop_eq_check(t, 2, 3));
  if (!rep.failed) rep.record("dilaton (2,1)", dilaton_check(t, 2, 1));
  if (!rep.failed) rep.record("dilaton (2,2)", dilaton_check(t, 2, 2));
  if (!rep.failed && !massive) {
    rep.record("scaling (2,1)", scaling_check_airy_dbes(t, 2, 1, rat(3)));
    if (!rep.failed) rep.record("scaling (1,2)", scaling_check_airy_dbes(t, 1, 2, rat(5, 2)));
  }
  if (!rep.failed && massive) {
    rep.record("variational (3)", variational_check(t, 3));
    if (!rep.failed) rep.record("variational (4)", variational_check(t, 4));
  }

  // free energies against the charge-data closed form
  json rows = json::array();
  for (int g2 = 3; g2 + 1 <= cfg.budget && !rep.failed; ++g2) {
    auto rec = free_energy_stable(t, g2);
    FreeEnergyRecord cf;
    cf.value = 0;
    cf.log_coeff = 0;
    if (massive) cf = closed_form_F(structure_for(cfg, c), g2);
    bool ok = rec.value == cf.value && rec.log_coeff == cf.log_coeff;
    rows.push_back({{"g2", g2}, {"recursion", rstr(rec.value)}, {"closed_form", rstr(cf.value)}});
    rep.record("free-energy-closed-form g2=" + std::to_string(g2), ok);
  }
  rep.report["free_energies"] = rows;

  // the expensive series identities last
  if (!rep.failed && massive) {
    int K = std::min(cfg.voros_order, cfg.budget - 2);
    OmegaTable tv(c);
    rep.record("voros-free-energy-route", difference_relation_check(tv, K));
    if (!rep.failed) {
      auto b = structure_for(cfg, c);
      auto odd = t_odd(riccati(quantum_curve(c), c, K + 1), c);
      auto path = voros_path(odd, c, K);
      bool ok = true;
      for (int k = 1; k <= K; ++k) ok = ok && path[size_t(k - 1)] == closed_form_Vk(b, k);
      rep.record("voros-charge-route", ok);
    }
    if (!rep.failed) rep.record("contiguity", contiguity_check(c, std::min(cfg.voros_order, 5)));
    if (!rep.failed) {
      OmegaTable tf(c);
      rep.record("mass-shift-difference", f_difference_equation_check(tf, cfg.budget - 3));
    }
  }
  return rep.finish();
}

}  // namespace

CurveName parse_curve(const std::string& s) {
  if (s == "weber") return CurveName::Weber;
  if (s == "whittaker") return CurveName::Whittaker;
  if (s == "airy") return CurveName::Airy;
  if (s == "dbes" || s == "degenerate-bessel") return CurveName::DegenerateBessel;
  throw ConfigError("unknown curve: " + s);
}

RunConfig parse_config_text(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad config JSON: ") + e.what());
  }
  RunConfig cfg;
  try {
    if (j.contains("curve")) cfg.curve = parse_curve(j["curve"].get<std::string>());
    if (j.contains("s")) cfg.params.s = parse_rational(j["s"].get<std::string>());
    if (j.contains("mass")) cfg.params.mass = parse_rational(j["mass"].get<std::string>());
    if (j.contains("mu")) cfg.params.mu = parse_rational(j["mu"].get<std::string>());
    if (j.contains("nu_plus")) cfg.params.nu_plus = parse_rational(j["nu_plus"].get<std::string>());
    if (j.contains("budget")) cfg.budget = j["budget"].get<int>();
    if (j.contains("voros_order")) cfg.voros_order = j["voros_order"].get<int>();
    if (j.contains("out")) cfg.out_dir = j["out"].get<std::string>();
    if (j.contains("jobs")) cfg.jobs = j["jobs"].get<int>();
    if (j.contains("omega_override")) {
      cfg.has_override = true;
      for (auto& [k, v] : j["omega_override"].items())
        cfg.omega_override.coef[std::stoi(k)] = v.get<long>();
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad config field: ") + e.what());
  }
  return cfg;
}

void apply_param_string(RunConfig& cfg, const std::string& kv) {
  auto parse_rational = [](const std::string& v) {
    try {
      return rtr::parse_rational(v);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  };
  size_t pos = 0;
  while (pos < kv.size()) {
    size_t comma = kv.find(',', pos);
    std::string item = kv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    pos = comma == std::string::npos ? kv.size() : comma + 1;
    size_t eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key=value in --params: " + item);
    std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    if (key == "s")
      cfg.params.s = parse_rational(val);
    else if (key == "mass" || key == "t" || key == "m")
      cfg.params.mass = parse_rational(val);
    else if (key == "mu")
      cfg.params.mu = parse_rational(val);
    else if (key == "nu_plus")
      cfg.params.nu_plus = parse_rational(val);
    else
      throw ConfigError("unknown parameter: " + key);
  }
}

void validate_config(const RunConfig& cfg) {
  if (cfg.params.s == 0) throw ConfigError("s must be nonzero");
  bool massive = cfg.curve == CurveName::Weber || cfg.curve == CurveName::Whittaker;
  if (massive && cfg.params.mass == 0) throw ConfigError("mass must be nonzero");
  if (cfg.budget < 3 || cfg.budget > kBudgetCap)
    throw ConfigError("budget must be between 3 and " + std::to_string(kBudgetCap));
  if (cfg.voros_order < 1) throw ConfigError("voros order must be positive");
  if (cfg.jobs < 1) throw ConfigError("jobs must be positive");
  if (cfg.params.nu_plus < -100 || cfg.params.nu_plus > 100)
    throw ConfigError("nu_plus out of range");
}

int run_command(const std::string& command, const RunConfig& cfg) {
  try {
    validate_config(cfg);
    if (command == "bps") return cmd_bps(cfg);
    if (command == "omega") return cmd_omega(cfg);
    if (command == "free-energy") return cmd_free_energy(cfg);
    if (command == "voros") return cmd_voros(cfg);
    if (command == "verify") return cmd_verify(cfg);
    throw ConfigError("unknown command: " + command);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace rtr
