// qdarwin: experiment runner for redundant information storage in
// decoherence. Subcommands generate partial-information plots, redundancy
// reports and theory overlays as CSV (optionally SVG); `validate` runs the
// built-in acceptance suite.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdarwin/branching.hpp"
#include "qdarwin/haar_ensemble.hpp"
#include "qdarwin/io.hpp"
#include "qdarwin/parallel.hpp"
#include "qdarwin/redundancy.hpp"
#include "qdarwin/theory.hpp"
#include "qdarwin/validate.hpp"

namespace {

using nlohmann::json;
using namespace qdarwin;

constexpr int kExitOk = 0;
constexpr int kExitInvalidConfig = 2;
constexpr int kExitDeskScale = 3;
constexpr int kExitNumerical = 4;
constexpr int kExitValidation = 5;

struct ExperimentConfig {
  std::string command;
  UniverseSpec universe{2, 2, 8, InitialState::hadamard, {}};
  double delta = 0.1;
  int n_states = 200;
  int n_fragments = 32;
  int n_permutations = 64;
  std::uint64_t seed = 424242;
  Units units = Units::nats;
  std::string output = "qdarwin_out";
  bool emit_svg = false;
  unsigned workers = 0;  // 0 = machine parallelism

  // command-specific knobs
  std::string mode = "analytic";      // haar-pip: analytic | mc
  std::string source = "branching";   // spip: branching | haar-analytic
  std::vector<int> n_env_values{16, 32, 64};
  int d_env_single = 0;               // dfactor-stats: one dimension, 0 = table
};

json to_json(const ExperimentConfig& cfg) {
  json j;
  j["command"] = cfg.command;
  j["universe"] = {{"d_sys", cfg.universe.d_sys},
                   {"d_env", cfg.universe.d_env},
                   {"n_env", cfg.universe.n_env},
                   {"initial_state", to_string(cfg.universe.initial_state)}};
  j["delta"] = cfg.delta;
  j["n_states"] = cfg.n_states;
  j["n_fragments"] = cfg.n_fragments;
  j["n_permutations"] = cfg.n_permutations;
  j["seed"] = cfg.seed;
  j["units"] = to_string(cfg.units);
  j["output"] = cfg.output;
  j["emit_svg"] = cfg.emit_svg;
  j["workers"] = cfg.workers;
  if (cfg.command == "haar-pip") {
    j["mode"] = cfg.mode;
  }
  if (cfg.command == "spip") {
    j["source"] = cfg.source;
  }
  if (cfg.command == "spec-r-sweep") {
    j["n_env_values"] = cfg.n_env_values;
  }
  if (cfg.command == "dfactor-stats") {
    j["d_env_single"] = cfg.d_env_single;
  }
  return j;
}

void load_config_file(const std::string& path, ExperimentConfig& cfg) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot read config file '" + path + "'");
  }
  json j = json::parse(in);
  if (j.contains("command")) cfg.command = j["command"].get<std::string>();
  if (j.contains("universe")) {
    const json& u = j["universe"];
    if (u.contains("d_sys")) cfg.universe.d_sys = u["d_sys"].get<int>();
    if (u.contains("d_env")) cfg.universe.d_env = u["d_env"].get<int>();
    if (u.contains("n_env")) cfg.universe.n_env = u["n_env"].get<int>();
    if (u.contains("initial_state")) {
      cfg.universe.initial_state = initial_state_from_string(u["initial_state"].get<std::string>());
    }
  }
  if (j.contains("delta")) cfg.delta = j["delta"].get<double>();
  if (j.contains("n_states")) cfg.n_states = j["n_states"].get<int>();
  if (j.contains("n_fragments")) cfg.n_fragments = j["n_fragments"].get<int>();
  if (j.contains("n_permutations")) cfg.n_permutations = j["n_permutations"].get<int>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("units")) cfg.units = units_from_string(j["units"].get<std::string>());
  if (j.contains("output")) cfg.output = j["output"].get<std::string>();
  if (j.contains("emit_svg")) cfg.emit_svg = j["emit_svg"].get<bool>();
  if (j.contains("workers")) cfg.workers = j["workers"].get<unsigned>();
  if (j.contains("mode")) cfg.mode = j["mode"].get<std::string>();
  if (j.contains("source")) cfg.source = j["source"].get<std::string>();
  if (j.contains("n_env_values")) cfg.n_env_values = j["n_env_values"].get<std::vector<int>>();
  if (j.contains("d_env_single")) cfg.d_env_single = j["d_env_single"].get<int>();
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.n_states < 1 || cfg.n_fragments < 1 || cfg.n_permutations < 1) {
    throw std::invalid_argument("all counts must be >= 1");
  }
  bool needs_delta = cfg.command == "redundancy" || cfg.command == "spec-r-sweep";
  if (needs_delta && (cfg.delta <= 0.0 || cfg.delta >= 1.0)) {
    throw std::invalid_argument("delta must be in (0, 1)");
  }
}

void write_effective_config(const ExperimentConfig& cfg) {
  write_file(cfg.output + "_config.json", to_json(cfg).dump(2) + "\n");
}

double decohered_h0(const UniverseSpec& spec) {
  return entropy_of_spectrum(decohered_spectrum(amplitudes_for(spec)));
}

int cmd_haar_pip(const ExperimentConfig& cfg) {
  Pip pip;
  if (cfg.mode == "analytic") {
    pip = haar_pip_analytic(cfg.universe);
  } else if (cfg.mode == "mc") {
    pip = haar_pip_montecarlo(cfg.universe, cfg.n_states, RngStream(cfg.seed, 1),
                              cfg.workers);
  } else {
    throw std::invalid_argument("haar-pip mode must be 'analytic' or 'mc'");
  }
  write_file(cfg.output + ".csv", pip_csv(pip, cfg.units));
  if (cfg.emit_svg) {
    SvgOptions opt;
    opt.title = "Uniform-ensemble PIP (" + cfg.mode + ")";
    opt.units = cfg.units;
    write_file(cfg.output + ".svg", pip_svg(pip, opt));
  }
  write_effective_config(cfg);
  std::cout << "haar-pip: N=" << pip.n_env << ", H_S=" << present(pip.h_sys, cfg.units)
            << " " << to_string(cfg.units) << ", wrote " << cfg.output << ".csv\n";
  return kExitOk;
}

int cmd_branch_pip(const ExperimentConfig& cfg) {
  Pip pip = exact_pip(cfg.universe, cfg.n_states, cfg.n_fragments, RngStream(cfg.seed, 2),
                      cfg.workers);
  write_file(cfg.output + ".csv", pip_csv(pip, cfg.units));
  if (cfg.emit_svg) {
    SvgOptions opt;
    opt.title = "Branching-ensemble PIP";
    opt.units = cfg.units;
    write_file(cfg.output + ".svg", pip_svg(pip, opt));
  }
  write_effective_config(cfg);
  std::cout << "branch-pip: N=" << pip.n_env << ", H_S=" << present(pip.h_sys, cfg.units)
            << " " << to_string(cfg.units) << ", wrote " << cfg.output << ".csv\n";
  return kExitOk;
}

int cmd_spip(const ExperimentConfig& cfg) {
  Pip pip;
  if (cfg.source == "branching") {
    pip = exact_pip(cfg.universe, cfg.n_states, cfg.n_fragments, RngStream(cfg.seed, 2),
                    cfg.workers);
  } else if (cfg.source == "haar-analytic") {
    pip = haar_pip_analytic(cfg.universe);
  } else {
    throw std::invalid_argument("spip source must be 'branching' or 'haar-analytic'");
  }
  ScaledPip spip = scaled_pip(pip);
  write_file(cfg.output + ".csv", scaled_pip_csv(spip));
  if (cfg.emit_svg) {
    write_file(cfg.output + ".svg",
               scaled_pip_svg(spip, "Scaled PIP (" + cfg.source + ")", true, cfg.delta));
  }
  write_effective_config(cfg);
  std::cout << "spip: N=" << pip.n_env << ", wrote " << cfg.output << ".csv\n";
  return kExitOk;
}

int cmd_redundancy(const ExperimentConfig& cfg) {
  RedundancyReport report =
      ensemble_redundancy(cfg.universe, cfg.delta, cfg.n_states, cfg.n_permutations,
                          RngStream(cfg.seed, 3), cfg.workers);
  write_file(cfg.output + ".csv", redundancy_csv({report}));
  if (cfg.emit_svg) {
    Pip pip = exact_pip(cfg.universe, cfg.n_states, cfg.n_fragments, RngStream(cfg.seed, 2),
                        cfg.workers);
    SvgOptions opt;
    opt.title = "PIP with sufficiency threshold";
    opt.units = cfg.units;
    opt.show_threshold = true;
    opt.threshold_nats = report.threshold_nats;
    write_file(cfg.output + ".svg", pip_svg(pip, opt));
  }
  write_effective_config(cfg);
  std::cout << "redundancy: N_delta=" << report.n_delta_mean
            << ", R_delta=" << std::max(report.r_delta, 0.0)
            << ", m_delta=" << report.m_delta_mean << ", r=" << report.specific_r
            << ", wrote " << cfg.output << ".csv\n";
  return kExitOk;
}

int cmd_spec_r_sweep(const ExperimentConfig& cfg) {
  SpecificRedundancySweep sweep = specific_redundancy_sweep(
      cfg.universe, cfg.n_env_values, cfg.delta, cfg.n_states, cfg.n_permutations,
      RngStream(cfg.seed, 4), cfg.workers);
  write_file(cfg.output + ".csv", sweep_csv(sweep));
  json summary = {{"slope", sweep.slope},
                  {"intercept", sweep.intercept},
                  {"r_squared", sweep.r_squared}};
  write_file(cfg.output + "_summary.json", summary.dump(2) + "\n");
  write_effective_config(cfg);
  std::cout << "spec-r-sweep: slope=" << sweep.slope << ", R^2=" << sweep.r_squared
            << ", wrote " << cfg.output << ".csv\n";
  return kExitOk;
}

int cmd_theory_overlay(const ExperimentConfig& cfg) {
  Pip pip = exact_pip(cfg.universe, cfg.n_states, cfg.n_fragments, RngStream(cfg.seed, 2),
                      cfg.workers);
  ApproxPip theory = approx_pip(cfg.universe, decohered_h0(cfg.universe));
  write_file(cfg.output + ".csv", overlay_csv(pip, theory, cfg.units));
  if (cfg.emit_svg) {
    SvgOptions opt;
    opt.title = "Exact PIP vs closed form";
    opt.units = cfg.units;
    opt.theory = &theory;
    write_file(cfg.output + ".svg", pip_svg(pip, opt));
  }
  write_effective_config(cfg);
  std::cout << "theory-overlay: N=" << pip.n_env << ", wrote " << cfg.output << ".csv\n";
  return kExitOk;
}

int cmd_dfactor_stats(const ExperimentConfig& cfg) {
  std::vector<DFactorStats> stats;
  if (cfg.d_env_single >= 2) {
    stats.push_back(d_factor_stats(cfg.d_env_single));
  } else {
    for (int d : {2, 3, 4, 5, 6, 8}) {
      stats.push_back(d_factor_stats(d));
    }
  }
  write_file(cfg.output + ".csv", dfactor_csv(stats));
  write_effective_config(cfg);
  for (const auto& s : stats) {
    std::cout << "D_E=" << s.d_env << ": mean_d=" << s.mean_d << ", std_d=" << s.std_d
              << "\n";
  }
  std::cout << "dfactor-stats: wrote " << cfg.output << ".csv\n";
  return kExitOk;
}

int cmd_validate(const ExperimentConfig& cfg) {
  auto results = run_acceptance(cfg.seed, cfg.workers);
  std::cout << format_acceptance(results);
  return all_passed(results) ? kExitOk : kExitValidation;
}

void add_common_options(CLI::App* sub, ExperimentConfig& cfg, std::string& config_path,
                        std::string& initial_state) {
  sub->add_option("--config", config_path, "JSON config file; flags override its values");
  sub->add_option("--d-sys", cfg.universe.d_sys, "system dimension D_S");
  sub->add_option("--d-env", cfg.universe.d_env, "subenvironment dimension D_E");
  sub->add_option("--n-env", cfg.universe.n_env, "number of subenvironments");
  sub->add_option("--initial-state", initial_state,
                  "system initial state: hadamard | thermal | ghz");
  sub->add_option("--delta", cfg.delta, "information deficit in (0,1)");
  sub->add_option("--n-states", cfg.n_states, "ensemble size (or MC samples)");
  sub->add_option("--n-fragments", cfg.n_fragments, "fragments sampled per (state, m)");
  sub->add_option("--n-permutations", cfg.n_permutations, "permutations for greedy packing");
  sub->add_option("--seed", cfg.seed, "RNG seed (env QDARWIN_SEED overrides the default)");
  sub->add_option("--units", [&cfg](const std::vector<std::string>& v) {
        cfg.units = units_from_string(v.front());
        return true;
      }, "output units: nats | bits")->expected(1);
  sub->add_option("--output", cfg.output, "output path prefix");
  sub->add_flag("--emit-svg", cfg.emit_svg, "also write an SVG plot");
  sub->add_option("--workers", cfg.workers, "worker threads (0 = machine parallelism)");
}

// Flags override config-file values: re-apply any flag the user passed
// after the file is loaded.
void apply_overrides(CLI::App* sub, ExperimentConfig& cfg, const ExperimentConfig& flag_values,
                     const std::string& initial_state) {
  if (sub->count("--d-sys")) cfg.universe.d_sys = flag_values.universe.d_sys;
  if (sub->count("--d-env")) cfg.universe.d_env = flag_values.universe.d_env;
  if (sub->count("--n-env")) cfg.universe.n_env = flag_values.universe.n_env;
  if (sub->count("--initial-state")) {
    cfg.universe.initial_state = initial_state_from_string(initial_state);
  }
  if (sub->count("--delta")) cfg.delta = flag_values.delta;
  if (sub->count("--n-states")) cfg.n_states = flag_values.n_states;
  if (sub->count("--n-fragments")) cfg.n_fragments = flag_values.n_fragments;
  if (sub->count("--n-permutations")) cfg.n_permutations = flag_values.n_permutations;
  if (sub->count("--seed")) cfg.seed = flag_values.seed;
  if (sub->count("--units")) cfg.units = flag_values.units;
  if (sub->count("--output")) cfg.output = flag_values.output;
  if (sub->count("--emit-svg")) cfg.emit_svg = flag_values.emit_svg;
  if (sub->count("--workers")) cfg.workers = flag_values.workers;
  if (sub->get_option_no_throw("--mode") && sub->count("--mode")) {
    cfg.mode = flag_values.mode;
  }
  if (sub->get_option_no_throw("--source") && sub->count("--source")) {
    cfg.source = flag_values.source;
  }
  if (sub->get_option_no_throw("--n-env-values") && sub->count("--n-env-values")) {
    cfg.n_env_values = flag_values.n_env_values;
  }
  if (sub->get_option_no_throw("--single-d-env") && sub->count("--single-d-env")) {
    cfg.d_env_single = flag_values.d_env_single;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum Darwinism simulation toolkit"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  if (const char* env_seed = std::getenv("QDARWIN_SEED")) {
    cfg.seed = std::strtoull(env_seed, nullptr, 10);
  }
  std::string config_path;
  std::string initial_state = "hadamard";

  struct SubDef {
    const char* name;
    const char* help;
    int (*run)(const ExperimentConfig&);
  };
  const SubDef defs[] = {
      {"haar-pip", "uniform-ensemble PIP (analytic or Monte Carlo)", cmd_haar_pip},
      {"branch-pip", "exact branching-ensemble PIP", cmd_branch_pip},
      {"spip", "scaled PIP on fractional axes", cmd_spip},
      {"redundancy", "ensemble redundancy report (N_delta, R_delta, ...)", cmd_redundancy},
      {"spec-r-sweep", "R_delta vs N_env sweep with linear fit", cmd_spec_r_sweep},
      {"theory-overlay", "exact PIP against the closed-form curve", cmd_theory_overlay},
      {"dfactor-stats", "decoherence-factor statistics table", cmd_dfactor_stats},
      {"validate", "run the acceptance suite", cmd_validate},
  };

  std::vector<CLI::App*> subs;
  for (const SubDef& def : defs) {
    CLI::App* sub = app.add_subcommand(def.name, def.help);
    add_common_options(sub, cfg, config_path, initial_state);
    if (std::string(def.name) == "haar-pip") {
      sub->add_option("--mode", cfg.mode, "analytic | mc");
    }
    if (std::string(def.name) == "spip") {
      sub->add_option("--source", cfg.source, "branching | haar-analytic");
    }
    if (std::string(def.name) == "spec-r-sweep") {
      sub->add_option("--n-env-values", cfg.n_env_values, "sweep points for n_env");
    }
    if (std::string(def.name) == "dfactor-stats") {
      sub->add_option("--single-d-env", cfg.d_env_single, "emit one dimension only");
    }
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInvalidConfig;
  }

  try {
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (!subs[i]->parsed()) {
        continue;
      }
      ExperimentConfig flag_values = cfg;  // values as parsed from flags
      ExperimentConfig effective;
      effective.seed = cfg.seed;  // environment default carries over
      effective.command = defs[i].name;
      effective.mode = cfg.mode;
      effective.source = cfg.source;
      effective.n_env_values = cfg.n_env_values;
      effective.d_env_single = cfg.d_env_single;
      if (subs[i]->count("--config")) {
        load_config_file(config_path, effective);
      }
      apply_overrides(subs[i], effective, flag_values, initial_state);
      validate_config(effective);
      if (effective.command != "validate" && effective.command != "dfactor-stats") {
        validate_universe_spec(effective.universe);
      }
      return defs[i].run(effective);
    }
  } catch (const DeskScaleError& e) {
    std::cerr << "desk-scale guard: " << e.what() << "\n";
    return kExitDeskScale;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidConfig;
  }
  return kExitInvalidConfig;
}
