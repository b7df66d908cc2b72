/*
 * Copyright 2026 The focdes Authors. All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line front end over the focdes C interface.

#include <csignal>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "focdes/focdes.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string config_path;
  std::string out_dir = "results";
  std::uint64_t seed = 0;
  std::vector<std::string> overrides;
};

// Maps a library status onto the tool's exit codes.
int exit_for(focdes_status st) {
  switch (st) {
    case FOCDES_OK:
      return kExitOk;
    case FOCDES_ERR_INVALID_ARGUMENT:
      return kExitUsage;
    default:
      return kExitRuntime;
  }
}

int report(focdes_status st, const char* what) {
  std::cerr << "focdes: " << what << ": " << focdes_last_error() << "\n";
  return exit_for(st);
}

void on_sigint(int) { focdes_cancel(); }

bool write_file(const fs::path& path, const std::string& content) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  return static_cast<bool>(out);
}

void write_manifest(const Common& c, const std::string& subcommand, const std::string& status, json extra) {
  json m{{"version", focdes_version()},
         {"subcommand", subcommand},
         {"config_path", c.config_path.empty() ? json(nullptr) : json(c.config_path)},
         {"output_dir", c.out_dir},
         {"overrides", c.overrides},
         {"seed", c.seed},
         {"status", status}};
  for (auto it = extra.begin(); it != extra.end(); ++it) m[it.key()] = it.value();
  write_file(fs::path(c.out_dir) / "manifest.json", m.dump(2) + "\n");
}

class Handles {
 public:
  ~Handles() {
    focdes_config_free(config);
    focdes_params_free(params);
  }
  focdes_config* config = nullptr;
  focdes_params* params = nullptr;
};

focdes_status load_config(const Common& c, focdes_config** out) {
  std::vector<const char*> ov;
  for (const auto& o : c.overrides) ov.push_back(o.c_str());
  return focdes_config_load(c.config_path.empty() ? nullptr : c.config_path.c_str(), ov.data(), ov.size(), out);
}

void add_common(CLI::App* sub, Common& c, bool with_seed) {
  sub->add_option("--config", c.config_path, "JSON configuration file")->check(CLI::ExistingFile);
  sub->add_option("--out", c.out_dir, "Output directory")->capture_default_str();
  sub->add_option("--set", c.overrides, "Override a config field: key.path=value (repeatable)")->take_all();
  if (with_seed) sub->add_option("--seed", c.seed, "Base seed")->capture_default_str();
}

int cmd_simulate(const Common& c, const std::string& params_path) {
  Handles h;
  if (auto st = load_config(c, &h.config)) return report(st, "config");
  if (auto st = focdes_params_load(params_path.c_str(), &h.params)) return report(st, "params");
  focdes_trace* trace = nullptr;
  if (auto st = focdes_simulate(h.config, h.params, &trace)) return report(st, "simulate");
  const fs::path out(c.out_dir);
  focdes_buffer* summary = nullptr;
  focdes_status st = focdes_trace_write_csv(trace, (out / "trace.csv").string().c_str());
  if (st == FOCDES_OK) st = focdes_trace_summary_json(trace, &summary);
  const bool diverged = focdes_trace_diverged(trace) != 0;
  focdes_trace_free(trace);
  if (st != FOCDES_OK) return report(st, "output");
  write_file(out / "summary.json", focdes_buffer_data(summary));
  focdes_buffer_free(summary);
  write_manifest(c, "simulate", diverged ? "diverged" : "complete", {{"params_path", params_path}});
  if (diverged) {
    std::cerr << "focdes: simulation diverged\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int run_study(const Common& c, const std::string& name, const char* family, const char* variant, int runs,
              const focdes_study_options& opts) {
  Handles h;
  if (auto st = load_config(c, &h.config)) return report(st, "config");
  focdes_study_report rep{};
  const focdes_status st =
      focdes_optimize(h.config, family, variant, runs, c.seed, &opts, c.out_dir.c_str(), &rep);
  json extra{{"runs_expected", rep.runs_expected},
             {"runs_completed", rep.runs_completed},
             {"partial", rep.runs_completed < rep.runs_expected},
             {"runs", runs},
             {"pop_size", opts.pop_size},
             {"max_gen", opts.max_gen},
             {"wall_time_recorded", opts.record_wall_time != 0}};
  if (family) extra["family"] = family;
  if (variant) extra["variant"] = variant;
  if (st == FOCDES_OK) {
    write_manifest(c, name, "complete", extra);
    return kExitOk;
  }
  write_manifest(c, name, st == FOCDES_ERR_CANCELLED ? "partial" : "failed", extra);
  return report(st, name.c_str());
}

int cmd_robustness(const Common& c, const std::string& params_path, const std::vector<double>& factors,
                   bool random_load) {
  Handles h;
  if (auto st = load_config(c, &h.config)) return report(st, "config");
  if (auto st = focdes_params_load(params_path.c_str(), &h.params)) return report(st, "params");
  focdes_scenarios* sc = nullptr;
  if (auto st = focdes_robustness(h.config, h.params, factors.data(), factors.size(), random_load ? 1 : 0, c.seed, &sc)) {
    return report(st, "robustness");
  }
  const focdes_status st = focdes_scenarios_write(sc, c.out_dir.c_str());
  json verdicts = json::object();
  for (size_t i = 0; i < focdes_scenarios_count(sc); ++i) {
    verdicts[focdes_scenario_name(sc, i)] = focdes_scenario_verdict(sc, i);
    std::cout << focdes_scenario_name(sc, i) << ": " << focdes_scenario_verdict(sc, i) << "\n";
  }
  focdes_scenarios_free(sc);
  if (st != FOCDES_OK) return report(st, "output");
  write_manifest(c, "robustness", "complete",
                 {{"params_path", params_path}, {"t12_factors", factors}, {"random_load", random_load},
                  {"verdicts", verdicts}});
  return kExitOk;
}

int cmd_compromise(const Common& c, const std::string& fronts_dir, const std::string& criterion) {
  focdes_buffer* buf = nullptr;
  if (auto st = focdes_compromise(fronts_dir.c_str(), criterion.empty() ? nullptr : criterion.c_str(), &buf)) {
    return report(st, "compromise");
  }
  write_file(fs::path(c.out_dir) / "compromise.json", focdes_buffer_data(buf));
  focdes_buffer_free(buf);
  write_manifest(c, "compromise", "complete",
                 {{"fronts_dir", fronts_dir}, {"criterion", criterion.empty() ? json("all") : json(criterion)}});
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-objective fractional-order load-frequency controller design"};
  app.set_version_flag("--version", std::string(focdes_version()));
  app.require_subcommand(1);

  Common common;
  std::string params_path;
  std::string family;
  std::string variant;
  std::string criterion;
  std::string fronts_dir;
  int runs = 30;
  std::vector<double> factors{1.0, 2.0, 3.0};
  bool random_load = false;
  bool no_wall_time = false;
  focdes_study_options opts;
  focdes_study_options_init(&opts);

  const std::vector<std::string> families{"slow", "fast", "pid"};
  const std::vector<std::string> variants{"uniform", "logistic", "henon"};
  const std::vector<std::string> criteria{"min-hypervolume", "max-diversity", "max-spread", "min-spacing"};

  auto* sim = app.add_subcommand("simulate", "Simulate the closed loop for a controller pair");
  add_common(sim, common, false);
  sim->add_option("--params", params_path, "Controller parameter JSON")->required()->check(CLI::ExistingFile);

  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--runs", runs, "Independent runs per case")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--pop", opts.pop_size, "Population size (default 15 x n_var)")->check(CLI::NonNegativeNumber);
    sub->add_option("--gens", opts.max_gen, "Generation budget (default 200 x n_var)")->check(CLI::NonNegativeNumber);
    sub->add_option("--threads", opts.threads, "Parallel evaluations, 0 = auto (env FOCDES_THREADS)");
    sub->add_flag("--no-wall-time", no_wall_time, "Record zero seconds so outputs are byte-reproducible");
  };

  auto* opt = app.add_subcommand("optimize", "Optimize one controller family with one optimizer variant");
  add_common(opt, common, true);
  opt->add_option("--family", family, "Controller family")->required()->check(CLI::IsMember(families));
  opt->add_option("--variant", variant, "Optimizer variant")->required()->check(CLI::IsMember(variants));
  add_budget(opt);

  auto* grid = app.add_subcommand("grid", "Run every family x variant case");
  add_common(grid, common, true);
  add_budget(grid);

  auto* rob = app.add_subcommand("robustness", "Sweep the tie-line coefficient and optional random loads");
  add_common(rob, common, true);
  rob->add_option("--params", params_path, "Controller parameter JSON")->required()->check(CLI::ExistingFile);
  rob->add_option("--t12-factors", factors, "Comma-separated T12 multipliers")->delimiter(',')->capture_default_str();
  rob->add_flag("--random-load", random_load, "Add a piecewise-random load scenario seeded by --seed");

  auto* comp = app.add_subcommand("compromise", "Select best fronts and their fuzzy best-compromise members");
  add_common(comp, common, false);
  comp->add_option("--fronts", fronts_dir, "Directory of front CSV files")->required();
  comp->add_option("--criterion", criterion, "Front selection criterion (default: all)")->check(CLI::IsMember(criteria));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  opts.record_wall_time = no_wall_time ? 0 : 1;
  std::signal(SIGINT, on_sigint);

  if (sim->parsed()) return cmd_simulate(common, params_path);
  if (opt->parsed()) return run_study(common, "optimize", family.c_str(), variant.c_str(), runs, opts);
  if (grid->parsed()) return run_study(common, "grid", nullptr, nullptr, runs, opts);
  if (rob->parsed()) return cmd_robustness(common, params_path, factors, random_load);
  if (comp->parsed()) return cmd_compromise(common, fronts_dir, criterion);
  return kExitUsage;
}
