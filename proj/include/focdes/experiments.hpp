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

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "focdes/fractional.hpp"
#include "focdes/nsga2.hpp"
#include "focdes/pareto.hpp"
#include "focdes/plant.hpp"

namespace focdes::experiments {

using ControllerPair = std::pair<fractional::FopidParams, fractional::FopidParams>;

struct CaseSpec {
  fractional::Family family = fractional::Family::kPid;
  nsga2::StreamKind variant = nsga2::StreamKind::kUniform;
  int runs = 30;
  std::uint64_t base_seed = 0;

  /// Directory-safe label such as "slow-logistic".
  std::string name() const;
  void validate() const;
};

/// The nine family x variant cases in a fixed order (families outer).
std::vector<CaseSpec> full_grid(int runs, std::uint64_t base_seed);

std::size_t genome_length(fractional::Family family);
nsga2::Bounds family_bounds(fractional::Family family);
ControllerPair genome_to_controllers(std::span<const double> genome, fractional::Family family);
std::vector<double> controllers_to_genome(const ControllerPair& params, fractional::Family family);

/// genome -> controllers -> realization -> simulation -> (ITSE, ISDCO).
nsga2::Evaluator make_plant_evaluator(const plant::PlantConfig& plant, fractional::Family family,
                                      const fractional::RealizationOptions& realization = {});

struct RunResult {
  pareto::ParetoFront front;
  pareto::MetricReport metrics;
  double wall_seconds = 0.0;
};

struct CaseOptions {
  unsigned threads = 1;  // 0 uses the hardware concurrency
  std::function<bool()> cancel;
  fractional::RealizationOptions realization;
  // Test hook: replaces the plant evaluator and the family bounds.
  nsga2::Evaluator evaluator_override;
  nsga2::Bounds bounds_override;
};

/// Independent runs seeded base_seed + run. A cancelled case returns the runs finished so far.
std::vector<RunResult> run_case(const CaseSpec& spec, const plant::PlantConfig& plant, const nsga2::MooConfig& moo,
                                const CaseOptions& options = {});

enum class Verdict { kSettled, kOscillatory, kDiverged };
std::string_view to_string(Verdict v);

inline constexpr double kSettleBand = 1e-3;  // Hz

struct TraceSummary {
  double itse = 0.0;
  double isdco = 0.0;
  double peak_df1 = 0.0;
  double peak_df2 = 0.0;
  double final_df1 = 0.0;
  double final_df2 = 0.0;
  /// Earliest time after which both deviations stay inside the band; infinite if never.
  double settling_time = 0.0;
  Verdict verdict = Verdict::kSettled;
};

/**
 * Settled when both deviations stay inside the band over the last tenth of
 * the horizon, oscillatory when they stay finite but leave it, diverged when
 * the simulation blew up.
 */
TraceSummary summarize_trace(const plant::SimTrace& trace, double band = kSettleBand);

struct RobustnessSpec {
  std::vector<double> t12_factors{1.0, 2.0, 3.0};
  bool random_load = false;
  std::uint64_t load_seed = 0;

  void validate() const;
};

struct Scenario {
  std::string name;
  plant::PlantConfig config;
  plant::SimTrace trace;
  TraceSummary summary;
};

std::string t12_scenario_name(double factor);

/// One trace per T12 factor, plus a seeded random-load trace on request.
std::vector<Scenario> robustness_sweep(const ControllerPair& best, const plant::PlantConfig& plant,
                                       const RobustnessSpec& spec,
                                       const fractional::RealizationOptions& realization = {});

struct MetricRow {
  std::string variant;
  std::string controller;
  int run = 0;
  pareto::MetricReport metrics;
  double seconds = 0.0;
};

struct CaseBoxplot {
  std::string variant;
  std::string controller;
  std::map<std::string, pareto::BoxSummary> metrics;  // hypervolume, spacing, spread, diversity, seconds
};

/// Five-number summaries per (controller, variant) case, in first-seen case order.
std::vector<CaseBoxplot> aggregate_boxplots(const std::vector<MetricRow>& rows);

}  // namespace focdes::experiments
