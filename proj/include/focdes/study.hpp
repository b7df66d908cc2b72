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

#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "focdes/experiments.hpp"
#include "focdes/io.hpp"

// Result-directory layout shared by the C API and the command-line tool.
namespace focdes::study {

struct StudyOptions {
  int pop_size = 0;  // 0 applies the sizing rule for the family
  int max_gen = 0;
  unsigned threads = 1;
  bool record_wall_time = true;
  std::function<bool()> cancel;
};

struct StudyResult {
  std::size_t runs_expected = 0;
  std::size_t runs_completed = 0;
  bool cancelled = false;
  std::vector<experiments::MetricRow> rows;
};

nsga2::MooConfig moo_for(fractional::Family family, const StudyOptions& options);

/**
 * Runs each case and writes fronts/<case>/<run>.csv with a .json provenance
 * sidecar, metrics.csv, boxplots.csv and compromise.json under `out_dir`.
 * Files for finished runs are written even when the study is cancelled.
 */
StudyResult run_study(const std::vector<experiments::CaseSpec>& cases, const io::StudyConfig& config,
                      const StudyOptions& options, const std::filesystem::path& out_dir);

struct LoadedFront {
  std::string case_name;
  pareto::ParetoFront front;
};

/// Every front CSV under `dir` (recursively), grouped by directory and ordered by run index.
std::vector<std::vector<LoadedFront>> load_front_groups(const std::filesystem::path& dir);

/// Best front per criterion followed by its best-compromise member, per case.
nlohmann::json compromise_report(const std::vector<std::vector<LoadedFront>>& groups,
                                 const std::vector<pareto::Criterion>& criteria);

nlohmann::json simulation_summary(const plant::SimTrace& trace);

/// traces/<scenario>.csv plus a verdict table in robustness.json.
void write_scenarios(const std::vector<experiments::Scenario>& scenarios, const std::filesystem::path& out_dir);

}  // namespace focdes::study
