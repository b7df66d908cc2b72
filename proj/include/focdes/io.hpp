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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "focdes/experiments.hpp"
#include "focdes/fractional.hpp"
#include "focdes/nsga2.hpp"
#include "focdes/pareto.hpp"
#include "focdes/plant.hpp"

namespace focdes::io {

using nlohmann::json;

/// Study configuration: the plant plus the fractional realization band.
struct StudyConfig {
  plant::PlantConfig plant;
  fractional::RealizationOptions realization;
};

json to_json(const StudyConfig& cfg);

/**
 * Builds a configuration from defaults, a JSON document and "a.b.c=value"
 * overrides applied in that order. Unknown fields and type mismatches are
 * rejected with the offending dotted path.
 */
StudyConfig config_from_json(const json& doc, const std::vector<std::string>& overrides = {});
StudyConfig load_config(const std::optional<std::filesystem::path>& path,
                        const std::vector<std::string>& overrides = {});

/// {"family": ..., "area1": {kp, ki, kd, lambda, mu}, "area2": {...}}; family inferred when absent.
experiments::ControllerPair params_from_json(const json& doc);
json params_to_json(const experiments::ControllerPair& params);
experiments::ControllerPair load_params(const std::filesystem::path& path);

json parse_json_text(const std::string& text, const std::string& origin);
json read_json_file(const std::filesystem::path& path);

/// Writes through a temporary sibling and renames, so readers never see partial files.
void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

/// Shortest round-trip decimal; "nan" and "inf" for non-finite values.
std::string format_number(double v);

std::string trace_csv(const plant::SimTrace& trace);
std::string front_csv(const pareto::ParetoFront& front);
pareto::ParetoFront parse_front_csv(const std::string& text, const std::string& origin);
json provenance_to_json(const pareto::Provenance& p);
pareto::Provenance provenance_from_json(const json& doc);

std::string metrics_csv(const std::vector<experiments::MetricRow>& rows);
std::string boxplots_csv(const std::vector<experiments::CaseBoxplot>& boxes);
json trace_summary_to_json(const experiments::TraceSummary& s);
json moo_to_json(const nsga2::MooConfig& moo);

}  // namespace focdes::io
