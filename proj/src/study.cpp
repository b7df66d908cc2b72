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

#include "focdes/study.hpp"

#include <algorithm>
#include <map>

#include "focdes/error.hpp"

namespace focdes::study {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fractional::Family infer_family(const pareto::ParetoFront& front) {
  if (!front.provenance.family.empty()) return fractional::parse_family(front.provenance.family);
  const std::size_t n = front.points.front().genome.size();
  if (n == experiments::genome_length(fractional::Family::kPid)) return fractional::Family::kPid;
  if (n != experiments::genome_length(fractional::Family::kSlow)) {
    throw InvalidArgument("front genome length " + std::to_string(n) + " matches no controller family");
  }
  const auto& g = front.points.front().genome;
  return (g[3] <= 1.0 && g[8] <= 1.0) ? fractional::Family::kSlow : fractional::Family::kFast;
}

json compromise_entry(const pareto::ParetoFront& front, double metric_value) {
  const std::size_t idx = pareto::best_compromise(front.objectives());
  const pareto::FrontPoint& p = front.points[idx];
  json e{{"run", front.provenance.run},
         {"seed", front.provenance.seed},
         {"front_metric", metric_value},
         {"front_size", front.size()},
         {"index", idx},
         {"genome", p.genome},
         {"j1", p.objectives.at(0)},
         {"j2", p.objectives.at(1)}};
  const fractional::Family family = infer_family(front);
  e["params"] = io::params_to_json(experiments::genome_to_controllers(p.genome, family));
  return e;
}

std::string run_file_stem(int run) { return std::to_string(run); }

}  // namespace

nsga2::MooConfig moo_for(fractional::Family family, const StudyOptions& options) {
  nsga2::MooConfig moo = nsga2::MooConfig::defaults_for(experiments::genome_length(family));
  if (options.pop_size > 0) moo.pop_size = options.pop_size;
  if (options.max_gen > 0) moo.max_gen = options.max_gen;
  return moo;
}

StudyResult run_study(const std::vector<experiments::CaseSpec>& cases, const io::StudyConfig& config,
                      const StudyOptions& options, const fs::path& out_dir) {
  StudyResult result;
  for (const auto& c : cases) result.runs_expected += static_cast<std::size_t>(c.runs);
  std::vector<std::vector<LoadedFront>> groups;

  for (const auto& spec : cases) {
    if (options.cancel && options.cancel()) {
      result.cancelled = true;
      break;
    }
    experiments::CaseOptions co;
    co.threads = options.threads;
    co.cancel = options.cancel;
    co.realization = config.realization;
    const auto runs = experiments::run_case(spec, config.plant, moo_for(spec.family, options), co);

    std::vector<LoadedFront> group;
    for (const auto& r : runs) {
      const fs::path stem = out_dir / "fronts" / spec.name() / run_file_stem(r.front.provenance.run);
      io::write_text_file(stem.string() + ".csv", io::front_csv(r.front));
      json side = io::provenance_to_json(r.front.provenance);
      side["moo"] = io::moo_to_json(moo_for(spec.family, options));
      io::write_text_file(stem.string() + ".json", side.dump(2) + "\n");
      if (r.front.provenance.cancelled) {
        result.cancelled = true;
        continue;  // partial fronts are kept on disk but left out of the statistics
      }
      experiments::MetricRow row;
      row.variant = std::string(nsga2::to_string(spec.variant));
      row.controller = std::string(fractional::to_string(spec.family));
      row.run = r.front.provenance.run;
      row.metrics = r.metrics;
      row.seconds = options.record_wall_time ? r.wall_seconds : 0.0;
      result.rows.push_back(row);
      group.push_back({spec.name(), r.front});
      ++result.runs_completed;
    }
    if (!group.empty()) groups.push_back(std::move(group));
    if (static_cast<int>(runs.size()) < spec.runs) result.cancelled = true;
    if (result.cancelled) break;
  }

  io::write_text_file(out_dir / "metrics.csv", io::metrics_csv(result.rows));
  io::write_text_file(out_dir / "boxplots.csv", io::boxplots_csv(experiments::aggregate_boxplots(result.rows)));
  const std::vector<pareto::Criterion> all{pareto::Criterion::kMinHypervolume, pareto::Criterion::kMaxDiversity,
                                           pareto::Criterion::kMaxSpread, pareto::Criterion::kMinSpacing};
  io::write_text_file(out_dir / "compromise.json", compromise_report(groups, all).dump(2) + "\n");
  return result;
}

std::vector<std::vector<LoadedFront>> load_front_groups(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw InvalidArgument(dir.string() + ": not a directory");
  std::map<fs::path, std::vector<fs::path>> by_dir;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv" && entry.path().filename() != "metrics.csv" &&
        entry.path().filename() != "boxplots.csv" && entry.path().parent_path().filename() != "traces") {
      by_dir[entry.path().parent_path()].push_back(entry.path());
    }
  }
  std::vector<std::vector<LoadedFront>> groups;
  for (auto& [parent, files] : by_dir) {
    std::vector<LoadedFront> group;
    for (const auto& f : files) {
      LoadedFront lf;
      lf.case_name = parent == dir ? dir.filename().string() : parent.filename().string();
      lf.front = io::parse_front_csv(io::read_text_file(f), f.string());
      fs::path side = f;
      side.replace_extension(".json");
      if (fs::exists(side)) {
        lf.front.provenance = io::provenance_from_json(io::read_json_file(side));
      } else {
        try {
          lf.front.provenance.run = std::stoi(f.stem().string());
        } catch (const std::exception&) {
          lf.front.provenance.run = static_cast<int>(group.size());
        }
      }
      group.push_back(std::move(lf));
    }
    std::stable_sort(group.begin(), group.end(), [](const LoadedFront& a, const LoadedFront& b) {
      return a.front.provenance.run < b.front.provenance.run;
    });
    groups.push_back(std::move(group));
  }
  if (groups.empty()) throw InvalidArgument(dir.string() + ": no front files found");
  return groups;
}

json compromise_report(const std::vector<std::vector<LoadedFront>>& groups,
                       const std::vector<pareto::Criterion>& criteria) {
  json cases = json::array();
  for (const auto& group : groups) {
    if (group.empty()) continue;
    std::vector<pareto::ParetoFront> fronts;
    for (const auto& lf : group) fronts.push_back(lf.front);
    const pareto::Provenance& first = fronts.front().provenance;
    json entry{{"case", group.front().case_name},
               {"controller", first.family},
               {"variant", first.variant},
               {"runs", fronts.size()}};
    json by_criterion = json::object();
    for (pareto::Criterion c : criteria) {
      const std::size_t best = pareto::select_best_front_index(fronts, c);
      const double value = pareto::criterion_value(pareto::compute_metrics(fronts[best].objectives()), c);
      by_criterion[std::string(pareto::to_string(c))] = compromise_entry(fronts[best], value);
    }
    entry["criteria"] = by_criterion;
    cases.push_back(entry);
  }
  return {{"cases", cases}};
}

json simulation_summary(const plant::SimTrace& trace) {
  json s = io::trace_summary_to_json(experiments::summarize_trace(trace));
  s["diverged"] = trace.diverged;
  if (trace.diverged) s["divergence_time"] = trace.divergence_time;
  s["rows"] = trace.size();
  return s;
}

void write_scenarios(const std::vector<experiments::Scenario>& scenarios, const fs::path& out_dir) {
  json table = json::array();
  for (const auto& s : scenarios) {
    io::write_text_file(out_dir / "traces" / (s.name + ".csv"), io::trace_csv(s.trace));
    json row = simulation_summary(s.trace);
    row["scenario"] = s.name;
    row["t12"] = s.config.t12;
    table.push_back(row);
  }
  io::write_text_file(out_dir / "robustness.json", json{{"scenarios", table}}.dump(2) + "\n");
}

}  // namespace focdes::study
