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

#include "focdes/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <thread>

#include "focdes/error.hpp"

namespace focdes::experiments {

namespace {

using fractional::Family;

constexpr double kGainMax = 10.0;

Error with_run_index(const Error& e, int run) {
  return Error(e.code(), "run " + std::to_string(run) + ": " + e.what());
}

RunResult execute_run(const CaseSpec& spec, int run, const nsga2::Evaluator& evaluator, const nsga2::Bounds& bounds,
                      const nsga2::MooConfig& moo, const CaseOptions& options, unsigned threads) {
  nsga2::RandomStream stream(spec.variant, spec.base_seed + static_cast<std::uint64_t>(run));
  nsga2::RunOptions ro;
  ro.threads = threads;
  ro.cancel = options.cancel;
  RunResult result;
  const auto start = std::chrono::steady_clock::now();
  result.front = nsga2::run_nsga2(evaluator, bounds, moo, stream, ro);
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.front.provenance.family = std::string(fractional::to_string(spec.family));
  result.front.provenance.run = run;
  result.metrics = pareto::compute_metrics(result.front.objectives());
  return result;
}

}  // namespace

std::string CaseSpec::name() const {
  return std::string(fractional::to_string(family)) + "-" + std::string(nsga2::to_string(variant));
}

void CaseSpec::validate() const {
  if (runs < 1) throw InvalidArgument("case: runs must be >= 1");
}

std::vector<CaseSpec> full_grid(int runs, std::uint64_t base_seed) {
  std::vector<CaseSpec> grid;
  for (Family f : {Family::kSlow, Family::kFast, Family::kPid}) {
    for (auto v : {nsga2::StreamKind::kUniform, nsga2::StreamKind::kLogistic, nsga2::StreamKind::kHenon}) {
      grid.push_back({f, v, runs, base_seed});
    }
  }
  return grid;
}

std::size_t genome_length(Family family) { return family == Family::kPid ? 6 : 10; }

nsga2::Bounds family_bounds(Family family) {
  nsga2::Bounds b;
  for (int area = 0; area < 2; ++area) {
    for (int k = 0; k < 3; ++k) {
      b.lower.push_back(0.0);
      b.upper.push_back(kGainMax);
    }
    if (family == Family::kPid) continue;
    b.lower.push_back(family == Family::kSlow ? 0.0 : 1.0);
    b.upper.push_back(family == Family::kSlow ? 1.0 : 2.0);
    b.lower.push_back(0.0);
    b.upper.push_back(2.0);
  }
  return b;
}

ControllerPair genome_to_controllers(std::span<const double> genome, Family family) {
  const std::size_t n = genome_length(family);
  if (genome.size() != n) {
    throw InvalidArgument("genome: " + std::string(fractional::to_string(family)) + " family needs " +
                          std::to_string(n) + " genes, got " + std::to_string(genome.size()));
  }
  const std::size_t per_area = n / 2;
  auto area = [&](std::size_t offset) {
    fractional::FopidParams p;
    p.family = family;
    p.kp = genome[offset];
    p.ki = genome[offset + 1];
    p.kd = genome[offset + 2];
    if (family != Family::kPid) {
      p.lambda = genome[offset + 3];
      p.mu = genome[offset + 4];
    }
    return p;
  };
  ControllerPair out{area(0), area(per_area)};
  out.first.validate();
  out.second.validate();
  return out;
}

std::vector<double> controllers_to_genome(const ControllerPair& params, Family family) {
  std::vector<double> g;
  for (const auto* p : {&params.first, &params.second}) {
    g.insert(g.end(), {p->kp, p->ki, p->kd});
    if (family != Family::kPid) g.insert(g.end(), {p->lambda, p->mu});
  }
  return g;
}

nsga2::Evaluator make_plant_evaluator(const plant::PlantConfig& plant, Family family,
                                      const fractional::RealizationOptions& realization) {
  plant.validate();
  return [plant, family, realization](std::span<const double> genome) {
    const ControllerPair params = genome_to_controllers(genome, family);
    const auto c1 = fractional::realize_controller(params.first, realization);
    const auto c2 = fractional::realize_controller(params.second, realization);
    const plant::ObjectiveVector obj = plant::evaluate_objectives(plant::simulate(plant, c1, c2));
    return std::vector<double>{obj.j1_itse, obj.j2_isdco};
  };
}

std::vector<RunResult> run_case(const CaseSpec& spec, const plant::PlantConfig& plant, const nsga2::MooConfig& moo,
                                const CaseOptions& options) {
  spec.validate();
  moo.validate();
  const nsga2::Evaluator evaluator = options.evaluator_override
                                         ? options.evaluator_override
                                         : make_plant_evaluator(plant, spec.family, options.realization);
  const nsga2::Bounds bounds = options.evaluator_override ? options.bounds_override : family_bounds(spec.family);

  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  const auto runs = static_cast<std::size_t>(spec.runs);
  std::vector<RunResult> results(runs);
  std::vector<std::exception_ptr> errors(runs);
  std::vector<char> done(runs, 0);

  auto work = [&](std::size_t run, unsigned eval_threads) {
    try {
      results[run] = execute_run(spec, static_cast<int>(run), evaluator, bounds, moo, options, eval_threads);
      done[run] = 1;
    } catch (...) {
      errors[run] = std::current_exception();
    }
  };

  if (threads <= 1 || runs == 1) {
    for (std::size_t run = 0; run < runs; ++run) {
      work(run, threads);
      if (errors[run] || results[run].front.provenance.cancelled) break;
    }
  } else {
    // Whole runs go to workers; each run owns its stream.
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(runs));
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t run = next++; run < runs; run = next++) {
          if (options.cancel && options.cancel()) break;
          work(run, 1);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  for (std::size_t run = 0; run < runs; ++run) {
    if (!errors[run]) continue;
    try {
      std::rethrow_exception(errors[run]);
    } catch (const EvaluationError& e) {
      throw EvaluationError(e.genome(), "run " + std::to_string(run) + ": " + e.what());
    } catch (const Error& e) {
      throw with_run_index(e, static_cast<int>(run));
    }
  }

  // Keep the leading prefix of finished runs so partial output is contiguous.
  std::vector<RunResult> out;
  for (std::size_t run = 0; run < runs && done[run]; ++run) {
    out.push_back(std::move(results[run]));
    if (out.back().front.provenance.cancelled) break;
  }
  return out;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kSettled:
      return "settled";
    case Verdict::kOscillatory:
      return "oscillatory";
    case Verdict::kDiverged:
      return "diverged";
  }
  return "diverged";
}

TraceSummary summarize_trace(const plant::SimTrace& trace, double band) {
  TraceSummary s;
  if (trace.diverged || trace.size() == 0) {
    s.verdict = Verdict::kDiverged;
    s.itse = plant::kDivergencePenalty;
    s.isdco = plant::kDivergencePenalty;
    s.peak_df1 = s.peak_df2 = s.final_df1 = s.final_df2 = std::numeric_limits<double>::quiet_NaN();
    s.settling_time = std::numeric_limits<double>::infinity();
    return s;
  }
  const plant::ObjectiveVector obj = plant::evaluate_objectives(trace);
  s.itse = obj.j1_itse;
  s.isdco = obj.j2_isdco;
  const std::size_t n = trace.size();
  std::size_t last_out = n;  // index of the last sample outside the band
  for (std::size_t k = 0; k < n; ++k) {
    s.peak_df1 = std::max(s.peak_df1, std::abs(trace.df1[k]));
    s.peak_df2 = std::max(s.peak_df2, std::abs(trace.df2[k]));
    if (std::abs(trace.df1[k]) >= band || std::abs(trace.df2[k]) >= band) last_out = k;
  }
  s.final_df1 = trace.df1.back();
  s.final_df2 = trace.df2.back();
  if (last_out == n) {
    s.settling_time = 0.0;
  } else if (last_out + 1 < n) {
    s.settling_time = trace.t[last_out + 1];
  } else {
    s.settling_time = std::numeric_limits<double>::infinity();
  }
  const double horizon = trace.t.back();
  const double tail_start = trace.t.front() + 0.9 * (horizon - trace.t.front());
  s.verdict = Verdict::kSettled;
  for (std::size_t k = 0; k < n; ++k) {
    if (trace.t[k] < tail_start) continue;
    if (std::abs(trace.df1[k]) >= band || std::abs(trace.df2[k]) >= band) {
      s.verdict = Verdict::kOscillatory;
      break;
    }
  }
  return s;
}

void RobustnessSpec::validate() const {
  if (t12_factors.empty()) throw InvalidArgument("robustness: at least one t12 factor is required");
  for (double f : t12_factors) {
    if (!(f > 0.0) || !std::isfinite(f)) throw InvalidArgument("robustness: t12 factors must be finite and > 0");
  }
}

std::string t12_scenario_name(double factor) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "t12x%g", factor);
  return buf;
}

std::vector<Scenario> robustness_sweep(const ControllerPair& best, const plant::PlantConfig& plant,
                                       const RobustnessSpec& spec,
                                       const fractional::RealizationOptions& realization) {
  spec.validate();
  plant.validate();
  const auto c1 = fractional::realize_controller(best.first, realization);
  const auto c2 = fractional::realize_controller(best.second, realization);
  std::vector<Scenario> out;
  auto add = [&](std::string name, const plant::PlantConfig& cfg) {
    Scenario s;
    s.name = std::move(name);
    s.config = cfg;
    s.trace = plant::simulate(cfg, c1, c2);
    s.summary = summarize_trace(s.trace);
    out.push_back(std::move(s));
  };
  for (double f : spec.t12_factors) {
    plant::PlantConfig cfg = plant;
    cfg.t12 = plant.t12 * f;
    add(t12_scenario_name(f), cfg);
  }
  if (spec.random_load) {
    plant::PlantConfig cfg = plant;
    cfg.load1 = {plant::LoadKind::kPiecewiseRandom, plant.load1.amplitude, plant.load1.start_time, 10.0,
                 spec.load_seed};
    cfg.load2 = {plant::LoadKind::kPiecewiseRandom, plant.load2.amplitude, plant.load2.start_time, 10.0,
                 spec.load_seed + 1};
    add("random_load", cfg);
  }
  return out;
}

std::vector<CaseBoxplot> aggregate_boxplots(const std::vector<MetricRow>& rows) {
  std::vector<CaseBoxplot> out;
  std::vector<std::map<std::string, std::vector<double>>> samples;
  for (const auto& row : rows) {
    auto it = std::find_if(out.begin(), out.end(), [&](const CaseBoxplot& c) {
      return c.variant == row.variant && c.controller == row.controller;
    });
    std::size_t idx = static_cast<std::size_t>(it - out.begin());
    if (it == out.end()) {
      out.push_back({row.variant, row.controller, {}});
      samples.emplace_back();
    }
    auto& s = samples[idx];
    s["hypervolume"].push_back(row.metrics.hypervolume);
    s["spacing"].push_back(row.metrics.spacing);
    s["spread"].push_back(row.metrics.spread);
    s["diversity"].push_back(row.metrics.diversity);
    s["seconds"].push_back(row.seconds);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (auto& [metric, values] : samples[i]) out[i].metrics[metric] = pareto::box_summary(values);
  }
  return out;
}

}  // namespace focdes::experiments
