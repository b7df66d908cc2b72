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

#include <functional>
#include <span>
#include <vector>

#include "focdes/pareto.hpp"
#include "focdes/random_stream.hpp"

namespace focdes::nsga2 {

using pareto::dominates;

struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t size() const { return lower.size(); }
  void validate() const;
};

struct Individual {
  std::vector<double> genome;
  std::vector<double> objectives;
  int rank = 0;
  double crowding = 0.0;
};

struct MooConfig {
  int pop_size = 0;
  int max_gen = 0;
  double func_tol = 1e-6;
  int stall_window = 50;
  double crossover_fraction = 0.8;
  double mutation_fraction = 0.2;
  int tournament_size = 2;
  double pareto_fraction = 0.7;
  double sigma_start = 0.1;  // fraction of each gene's range
  double sigma_end = 0.01;

  /// Sizing rules: 15 * n_var individuals (rounded up to even), 200 * n_var generations.
  static MooConfig defaults_for(std::size_t n_var);
  void validate() const;
};

/// Fronts as index lists, best first.
std::vector<std::vector<std::size_t>> non_dominated_sort(const pareto::Points& objectives);
std::vector<double> crowding_distance(const pareto::Points& front);

using Evaluator = std::function<std::vector<double>(std::span<const double>)>;

struct GenerationSnapshot {
  int generation = 0;
  const std::vector<Individual>* population = nullptr;  // rank and crowding set
};

struct RunOptions {
  unsigned threads = 1;                              // 0 uses the hardware concurrency
  std::function<bool()> cancel;                      // polled once per generation
  std::function<void(const GenerationSnapshot&)> on_generation;
};

/**
 * Elitist NSGA-II over a box. Every random decision of a generation is drawn
 * before its evaluations are dispatched, so the thread count never changes
 * the result. Cancellation returns the current first front flagged as such.
 */
pareto::ParetoFront run_nsga2(const Evaluator& problem, const Bounds& bounds, const MooConfig& config,
                              RandomStream& stream, const RunOptions& options = {});

}  // namespace focdes::nsga2
