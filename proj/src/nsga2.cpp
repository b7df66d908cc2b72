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

#include "focdes/nsga2.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <thread>

#include "focdes/error.hpp"

namespace focdes::nsga2 {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void assign_crowding(std::vector<Individual>& pop, const std::vector<std::size_t>& members) {
  pareto::Points pts;
  pts.reserve(members.size());
  for (std::size_t i : members) pts.push_back(pop[i].objectives);
  const std::vector<double> cd = crowding_distance(pts);
  for (std::size_t k = 0; k < members.size(); ++k) pop[members[k]].crowding = cd[k];
}

// Ranks and crowds the population in place; returns the fronts.
std::vector<std::vector<std::size_t>> rank_population(std::vector<Individual>& pop) {
  pareto::Points objs;
  objs.reserve(pop.size());
  for (const auto& ind : pop) objs.push_back(ind.objectives);
  auto fronts = non_dominated_sort(objs);
  for (std::size_t f = 0; f < fronts.size(); ++f) {
    for (std::size_t i : fronts[f]) pop[i].rank = static_cast<int>(f) + 1;
    assign_crowding(pop, fronts[f]);
  }
  return fronts;
}

// Lower rank wins, then larger crowding, then a coin flip.
std::size_t tournament(const std::vector<Individual>& pop, int size, RandomStream& rs) {
  std::size_t best = rs.next_index(pop.size());
  for (int k = 1; k < size; ++k) {
    const std::size_t other = rs.next_index(pop.size());
    const Individual& a = pop[best];
    const Individual& b = pop[other];
    if (b.rank < a.rank || (b.rank == a.rank && b.crowding > a.crowding)) {
      best = other;
    } else if (b.rank == a.rank && b.crowding == a.crowding) {
      if (rs.next() < 0.5) best = other;
    }
  }
  return best;
}

void clamp_to(std::vector<double>& g, const Bounds& bounds) {
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::clamp(g[i], bounds.lower[i], bounds.upper[i]);
}

class BatchEvaluator {
 public:
  BatchEvaluator(const Evaluator& problem, unsigned threads) : problem_(problem), threads_(threads) {
    if (threads_ == 0) threads_ = std::max(1u, std::thread::hardware_concurrency());
  }

  void evaluate(std::vector<Individual>& batch) {
    std::vector<std::exception_ptr> errors(batch.size());
    auto work = [&](std::size_t i) {
      try {
        batch[i].objectives = problem_(batch[i].genome);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    };
    const unsigned n_threads = std::min<unsigned>(threads_, static_cast<unsigned>(batch.size()));
    if (n_threads <= 1) {
      for (std::size_t i = 0; i < batch.size(); ++i) work(i);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < n_threads; ++t) {
        pool.emplace_back([&] {
          for (std::size_t i = next++; i < batch.size(); i = next++) work(i);
        });
      }
      for (auto& th : pool) th.join();
    }
    // Report the lowest failing index so failures are deterministic too.
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (errors[i]) {
        std::string msg = "objective evaluation failed";
        try {
          std::rethrow_exception(errors[i]);
        } catch (const std::exception& e) {
          msg += std::string(": ") + e.what();
        } catch (...) {
        }
        throw EvaluationError(batch[i].genome, msg);
      }
      check(batch[i]);
    }
  }

 private:
  void check(const Individual& ind) {
    if (n_obj_ == 0) n_obj_ = ind.objectives.size();
    if (ind.objectives.empty() || ind.objectives.size() != n_obj_) {
      throw EvaluationError(ind.genome, "objective evaluation returned a vector of the wrong length");
    }
    for (double v : ind.objectives) {
      if (!std::isfinite(v)) throw EvaluationError(ind.genome, "objective evaluation returned a non-finite value");
    }
  }

  const Evaluator& problem_;
  unsigned threads_;
  std::size_t n_obj_ = 0;
};

std::vector<double> mean_first_front(const std::vector<Individual>& pop) {
  std::vector<double> mean(pop.front().objectives.size(), 0.0);
  std::size_t n = 0;
  for (const auto& ind : pop) {
    if (ind.rank != 1) continue;
    for (std::size_t k = 0; k < mean.size(); ++k) mean[k] += ind.objectives[k];
    ++n;
  }
  for (double& m : mean) m /= static_cast<double>(n);
  return mean;
}

// Keeps `count` members ordered by (rank, crowding desc); ties keep the earlier index.
std::vector<Individual> survivors(std::vector<Individual> merged, std::size_t count) {
  rank_population(merged);
  std::vector<std::size_t> order(merged.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (merged[a].rank != merged[b].rank) return merged[a].rank < merged[b].rank;
    return merged[a].crowding > merged[b].crowding;
  });
  std::vector<Individual> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(std::move(merged[order[k]]));
  // Crowding is a property of the surviving population.
  rank_population(out);
  return out;
}

pareto::ParetoFront extract_front(std::vector<Individual> pop, const MooConfig& cfg) {
  rank_population(pop);
  std::vector<std::size_t> first;
  for (std::size_t i = 0; i < pop.size(); ++i) {
    if (pop[i].rank == 1) first.push_back(i);
  }
  std::stable_sort(first.begin(), first.end(),
                   [&](std::size_t a, std::size_t b) { return pop[a].crowding > pop[b].crowding; });
  const auto keep = static_cast<std::size_t>(
      std::max(1.0, std::ceil(cfg.pareto_fraction * static_cast<double>(cfg.pop_size) - 1e-9)));
  if (first.size() > keep) first.resize(keep);
  std::stable_sort(first.begin(), first.end(), [&](std::size_t a, std::size_t b) {
    return pop[a].objectives < pop[b].objectives;
  });
  pareto::ParetoFront front;
  for (std::size_t i : first) front.points.push_back({pop[i].genome, pop[i].objectives});
  return front;
}

}  // namespace

void Bounds::validate() const {
  if (lower.empty() || lower.size() != upper.size()) throw InvalidArgument("bounds: lower/upper size mismatch");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || !(lower[i] < upper[i])) {
      throw InvalidArgument("bounds: need finite lower < upper for gene " + std::to_string(i));
    }
  }
}

MooConfig MooConfig::defaults_for(std::size_t n_var) {
  MooConfig c;
  c.pop_size = static_cast<int>(15 * n_var);
  if (c.pop_size % 2 != 0) ++c.pop_size;
  c.max_gen = static_cast<int>(200 * n_var);
  return c;
}

void MooConfig::validate() const {
  if (pop_size < 4 || pop_size % 2 != 0) throw InvalidArgument("moo: pop_size must be even and >= 4");
  if (max_gen < 1) throw InvalidArgument("moo: max_gen must be >= 1");
  if (!(func_tol >= 0.0)) throw InvalidArgument("moo: func_tol must be >= 0");
  if (stall_window < 1) throw InvalidArgument("moo: stall_window must be >= 1");
  for (double f : {crossover_fraction, mutation_fraction, pareto_fraction}) {
    if (!(f >= 0.0 && f <= 1.0)) throw InvalidArgument("moo: fractions must lie in [0, 1]");
  }
  if (crossover_fraction + mutation_fraction > 1.0 + 1e-12) {
    throw InvalidArgument("moo: crossover_fraction + mutation_fraction must not exceed 1");
  }
  if (tournament_size < 1) throw InvalidArgument("moo: tournament_size must be >= 1");
  if (!(sigma_start >= 0.0) || !(sigma_end >= 0.0)) throw InvalidArgument("moo: sigma must be >= 0");
}

std::vector<std::vector<std::size_t>> non_dominated_sort(const pareto::Points& objectives) {
  const std::size_t n = objectives.size();
  std::vector<std::vector<std::size_t>> dominated_by_me(n);
  std::vector<std::size_t> dom_count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dominates(objectives[i], objectives[j])) {
        dominated_by_me[i].push_back(j);
        ++dom_count[j];
      } else if (dominates(objectives[j], objectives[i])) {
        dominated_by_me[j].push_back(i);
        ++dom_count[i];
      }
    }
  }
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    if (dom_count[i] == 0) current.push_back(i);
  }
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t i : current) {
      for (std::size_t j : dominated_by_me[i]) {
        if (--dom_count[j] == 0) next.push_back(j);
      }
    }
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

std::vector<double> crowding_distance(const pareto::Points& front) {
  const std::size_t n = front.size();
  std::vector<double> dist(n, 0.0);
  if (n == 0) return dist;
  if (n <= 2) return std::vector<double>(n, kInf);
  std::vector<std::size_t> order(n);
  for (std::size_t m = 0; m < front.front().size(); ++m) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return front[a][m] < front[b][m]; });
    const double lo = front[order.front()][m];
    const double hi = front[order.back()][m];
    dist[order.front()] = kInf;
    dist[order.back()] = kInf;
    if (!(hi > lo)) continue;
    for (std::size_t k = 1; k + 1 < n; ++k) {
      dist[order[k]] += (front[order[k + 1]][m] - front[order[k - 1]][m]) / (hi - lo);
    }
  }
  return dist;
}

pareto::ParetoFront run_nsga2(const Evaluator& problem, const Bounds& bounds, const MooConfig& config,
                              RandomStream& stream, const RunOptions& options) {
  bounds.validate();
  config.validate();
  const std::size_t n_var = bounds.size();
  const auto pop_n = static_cast<std::size_t>(config.pop_size);
  BatchEvaluator evaluator(problem, options.threads);

  std::vector<Individual> pop(pop_n);
  for (auto& ind : pop) {
    ind.genome.resize(n_var);
    for (std::size_t i = 0; i < n_var; ++i) {
      ind.genome[i] = bounds.lower[i] + stream.next() * (bounds.upper[i] - bounds.lower[i]);
    }
  }
  evaluator.evaluate(pop);
  long long evaluations = static_cast<long long>(pop_n);
  rank_population(pop);

  const auto n_cx = static_cast<std::size_t>(std::llround(config.crossover_fraction * static_cast<double>(pop_n)));
  const std::size_t n_mut = std::min(
      pop_n - n_cx, static_cast<std::size_t>(std::llround(config.mutation_fraction * static_cast<double>(pop_n))));

  std::vector<double> prev_mean = mean_first_front(pop);
  int stall = 0;
  int gen = 0;
  bool stalled = false;
  bool cancelled = false;
  if (options.on_generation) options.on_generation({0, &pop});

  while (gen < config.max_gen) {
    if (options.cancel && options.cancel()) {
      cancelled = true;
      break;
    }
    ++gen;
    const double sigma = config.sigma_start +
                         (config.sigma_end - config.sigma_start) * static_cast<double>(gen) / config.max_gen;

    std::vector<Individual> offspring(pop_n);
    for (std::size_t c = 0; c < pop_n; ++c) {
      std::vector<double>& g = offspring[c].genome;
      if (c < n_cx) {
        const Individual& a = pop[tournament(pop, config.tournament_size, stream)];
        const Individual& b = pop[tournament(pop, config.tournament_size, stream)];
        g.resize(n_var);
        for (std::size_t i = 0; i < n_var; ++i) {
          const double r = -0.25 + 1.5 * stream.next();
          g[i] = a.genome[i] + r * (b.genome[i] - a.genome[i]);
        }
      } else if (c < n_cx + n_mut) {
        g = pop[tournament(pop, config.tournament_size, stream)].genome;
        for (std::size_t i = 0; i < n_var; ++i) {
          g[i] += sigma * (bounds.upper[i] - bounds.lower[i]) * stream.next_gaussian();
        }
      } else {
        g = pop[tournament(pop, config.tournament_size, stream)].genome;
      }
      clamp_to(g, bounds);
    }
    evaluator.evaluate(offspring);
    evaluations += static_cast<long long>(pop_n);

    std::vector<Individual> merged = std::move(pop);
    merged.insert(merged.end(), std::make_move_iterator(offspring.begin()), std::make_move_iterator(offspring.end()));
    pop = survivors(std::move(merged), pop_n);
    if (options.on_generation) options.on_generation({gen, &pop});

    const std::vector<double> mean = mean_first_front(pop);
    double change = 0.0;
    for (std::size_t k = 0; k < mean.size(); ++k) change = std::max(change, std::abs(mean[k] - prev_mean[k]));
    prev_mean = mean;
    stall = change < config.func_tol ? stall + 1 : 0;
    if (stall >= config.stall_window) {
      stalled = true;
      break;
    }
  }

  pareto::ParetoFront front = extract_front(std::move(pop), config);
  front.provenance.variant = std::string(to_string(stream.kind()));
  front.provenance.seed = stream.seed();
  front.provenance.generations = gen;
  front.provenance.evaluations = evaluations;
  front.provenance.stalled = stalled;
  front.provenance.cancelled = cancelled;
  return front;
}

}  // namespace focdes::nsga2
