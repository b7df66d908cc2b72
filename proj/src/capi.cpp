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

#include "focdes/focdes.h"

#include <atomic>
#include <cstdlib>
#include <new>
#include <string>

#include "focdes/error.hpp"
#include "focdes/experiments.hpp"
#include "focdes/io.hpp"
#include "focdes/pareto.hpp"
#include "focdes/study.hpp"

#ifndef FOCDES_VERSION_STRING
#define FOCDES_VERSION_STRING "0.0.0"
#endif

struct focdes_config {
  focdes::io::StudyConfig value;
};
struct focdes_params {
  focdes::experiments::ControllerPair value;
};
struct focdes_trace {
  focdes::plant::SimTrace value;
};
struct focdes_scenarios {
  std::vector<focdes::experiments::Scenario> value;
  std::vector<focdes_trace> traces;
  std::vector<std::string> verdicts;
};
struct focdes_buffer {
  std::string value;
};

namespace {

thread_local std::string g_last_error;
std::atomic<int> g_cancel{0};

static_assert(std::atomic<int>::is_always_lock_free);

focdes_status fail(focdes_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

template <typename F>
focdes_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return FOCDES_OK;
  } catch (const focdes::Error& e) {
    return fail(static_cast<focdes_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(FOCDES_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FOCDES_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(FOCDES_ERR_INTERNAL, "unknown failure");
  }
}

void require(bool ok, const char* msg) {
  if (!ok) throw focdes::InvalidArgument(msg);
}

focdes::pareto::Points unpack(const double* xy, std::size_t n) {
  require(xy != nullptr || n == 0, "points pointer is NULL");
  focdes::pareto::Points pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pts.push_back({xy[2 * i], xy[2 * i + 1]});
  return pts;
}

focdes_buffer* make_buffer(std::string s) { return new focdes_buffer{std::move(s)}; }

}  // namespace

extern "C" {

const char* focdes_version(void) { return FOCDES_VERSION_STRING; }
const char* focdes_last_error(void) { return g_last_error.c_str(); }

void focdes_cancel(void) { g_cancel.store(1, std::memory_order_relaxed); }
void focdes_reset_cancel(void) { g_cancel.store(0, std::memory_order_relaxed); }
int focdes_cancel_requested(void) { return g_cancel.load(std::memory_order_relaxed); }

const char* focdes_buffer_data(const focdes_buffer* buf) { return buf ? buf->value.c_str() : ""; }
size_t focdes_buffer_size(const focdes_buffer* buf) { return buf ? buf->value.size() : 0; }
void focdes_buffer_free(focdes_buffer* buf) { delete buf; }

focdes_status focdes_config_load(const char* path, const char* const* overrides, size_t n_overrides,
                                 focdes_config** out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    require(overrides != nullptr || n_overrides == 0, "overrides pointer is NULL");
    std::vector<std::string> ov;
    for (size_t i = 0; i < n_overrides; ++i) ov.emplace_back(overrides[i]);
    std::optional<std::filesystem::path> p;
    if (path) p = path;
    *out = new focdes_config{focdes::io::load_config(p, ov)};
  });
}

focdes_status focdes_config_from_json(const char* json_text, focdes_config** out) {
  return guarded([&] {
    require(out != nullptr && json_text != nullptr, "NULL argument");
    *out = new focdes_config{focdes::io::config_from_json(focdes::io::parse_json_text(json_text, "<config>"))};
  });
}

focdes_status focdes_config_to_json(const focdes_config* cfg, focdes_buffer** out) {
  return guarded([&] {
    require(cfg != nullptr && out != nullptr, "NULL argument");
    *out = make_buffer(focdes::io::to_json(cfg->value).dump(2) + "\n");
  });
}

void focdes_config_free(focdes_config* cfg) { delete cfg; }

focdes_status focdes_params_load(const char* path, focdes_params** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "NULL argument");
    *out = new focdes_params{focdes::io::load_params(path)};
  });
}

focdes_status focdes_params_from_json(const char* json_text, focdes_params** out) {
  return guarded([&] {
    require(json_text != nullptr && out != nullptr, "NULL argument");
    *out = new focdes_params{focdes::io::params_from_json(focdes::io::parse_json_text(json_text, "<params>"))};
  });
}

focdes_status focdes_params_from_genome(const double* genome, size_t n, const char* family, focdes_params** out) {
  return guarded([&] {
    require(genome != nullptr && family != nullptr && out != nullptr, "NULL argument");
    const auto fam = focdes::fractional::parse_family(family);
    *out = new focdes_params{focdes::experiments::genome_to_controllers({genome, n}, fam)};
  });
}

focdes_status focdes_params_to_json(const focdes_params* params, focdes_buffer** out) {
  return guarded([&] {
    require(params != nullptr && out != nullptr, "NULL argument");
    *out = make_buffer(focdes::io::params_to_json(params->value).dump(2) + "\n");
  });
}

void focdes_params_free(focdes_params* params) { delete params; }

focdes_status focdes_simulate(const focdes_config* cfg, const focdes_params* params, focdes_trace** out) {
  return guarded([&] {
    require(cfg != nullptr && params != nullptr && out != nullptr, "NULL argument");
    const auto& ro = cfg->value.realization;
    const auto c1 = focdes::fractional::realize_controller(params->value.first, ro);
    const auto c2 = focdes::fractional::realize_controller(params->value.second, ro);
    *out = new focdes_trace{focdes::plant::simulate(cfg->value.plant, c1, c2)};
  });
}

size_t focdes_trace_length(const focdes_trace* trace) { return trace ? trace->value.size() : 0; }

const double* focdes_trace_channel(const focdes_trace* trace, focdes_channel ch) {
  if (!trace) return nullptr;
  const auto& t = trace->value;
  switch (ch) {
    case FOCDES_CH_T:
      return t.t.data();
    case FOCDES_CH_DF1:
      return t.df1.data();
    case FOCDES_CH_DF2:
      return t.df2.data();
    case FOCDES_CH_DPTIE:
      return t.dptie.data();
    case FOCDES_CH_ACE1:
      return t.ace1.data();
    case FOCDES_CH_ACE2:
      return t.ace2.data();
    case FOCDES_CH_U1:
      return t.u1.data();
    case FOCDES_CH_U2:
      return t.u2.data();
  }
  return nullptr;
}

int focdes_trace_diverged(const focdes_trace* trace) { return trace && trace->value.diverged ? 1 : 0; }

focdes_status focdes_trace_objectives(const focdes_trace* trace, double* itse, double* isdco) {
  return guarded([&] {
    require(trace != nullptr && itse != nullptr && isdco != nullptr, "NULL argument");
    const auto obj = focdes::plant::evaluate_objectives(trace->value);
    *itse = obj.j1_itse;
    *isdco = obj.j2_isdco;
  });
}

focdes_status focdes_trace_write_csv(const focdes_trace* trace, const char* path) {
  return guarded([&] {
    require(trace != nullptr && path != nullptr, "NULL argument");
    focdes::io::write_text_file(path, focdes::io::trace_csv(trace->value));
  });
}

focdes_status focdes_trace_summary_json(const focdes_trace* trace, focdes_buffer** out) {
  return guarded([&] {
    require(trace != nullptr && out != nullptr, "NULL argument");
    *out = make_buffer(focdes::study::simulation_summary(trace->value).dump(2) + "\n");
  });
}

void focdes_trace_free(focdes_trace* trace) { delete trace; }

focdes_status focdes_robustness(const focdes_config* cfg, const focdes_params* params, const double* t12_factors,
                                size_t n_factors, int random_load, uint64_t load_seed, focdes_scenarios** out) {
  return guarded([&] {
    require(cfg != nullptr && params != nullptr && out != nullptr, "NULL argument");
    require(t12_factors != nullptr || n_factors == 0, "factors pointer is NULL");
    focdes::experiments::RobustnessSpec spec;
    spec.t12_factors.assign(t12_factors, t12_factors + n_factors);
    spec.random_load = random_load != 0;
    spec.load_seed = load_seed;
    auto* s = new focdes_scenarios;
    try {
      s->value = focdes::experiments::robustness_sweep(params->value, cfg->value.plant, spec, cfg->value.realization);
      for (const auto& sc : s->value) {
        s->traces.push_back({sc.trace});
        s->verdicts.emplace_back(focdes::experiments::to_string(sc.summary.verdict));
      }
    } catch (...) {
      delete s;
      throw;
    }
    *out = s;
  });
}

size_t focdes_scenarios_count(const focdes_scenarios* s) { return s ? s->value.size() : 0; }

const char* focdes_scenario_name(const focdes_scenarios* s, size_t i) {
  return s && i < s->value.size() ? s->value[i].name.c_str() : nullptr;
}

const char* focdes_scenario_verdict(const focdes_scenarios* s, size_t i) {
  return s && i < s->verdicts.size() ? s->verdicts[i].c_str() : nullptr;
}

const focdes_trace* focdes_scenario_trace(const focdes_scenarios* s, size_t i) {
  return s && i < s->traces.size() ? &s->traces[i] : nullptr;
}

focdes_status focdes_scenarios_write(const focdes_scenarios* s, const char* out_dir) {
  return guarded([&] {
    require(s != nullptr && out_dir != nullptr, "NULL argument");
    focdes::study::write_scenarios(s->value, out_dir);
  });
}

void focdes_scenarios_free(focdes_scenarios* s) { delete s; }

void focdes_study_options_init(focdes_study_options* opts) {
  if (!opts) return;
  opts->pop_size = 0;
  opts->max_gen = 0;
  opts->threads = 0;
  opts->record_wall_time = 1;
  if (const char* env = std::getenv("FOCDES_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0') opts->threads = static_cast<unsigned>(v);
  }
}

focdes_status focdes_optimize(const focdes_config* cfg, const char* family, const char* variant, int runs,
                              uint64_t base_seed, const focdes_study_options* opts, const char* out_dir,
                              focdes_study_report* report) {
  namespace ex = focdes::experiments;
  if (report) *report = {0, 0, 0};
  focdes::study::StudyResult result;
  const focdes_status st = guarded([&] {
    require(cfg != nullptr && out_dir != nullptr, "NULL argument");
    require(runs >= 1, "runs must be >= 1");
    std::vector<ex::CaseSpec> cases;
    for (const auto& c : ex::full_grid(runs, base_seed)) {
      if (family && c.family != focdes::fractional::parse_family(family)) continue;
      if (variant && c.variant != focdes::nsga2::parse_stream_kind(variant)) continue;
      cases.push_back(c);
    }
    focdes_study_options defaults;
    focdes_study_options_init(&defaults);
    const focdes_study_options& o = opts ? *opts : defaults;
    require(o.pop_size >= 0 && o.max_gen >= 0, "pop_size and max_gen must be >= 0");
    focdes::study::StudyOptions so;
    so.pop_size = o.pop_size;
    so.max_gen = o.max_gen;
    so.threads = o.threads;
    so.record_wall_time = o.record_wall_time != 0;
    so.cancel = [] { return focdes_cancel_requested() != 0; };
    result = focdes::study::run_study(cases, cfg->value, so, out_dir);
  });
  if (report) *report = {result.runs_expected, result.runs_completed, result.cancelled ? 1 : 0};
  if (st == FOCDES_OK && result.cancelled) return fail(FOCDES_ERR_CANCELLED, "study cancelled; partial results written");
  return st;
}

focdes_status focdes_compromise(const char* fronts_dir, const char* criterion, focdes_buffer** out) {
  return guarded([&] {
    require(fronts_dir != nullptr && out != nullptr, "NULL argument");
    std::vector<focdes::pareto::Criterion> criteria;
    if (criterion) {
      criteria.push_back(focdes::pareto::parse_criterion(criterion));
    } else {
      criteria = {focdes::pareto::Criterion::kMinHypervolume, focdes::pareto::Criterion::kMaxDiversity,
                  focdes::pareto::Criterion::kMaxSpread, focdes::pareto::Criterion::kMinSpacing};
    }
    const auto groups = focdes::study::load_front_groups(fronts_dir);
    *out = make_buffer(focdes::study::compromise_report(groups, criteria).dump(2) + "\n");
  });
}

focdes_status focdes_hypervolume(const double* xy, size_t n, double* out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    *out = focdes::pareto::hypervolume_to_origin(unpack(xy, n));
  });
}

focdes_status focdes_spacing(const double* xy, size_t n, double* out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    *out = focdes::pareto::spacing_metric(unpack(xy, n));
  });
}

focdes_status focdes_spread(const double* xy, size_t n, double* out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    *out = focdes::pareto::pareto_spread(unpack(xy, n));
  });
}

focdes_status focdes_diversity(const double* xy, size_t n, double* out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    *out = focdes::pareto::diversity_metric(unpack(xy, n));
  });
}

focdes_status focdes_best_compromise(const double* xy, size_t n, size_t* out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    *out = focdes::pareto::best_compromise(unpack(xy, n));
  });
}

}  // extern "C"
