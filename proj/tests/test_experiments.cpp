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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "focdes/error.hpp"
#include "focdes/experiments.hpp"
#include "focdes/study.hpp"
#include "support/oracles.hpp"

using namespace focdes;
using namespace focdes::experiments;
using fractional::Family;

namespace {

CaseOptions schaffer_hook() {
  CaseOptions o;
  o.evaluator_override = oracle::schaffer;
  o.bounds_override = nsga2::Bounds{{-10.0}, {10.0}};
  return o;
}

plant::SimTrace flat_trace(double value) {
  plant::SimTrace tr;
  for (int k = 0; k <= 1000; ++k) {
    tr.t.push_back(0.1 * k);
    tr.df1.push_back(value);
    tr.df2.push_back(0.0);
    for (auto* v : {&tr.dptie, &tr.ace1, &tr.ace2, &tr.u1, &tr.u2}) v->push_back(0.0);
  }
  return tr;
}

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("genome layout for the PID family") {
    const auto pair = genome_to_controllers(oracle::benchmark_row(10).genome, Family::kPid);
    CHECK(pair.first.kp == 0.411);
    CHECK(pair.first.ki == 0.375);
    CHECK(pair.first.kd == 0.005);
    CHECK(pair.second.kp == 0.316);
    CHECK(pair.second.ki == 0.149);
    CHECK(pair.second.kd == 0.042);
    CHECK(pair.first.lambda == 1.0);
    CHECK(pair.second.mu == 1.0);
    CHECK(pair.first.family == Family::kPid);
  }

  TEST_CASE("genome layout for the slow FOPID family") {
    const auto pair = genome_to_controllers(oracle::benchmark_row(1).genome, Family::kSlow);
    CHECK(pair.first.kp == 0.090);
    CHECK(pair.first.ki == 0.297);
    CHECK(pair.first.kd == 0.036);
    CHECK(pair.first.lambda == 0.869);
    CHECK(pair.first.mu == 0.208);
    CHECK(pair.second.kp == 0.036);
    CHECK(pair.second.ki == 0.237);
    CHECK(pair.second.kd == 0.036);
    CHECK(pair.second.lambda == 0.533);
    CHECK(pair.second.mu == 0.585);
    CHECK(controllers_to_genome(pair, Family::kSlow) == oracle::benchmark_row(1).genome);
  }

  TEST_CASE("genome length and bounds") {
    CHECK(genome_length(Family::kPid) == 6);
    CHECK(genome_length(Family::kSlow) == 10);
    CHECK_THROWS_AS(genome_to_controllers(std::vector<double>(7, 0.1), Family::kPid), InvalidArgument);
    CHECK_THROWS_AS(genome_to_controllers(std::vector<double>(6, 0.1), Family::kFast), InvalidArgument);
    const nsga2::Bounds slow = family_bounds(Family::kSlow);
    CHECK(slow.upper[0] == 10.0);
    CHECK(slow.lower[3] == 0.0);
    CHECK(slow.upper[3] == 1.0);
    CHECK(slow.upper[4] == 2.0);
    const nsga2::Bounds fast = family_bounds(Family::kFast);
    CHECK(fast.lower[3] == 1.0);
    CHECK(fast.upper[8] == 2.0);
    CHECK(family_bounds(Family::kPid).size() == 6);
  }

  TEST_CASE("zero genome gives silent controllers") {
    for (Family f : {Family::kSlow, Family::kFast, Family::kPid}) {
      std::vector<double> g(genome_length(f), 0.0);
      if (f == Family::kFast) g[3] = g[8] = 1.5;
      const auto tr = oracle::simulate_row({0, f, g}, plant::PlantConfig{});
      for (double u : tr.u1) CHECK(u == 0.0);
      for (double u : tr.u2) CHECK(u == 0.0);
    }
  }

  TEST_CASE("plant evaluator composes the pipeline") {
    const auto eval = make_plant_evaluator(plant::PlantConfig{}, Family::kPid);
    const auto j = eval(oracle::benchmark_row(10).genome);
    const auto ref = plant::evaluate_objectives(oracle::simulate_row(oracle::benchmark_row(10), plant::PlantConfig{}));
    REQUIRE(j.size() == 2);
    CHECK(j[0] == ref.j1_itse);
    CHECK(j[1] == ref.j2_isdco);
  }

  TEST_CASE("case names and the grid") {
    CHECK((CaseSpec{Family::kSlow, nsga2::StreamKind::kLogistic, 3, 0}.name()) == "slow-logistic");
    const auto grid = full_grid(30, 5);
    REQUIRE(grid.size() == 9);
    CHECK(grid.front().family == Family::kSlow);
    CHECK(grid.back().family == Family::kPid);
    CHECK(grid.back().variant == nsga2::StreamKind::kHenon);
    for (const auto& c : grid) CHECK(c.runs == 30);
    CHECK_THROWS_AS((CaseSpec{Family::kPid, nsga2::StreamKind::kUniform, 0, 0}.validate()), InvalidArgument);
  }

  TEST_CASE("run_case on the surrogate problem is reproducible per seed") {
    const CaseSpec spec{Family::kPid, nsga2::StreamKind::kHenon, 2, 100};
    const nsga2::MooConfig moo = nsga2::MooConfig::defaults_for(1);
    const auto a = run_case(spec, plant::PlantConfig{}, moo, schaffer_hook());
    const auto b = run_case(spec, plant::PlantConfig{}, moo, schaffer_hook());
    REQUIRE(a.size() == 2);
    REQUIRE(b.size() == 2);
    for (std::size_t r = 0; r < 2; ++r) {
      CHECK(a[r].front.provenance.seed == 100 + r);
      CHECK(a[r].front.provenance.run == static_cast<int>(r));
      CHECK(pareto::is_mutually_non_dominated(a[r].front.objectives()));
      REQUIRE(a[r].front.size() == b[r].front.size());
      for (std::size_t i = 0; i < a[r].front.size(); ++i) CHECK(a[r].front.points[i].genome == b[r].front.points[i].genome);
      CHECK(a[r].metrics.hypervolume == b[r].metrics.hypervolume);
    }
    // A lone run with the same seed matches the first run of the case.
    nsga2::RandomStream rs(nsga2::StreamKind::kHenon, 100);
    const auto solo = nsga2::run_nsga2(oracle::schaffer, nsga2::Bounds{{-10.0}, {10.0}}, moo, rs);
    CHECK(solo.objectives() == a[0].front.objectives());
  }

  TEST_CASE("parallel runs match serial runs") {
    const CaseSpec spec{Family::kPid, nsga2::StreamKind::kLogistic, 3, 7};
    const nsga2::MooConfig moo = nsga2::MooConfig::defaults_for(1);
    CaseOptions serial = schaffer_hook(), parallel = schaffer_hook();
    parallel.threads = 3;
    const auto a = run_case(spec, plant::PlantConfig{}, moo, serial);
    const auto b = run_case(spec, plant::PlantConfig{}, moo, parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t r = 0; r < a.size(); ++r) CHECK(a[r].front.objectives() == b[r].front.objectives());
  }

  TEST_CASE("run errors carry the run index") {
    CaseOptions o;
    o.evaluator_override = [](std::span<const double>) -> std::vector<double> { throw std::runtime_error("bad"); };
    o.bounds_override = nsga2::Bounds{{0.0}, {1.0}};
    try {
      run_case({Family::kPid, nsga2::StreamKind::kUniform, 2, 0}, plant::PlantConfig{}, nsga2::MooConfig::defaults_for(1),
               o);
      FAIL("expected failure");
    } catch (const EvaluationError& e) {
      CHECK(std::string(e.what()).rfind("run 0: ", 0) == 0);
      CHECK(e.genome().size() == 1);
    }
  }

  TEST_CASE("cancellation keeps finished runs") {
    CaseOptions o = schaffer_hook();
    int polls = 0;
    // Stop during the second run.
    o.cancel = [&] { return ++polls > 250; };
    const auto res = run_case({Family::kPid, nsga2::StreamKind::kUniform, 4, 0}, plant::PlantConfig{},
                              nsga2::MooConfig::defaults_for(1), o);
    REQUIRE(!res.empty());
    CHECK(res.size() < 4);
    CHECK_FALSE(res.front().front.provenance.cancelled);
    CHECK(res.back().front.provenance.cancelled);
  }

  TEST_CASE("study sizing follows the genome length") {
    const auto pid = study::moo_for(Family::kPid, {});
    CHECK(pid.pop_size == 90);
    CHECK(pid.max_gen == 1200);
    const auto fast = study::moo_for(Family::kFast, {});
    CHECK(fast.pop_size == 150);
    CHECK(fast.max_gen == 2000);
    study::StudyOptions small;
    small.pop_size = 20;
    small.max_gen = 50;
    const auto reduced = study::moo_for(Family::kSlow, small);
    CHECK(reduced.pop_size == 20);
    CHECK(reduced.max_gen == 50);
  }

  TEST_CASE("robustness sweep") {
    const auto best = genome_to_controllers(oracle::benchmark_row(6).genome, Family::kFast);
    const plant::PlantConfig nominal;
    RobustnessSpec spec;
    spec.random_load = true;
    spec.load_seed = 11;
    const auto sc = robustness_sweep(best, nominal, spec);
    REQUIRE(sc.size() == 4);
    CHECK(sc[0].name == "t12x1");
    CHECK(sc[1].name == "t12x2");
    CHECK(sc[3].name == "random_load");
    CHECK(sc[0].config.t12 == doctest::Approx(0.0707));
    CHECK(sc[1].config.t12 == doctest::Approx(0.1414));
    CHECK(sc[2].config.t12 == doctest::Approx(0.2121));

    const auto ref = oracle::simulate_row(oracle::benchmark_row(6), nominal);
    CHECK(sc[0].trace.df1 == ref.df1);
    CHECK(sc[0].trace.u2 == ref.u2);
    for (int i = 0; i < 3; ++i) CHECK_FALSE(sc[static_cast<std::size_t>(i)].trace.diverged);

    const auto again = robustness_sweep(best, nominal, spec);
    CHECK(again[3].trace.df1 == sc[3].trace.df1);
    CHECK(again[3].trace.dptie == sc[3].trace.dptie);
    CHECK(sc[3].config.load1.kind == plant::LoadKind::kPiecewiseRandom);
    CHECK(sc[3].config.load1.amplitude == nominal.load1.amplitude);
    CHECK(sc[3].config.load2.amplitude == nominal.load2.amplitude);

    RobustnessSpec bad;
    bad.t12_factors = {1.0, -2.0};
    CHECK_THROWS_AS(robustness_sweep(best, nominal, bad), InvalidArgument);
    CHECK(t12_scenario_name(1.5) == "t12x1.5");
  }

  TEST_CASE("trace verdicts") {
    CHECK(summarize_trace(flat_trace(0.0)).verdict == Verdict::kSettled);
    CHECK(summarize_trace(flat_trace(0.0)).settling_time == 0.0);
    plant::SimTrace osc = flat_trace(0.0);
    for (std::size_t k = 0; k < osc.size(); ++k) osc.df2[k] = 0.01 * std::sin(osc.t[k]);
    const TraceSummary s = summarize_trace(osc);
    CHECK(s.verdict == Verdict::kOscillatory);
    CHECK(std::isinf(s.settling_time));
    CHECK(s.peak_df2 == doctest::Approx(0.01).epsilon(1e-3));

    plant::SimTrace late = flat_trace(0.0);
    for (std::size_t k = 0; k < late.size(); ++k) late.df1[k] = late.t[k] < 30.0 ? 0.02 : 1e-4;
    const TraceSummary l = summarize_trace(late);
    CHECK(l.verdict == Verdict::kSettled);
    CHECK(l.settling_time == doctest::Approx(30.0));
    CHECK(l.final_df1 == 1e-4);

    plant::SimTrace dv = flat_trace(0.0);
    dv.diverged = true;
    CHECK(summarize_trace(dv).verdict == Verdict::kDiverged);
    CHECK(to_string(Verdict::kOscillatory) == "oscillatory");
  }

  TEST_CASE("box plots per case") {
    std::vector<MetricRow> rows;
    for (int r = 0; r < 5; ++r) rows.push_back({"uniform", "pid", r, {double(r + 1), 0.0, 1.0, 2.0}, 0.5});
    rows.push_back({"henon", "slow", 0, {7.0, 1.0, 1.0, 1.0}, 1.0});
    const auto boxes = aggregate_boxplots(rows);
    REQUIRE(boxes.size() == 2);
    CHECK(boxes[0].controller == "pid");
    CHECK(boxes[0].variant == "uniform");
    const auto& hv = boxes[0].metrics.at("hypervolume");
    CHECK(hv.median == 3.0);
    CHECK(hv.q1 == 2.0);
    CHECK(hv.q3 == 4.0);
    CHECK(hv.count == 5);
    CHECK(boxes[0].metrics.count("seconds") == 1);
    const auto& single = boxes[1].metrics.at("hypervolume");
    CHECK(single.min == 7.0);
    CHECK(single.q1 == 7.0);
    CHECK(single.median == 7.0);
    CHECK(single.q3 == 7.0);
    CHECK(single.max == 7.0);

    std::vector<MetricRow> shuffled(rows.begin(), rows.begin() + 5);
    std::mt19937_64 gen(1);
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    const auto again = aggregate_boxplots(shuffled);
    CHECK(again[0].metrics.at("hypervolume").median == 3.0);
    CHECK(again[0].metrics.at("hypervolume").q1 == 2.0);
  }
}
