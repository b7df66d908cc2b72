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
#include <vector>

#include "focdes/fractional.hpp"
#include "focdes/lti.hpp"

namespace focdes::plant {

/// Per-area parameters of a reheat-thermal unit. Defaults are the nominal area data.
struct AreaParams {
  double k_ps = 120.0;   // Hz/pu
  double t_ps = 20.0;    // s
  double r = 2.4;        // Hz/pu-MW
  double b = 0.425;      // pu-MW/Hz
  double t_g = 0.1;      // s
  double t_t = 0.3;      // s
  double t_r = 10.0;     // s
  double k_r = 0.5;
  double grc_delta = 0.005;       // pu/s; 0 disables the rate limit
  double dead_band_half = 0.0003; // pu; 0 disables the dead-band

  void validate(const char* prefix) const;
};

enum class LoadKind { kStep, kPiecewiseRandom };

struct LoadProfile {
  LoadKind kind = LoadKind::kStep;
  double amplitude = 0.0;
  double start_time = 0.0;
  double segment_length = 10.0;
  std::uint64_t seed = 0;

  void validate(const char* prefix) const;
};

/// Piecewise-constant load signal, evaluated by zero-order hold at sample instants.
class LoadSignal {
 public:
  LoadSignal(const LoadProfile& profile, double horizon);
  double at(double t) const;

 private:
  LoadProfile profile_;
  std::vector<double> segments_;
};

struct PlantConfig {
  AreaParams area1;
  AreaParams area2;
  double t12 = 0.0707;
  double a12 = -1.0;
  LoadProfile load1{LoadKind::kStep, 0.02, 0.0, 10.0, 0};
  LoadProfile load2{LoadKind::kStep, 0.008, 0.0, 10.0, 0};
  lti::SolverConfig solver;

  void validate() const;
  /// Copy with both nonlinearities switched off in both areas.
  PlantConfig linearized() const;
};

struct SimTrace {
  std::vector<double> t, df1, df2, dptie, ace1, ace2, u1, u2;
  bool diverged = false;
  double divergence_time = 0.0;

  std::size_t size() const { return t.size(); }
};

struct ObjectiveVector {
  double j1_itse = 0.0;
  double j2_isdco = 0.0;
};

/// Objective pair assigned to diverged traces; dominated by any finite design.
inline constexpr double kDivergencePenalty = 1e6;

double frequency_bias(double r, double d);

/// Two-area ACE: tie-line deviation plus bias-weighted frequency deviation.
inline double compute_ace(double dptie, double df, double b) { return dptie + b * df; }

SimTrace simulate(const PlantConfig& config, const fractional::RealizedController& ctrl1,
                  const fractional::RealizedController& ctrl2);

ObjectiveVector evaluate_objectives(const SimTrace& trace);

}  // namespace focdes::plant
