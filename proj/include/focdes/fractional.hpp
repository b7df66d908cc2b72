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

#include <string>
#include <string_view>
#include <vector>

#include "focdes/lti.hpp"

namespace focdes::fractional {

/// Band-limited approximation of s^alpha over [omega_b, omega_h] with 2N+1 pole/zero pairs.
struct OustaloupSpec {
  double alpha = 0.0;
  double omega_b = 1e-2;
  double omega_h = 1e2;
  int n_half = 2;

  void validate() const;
};

struct ZeroPoleGain {
  std::vector<double> zeros;  // stored as positive corner frequencies: factor (s + w)
  std::vector<double> poles;
  double gain = 1.0;
};

ZeroPoleGain oustaloup_zpk(const OustaloupSpec& spec);

/// State-space realization of oustaloup_zpk as a cascade of first-order sections.
lti::LtiSystem oustaloup(const OustaloupSpec& spec);

struct OrderSplit {
  int integer_part = 0;
  double fractional_part = 0.0;
};

/// alpha = integer_part + fractional_part, integer part truncated toward zero; |alpha| < 2.
OrderSplit decompose_order(double alpha);

enum class Family { kSlow, kFast, kPid };

std::string_view to_string(Family f);
Family parse_family(std::string_view name);

struct FopidParams {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
  double lambda = 1.0;
  double mu = 1.0;
  Family family = Family::kPid;

  void validate() const;
};

struct RealizationOptions {
  double omega_b = 1e-2;
  double omega_h = 1e2;
  int n_half = 2;
};

/// Runnable controller C(s) = kp + ki / s^lambda + kd s^mu.
struct RealizedController {
  lti::LtiSystem integral_branch;
  lti::LtiSystem derivative_branch;
  double kp = 0.0;

  /// Fresh-state copy.
  RealizedController clone() const;
  /// Whole controller as one SISO system.
  lti::LtiSystem as_system() const;
};

RealizedController realize_controller(const FopidParams& params, const RealizationOptions& opts = {});

double step_controller(RealizedController& ctrl, double ace, double h);

}  // namespace focdes::fractional
