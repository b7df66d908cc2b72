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

#include "focdes/fractional.hpp"

#include <array>
#include <cmath>

#include "focdes/error.hpp"

namespace focdes::fractional {

namespace {

// (s + zero) / (s + pole)
lti::LtiSystem first_order_section(double zero, double pole) {
  Eigen::MatrixXd a(1, 1), b(1, 1), c(1, 1), d(1, 1);
  a(0, 0) = -pole;
  b(0, 0) = 1.0;
  c(0, 0) = zero - pole;
  d(0, 0) = 1.0;
  return lti::LtiSystem(a, b, c, d);
}

lti::LtiSystem integrator() {
  const std::array<double, 1> num{1.0};
  const std::array<double, 2> den{1.0, 0.0};
  return lti::from_transfer_function(num, den);
}

// s / (1 + s / omega_h)
lti::LtiSystem band_limited_derivative(double omega_h) {
  const std::array<double, 2> num{1.0, 0.0};
  const std::array<double, 2> den{1.0 / omega_h, 1.0};
  return lti::from_transfer_function(num, den);
}

// s^order for order in [-2, 2]: pure integer stages cascaded with an Oustaloup remainder.
lti::LtiSystem fractional_operator(double order, const RealizationOptions& opts) {
  int whole = 0;
  double frac = 0.0;
  if (std::abs(order) == 2.0) {
    whole = order > 0 ? 2 : -2;
  } else {
    const OrderSplit split = decompose_order(order);
    whole = split.integer_part;
    frac = split.fractional_part;
  }
  lti::LtiSystem sys = lti::LtiSystem::static_gain(1.0);
  for (int i = 0; i < std::abs(whole); ++i) {
    sys = lti::series(sys, whole > 0 ? band_limited_derivative(opts.omega_h) : integrator());
  }
  if (frac != 0.0) {
    sys = lti::series(sys, oustaloup({frac, opts.omega_b, opts.omega_h, opts.n_half}));
  }
  return sys;
}

// s^-lambda for lambda in [0, 2]: one pure integrator carries the low-frequency
// action and Oustaloup(1 - lambda) shapes the band, so integral action is exact at DC.
lti::LtiSystem fractional_integral(double lambda, const RealizationOptions& opts) {
  if (lambda == 0.0) return lti::LtiSystem::static_gain(1.0);
  if (lambda == 2.0) return lti::series(integrator(), integrator());
  lti::LtiSystem sys = integrator();
  const double remainder = 1.0 - lambda;
  if (remainder != 0.0) sys = lti::series(sys, oustaloup({remainder, opts.omega_b, opts.omega_h, opts.n_half}));
  return sys;
}

}  // namespace

void OustaloupSpec::validate() const {
  if (!(omega_b > 0.0) || !(omega_h > omega_b)) throw InvalidArgument("oustaloup: need 0 < omega_b < omega_h");
  if (n_half < 1) throw InvalidArgument("oustaloup: n_half must be >= 1");
  if (!std::isfinite(alpha)) throw InvalidArgument("oustaloup: alpha must be finite");
}

ZeroPoleGain oustaloup_zpk(const OustaloupSpec& spec) {
  spec.validate();
  const double ratio = spec.omega_h / spec.omega_b;
  const int n = spec.n_half;
  const double order = 2.0 * n + 1.0;
  ZeroPoleGain zpk;
  for (int k = -n; k <= n; ++k) {
    zpk.poles.push_back(spec.omega_b * std::pow(ratio, (k + n + 0.5 * (1.0 + spec.alpha)) / order));
    zpk.zeros.push_back(spec.omega_b * std::pow(ratio, (k + n + 0.5 * (1.0 - spec.alpha)) / order));
  }
  zpk.gain = std::pow(spec.omega_h, spec.alpha);
  return zpk;
}

lti::LtiSystem oustaloup(const OustaloupSpec& spec) {
  if (std::abs(spec.alpha) > 1.0) throw InvalidArgument("oustaloup: |alpha| must be <= 1; decompose larger orders");
  const ZeroPoleGain zpk = oustaloup_zpk(spec);
  lti::LtiSystem sys = first_order_section(zpk.zeros.front(), zpk.poles.front());
  for (std::size_t k = 1; k < zpk.poles.size(); ++k) {
    sys = lti::series(sys, first_order_section(zpk.zeros[k], zpk.poles[k]));
  }
  return lti::scaled(sys, zpk.gain);
}

OrderSplit decompose_order(double alpha) {
  if (!(std::abs(alpha) < 2.0)) throw InvalidArgument("decompose_order: |alpha| must be < 2");
  const double whole = std::trunc(alpha);
  return {static_cast<int>(whole), alpha - whole};
}

std::string_view to_string(Family f) {
  switch (f) {
    case Family::kSlow:
      return "slow";
    case Family::kFast:
      return "fast";
    case Family::kPid:
      return "pid";
  }
  return "pid";
}

Family parse_family(std::string_view name) {
  if (name == "slow") return Family::kSlow;
  if (name == "fast") return Family::kFast;
  if (name == "pid") return Family::kPid;
  throw InvalidArgument("unknown controller family '" + std::string(name) + "' (expected slow, fast, pid)");
}

void FopidParams::validate() const {
  for (const auto& [name, v] : {std::pair{"kp", kp}, std::pair{"ki", ki}, std::pair{"kd", kd}}) {
    if (!std::isfinite(v) || v < 0.0) throw InvalidArgument(std::string(name) + " must be a finite non-negative gain");
  }
  if (!(lambda >= 0.0 && lambda <= 2.0)) throw InvalidArgument("lambda must lie in [0, 2]");
  if (!(mu >= 0.0 && mu <= 2.0)) throw InvalidArgument("mu must lie in [0, 2]");
  switch (family) {
    case Family::kPid:
      if (lambda != 1.0 || mu != 1.0) throw InvalidArgument("pid family requires lambda = mu = 1");
      break;
    case Family::kSlow:
      if (lambda > 1.0) throw InvalidArgument("slow family requires lambda in [0, 1]");
      break;
    case Family::kFast:
      if (lambda < 1.0) throw InvalidArgument("fast family requires lambda in [1, 2]");
      break;
  }
}

RealizedController RealizedController::clone() const {
  RealizedController out = *this;
  out.integral_branch.reset();
  out.derivative_branch.reset();
  return out;
}

lti::LtiSystem RealizedController::as_system() const {
  return lti::parallel(lti::parallel(lti::LtiSystem::static_gain(kp), integral_branch), derivative_branch);
}

RealizedController realize_controller(const FopidParams& params, const RealizationOptions& opts) {
  params.validate();
  OustaloupSpec{0.0, opts.omega_b, opts.omega_h, opts.n_half}.validate();
  RealizedController ctrl;
  ctrl.kp = params.kp;
  if (params.family == Family::kPid) {
    ctrl.integral_branch = lti::scaled(integrator(), params.ki);
    ctrl.derivative_branch = lti::scaled(band_limited_derivative(opts.omega_h), params.kd);
  } else {
    // A zero gain collapses the branch to a stateless zero.
    ctrl.integral_branch = params.ki == 0.0 ? lti::LtiSystem::static_gain(0.0)
                                            : lti::scaled(fractional_integral(params.lambda, opts), params.ki);
    ctrl.derivative_branch = params.kd == 0.0 ? lti::LtiSystem::static_gain(0.0)
                                              : lti::scaled(fractional_operator(params.mu, opts), params.kd);
  }
  return ctrl;
}

double step_controller(RealizedController& ctrl, double ace, double h) {
  const double yi = lti::step_lti(ctrl.integral_branch, ace, h);
  const double yd = lti::step_lti(ctrl.derivative_branch, ace, h);
  return ctrl.kp * ace + yi + yd;
}

}  // namespace focdes::fractional
