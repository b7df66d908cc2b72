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

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace focdes::lti {

/// States whose magnitude exceeds this bound are treated as overflowed.
inline constexpr double kDivergenceBound = 1e6;

/**
 * @brief Continuous-time linear block x' = A x + B u, y = C x + D u.
 *
 * Carries its own integration state and elapsed time so it can be stepped
 * in isolation. Copies are independent.
 */
class LtiSystem {
 public:
  LtiSystem();
  LtiSystem(Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::MatrixXd c, Eigen::MatrixXd d);

  static LtiSystem static_gain(double k);

  std::size_t order() const { return static_cast<std::size_t>(a_.rows()); }
  std::size_t inputs() const { return static_cast<std::size_t>(b_.cols()); }
  std::size_t outputs() const { return static_cast<std::size_t>(c_.rows()); }
  bool is_siso() const { return inputs() == 1 && outputs() == 1; }

  const Eigen::MatrixXd& a() const { return a_; }
  const Eigen::MatrixXd& b() const { return b_; }
  const Eigen::MatrixXd& c() const { return c_; }
  const Eigen::MatrixXd& d() const { return d_; }

  const Eigen::VectorXd& state() const { return state_; }
  void set_state(const Eigen::VectorXd& x);
  double time() const { return time_; }
  /// Zero the state and the clock.
  void reset();

  Eigen::VectorXd derivative(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const;
  Eigen::VectorXd output(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const;

  std::complex<double> frequency_response(double omega, std::size_t out = 0, std::size_t in = 0) const;
  double dc_gain(std::size_t out = 0, std::size_t in = 0) const;

  /// Eigenvalues of A.
  Eigen::VectorXcd poles() const;

  // Advanced by step_lti.
  friend Eigen::VectorXd step_lti(LtiSystem& sys, const Eigen::VectorXd& input, double h);

 private:
  Eigen::MatrixXd a_, b_, c_, d_;
  Eigen::VectorXd state_;
  double time_ = 0.0;
};

/// Controllable-canonical realization of num(s)/den(s), coefficients in descending powers.
LtiSystem from_transfer_function(std::span<const double> numerator, std::span<const double> denominator);

/// Cascade: the output of `first` drives `second`.
LtiSystem series(const LtiSystem& first, const LtiSystem& second);

/// Sum of two systems driven by the same input.
LtiSystem parallel(const LtiSystem& lhs, const LtiSystem& rhs);

/// Output scaled by k.
LtiSystem scaled(const LtiSystem& sys, double k);

/**
 * Advance one step of size h with classical RK4, input held over the step.
 * Returns the output evaluated at the new state. Throws SimulationDiverged
 * if the new state is non-finite or overflows.
 */
Eigen::VectorXd step_lti(LtiSystem& sys, const Eigen::VectorXd& input, double h);

/// SISO convenience overload.
double step_lti(LtiSystem& sys, double input, double h);

struct DeadBand {
  double half_width = 0.0;

  explicit DeadBand(double half = 0.0);
};

double apply_dead_band(const DeadBand& db, double x);

struct RateLimiter {
  double max_rate = std::numeric_limits<double>::infinity();
  double state = 0.0;

  explicit RateLimiter(double rate = std::numeric_limits<double>::infinity());
};

/// First-order lag whose slope is clamped to +-max_rate; forward-Euler step.
double step_rate_limited_lag(RateLimiter& rl, double time_constant, double input, double h);

struct SolverConfig {
  double step_h = 0.01;
  double horizon_T = 100.0;

  void validate() const;
  std::size_t steps() const;
};

/// Scratch buffers for rk4_advance; reuse across steps to avoid allocation.
class Rk4Workspace {
 public:
  explicit Rk4Workspace(std::size_t n = 0) { resize(n); }
  void resize(std::size_t n) {
    k1.assign(n, 0.0);
    k2.assign(n, 0.0);
    k3.assign(n, 0.0);
    k4.assign(n, 0.0);
    tmp.assign(n, 0.0);
  }
  std::vector<double> k1, k2, k3, k4, tmp;
};

/**
 * Classical RK4 on an arbitrary vector field.
 * `f(x, dx)` writes dx/dt evaluated at x; inputs must be held by the caller.
 */
template <class F>
void rk4_advance(std::span<double> x, double h, F&& f, Rk4Workspace& ws) {
  const std::size_t n = x.size();
  std::span<const double> xs(x.data(), n);
  f(xs, std::span<double>(ws.k1));
  for (std::size_t i = 0; i < n; ++i) ws.tmp[i] = x[i] + 0.5 * h * ws.k1[i];
  f(std::span<const double>(ws.tmp), std::span<double>(ws.k2));
  for (std::size_t i = 0; i < n; ++i) ws.tmp[i] = x[i] + 0.5 * h * ws.k2[i];
  f(std::span<const double>(ws.tmp), std::span<double>(ws.k3));
  for (std::size_t i = 0; i < n; ++i) ws.tmp[i] = x[i] + h * ws.k3[i];
  f(std::span<const double>(ws.tmp), std::span<double>(ws.k4));
  for (std::size_t i = 0; i < n; ++i) {
    x[i] += h / 6.0 * (ws.k1[i] + 2.0 * ws.k2[i] + 2.0 * ws.k3[i] + ws.k4[i]);
  }
}

/// True when any entry is non-finite or beyond kDivergenceBound.
bool overflowed(std::span<const double> x);

}  // namespace focdes::lti
