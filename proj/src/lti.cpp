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

#include "focdes/lti.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "focdes/error.hpp"

namespace focdes::lti {

LtiSystem::LtiSystem() : LtiSystem(Eigen::MatrixXd(0, 0), Eigen::MatrixXd(0, 1), Eigen::MatrixXd(1, 0),
                                   Eigen::MatrixXd::Zero(1, 1)) {}

LtiSystem::LtiSystem(Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::MatrixXd c, Eigen::MatrixXd d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  const auto n = a_.rows();
  if (a_.cols() != n) throw InvalidArgument("LtiSystem: A must be square");
  if (b_.rows() != n) throw InvalidArgument("LtiSystem: B row count must match A");
  if (c_.cols() != n) throw InvalidArgument("LtiSystem: C column count must match A");
  if (d_.rows() != c_.rows() || d_.cols() != b_.cols()) {
    throw InvalidArgument("LtiSystem: D must be outputs x inputs");
  }
  state_ = Eigen::VectorXd::Zero(n);
}

LtiSystem LtiSystem::static_gain(double k) {
  Eigen::MatrixXd d(1, 1);
  d(0, 0) = k;
  return LtiSystem(Eigen::MatrixXd(0, 0), Eigen::MatrixXd(0, 1), Eigen::MatrixXd(1, 0), d);
}

void LtiSystem::set_state(const Eigen::VectorXd& x) {
  if (x.size() != state_.size()) throw InvalidArgument("LtiSystem: state size mismatch");
  state_ = x;
}

void LtiSystem::reset() {
  state_.setZero();
  time_ = 0.0;
}

Eigen::VectorXd LtiSystem::derivative(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const {
  return a_ * x + b_ * u;
}

Eigen::VectorXd LtiSystem::output(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const {
  return c_ * x + d_ * u;
}

std::complex<double> LtiSystem::frequency_response(double omega, std::size_t out, std::size_t in) const {
  using cd = std::complex<double>;
  const auto n = a_.rows();
  std::complex<double> g = d_(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in));
  if (n == 0) return g;
  Eigen::MatrixXcd m = -a_.cast<cd>();
  m.diagonal().array() += cd(0.0, omega);
  Eigen::VectorXcd rhs = b_.col(static_cast<Eigen::Index>(in)).cast<cd>();
  Eigen::VectorXcd sol = m.partialPivLu().solve(rhs);
  g += (c_.row(static_cast<Eigen::Index>(out)).cast<cd>() * sol)(0);
  return g;
}

double LtiSystem::dc_gain(std::size_t out, std::size_t in) const { return frequency_response(0.0, out, in).real(); }

Eigen::VectorXcd LtiSystem::poles() const {
  if (a_.rows() == 0) return Eigen::VectorXcd(0);
  return a_.eigenvalues();
}

LtiSystem from_transfer_function(std::span<const double> numerator, std::span<const double> denominator) {
  if (denominator.empty()) throw InvalidArgument("transfer function: empty denominator");
  if (denominator.front() == 0.0) {
    throw InvalidArgument("transfer function: denominator leading coefficient must be nonzero");
  }
  std::size_t first_nz = 0;
  while (first_nz < numerator.size() && numerator[first_nz] == 0.0) ++first_nz;
  std::vector<double> num(numerator.begin() + static_cast<std::ptrdiff_t>(first_nz), numerator.end());
  if (num.empty()) num.push_back(0.0);

  const std::size_t n = denominator.size() - 1;
  if (num.size() - 1 > n) throw InvalidArgument("transfer function: improper (numerator degree exceeds denominator)");

  const double lead = denominator.front();
  std::vector<double> den(denominator.begin(), denominator.end());
  for (double& v : den) v /= lead;
  std::vector<double> padded(n + 1, 0.0);
  std::copy(num.begin(), num.end(), padded.begin() + static_cast<std::ptrdiff_t>(n + 1 - num.size()));
  for (double& v : padded) v /= lead;

  const auto ni = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(ni, ni);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(ni, 1);
  Eigen::MatrixXd c(1, ni);
  Eigen::MatrixXd d(1, 1);
  d(0, 0) = padded[0];
  for (Eigen::Index j = 0; j < ni; ++j) {
    a(0, j) = -den[static_cast<std::size_t>(j) + 1];
    c(0, j) = padded[static_cast<std::size_t>(j) + 1] - den[static_cast<std::size_t>(j) + 1] * padded[0];
  }
  for (Eigen::Index i = 1; i < ni; ++i) a(i, i - 1) = 1.0;
  if (ni > 0) b(0, 0) = 1.0;
  return LtiSystem(a, b, c, d);
}

LtiSystem series(const LtiSystem& first, const LtiSystem& second) {
  if (first.outputs() != second.inputs()) throw InvalidArgument("series: dimension mismatch");
  const auto n1 = static_cast<Eigen::Index>(first.order());
  const auto n2 = static_cast<Eigen::Index>(second.order());
  const auto m = static_cast<Eigen::Index>(first.inputs());
  const auto p = static_cast<Eigen::Index>(second.outputs());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n1 + n2, n1 + n2);
  Eigen::MatrixXd b(n1 + n2, m);
  Eigen::MatrixXd c(p, n1 + n2);
  a.topLeftCorner(n1, n1) = first.a();
  a.bottomLeftCorner(n2, n1) = second.b() * first.c();
  a.bottomRightCorner(n2, n2) = second.a();
  b.topRows(n1) = first.b();
  b.bottomRows(n2) = second.b() * first.d();
  c.leftCols(n1) = second.d() * first.c();
  c.rightCols(n2) = second.c();
  Eigen::MatrixXd d = second.d() * first.d();
  return LtiSystem(a, b, c, d);
}

LtiSystem parallel(const LtiSystem& lhs, const LtiSystem& rhs) {
  if (lhs.inputs() != rhs.inputs() || lhs.outputs() != rhs.outputs()) {
    throw InvalidArgument("parallel: dimension mismatch");
  }
  const auto n1 = static_cast<Eigen::Index>(lhs.order());
  const auto n2 = static_cast<Eigen::Index>(rhs.order());
  const auto m = static_cast<Eigen::Index>(lhs.inputs());
  const auto p = static_cast<Eigen::Index>(lhs.outputs());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n1 + n2, n1 + n2);
  Eigen::MatrixXd b(n1 + n2, m);
  Eigen::MatrixXd c(p, n1 + n2);
  a.topLeftCorner(n1, n1) = lhs.a();
  a.bottomRightCorner(n2, n2) = rhs.a();
  b.topRows(n1) = lhs.b();
  b.bottomRows(n2) = rhs.b();
  c.leftCols(n1) = lhs.c();
  c.rightCols(n2) = rhs.c();
  return LtiSystem(a, b, c, lhs.d() + rhs.d());
}

LtiSystem scaled(const LtiSystem& sys, double k) { return LtiSystem(sys.a(), sys.b(), k * sys.c(), k * sys.d()); }

bool overflowed(std::span<const double> x) {
  return std::any_of(x.begin(), x.end(), [](double v) { return !std::isfinite(v) || std::abs(v) > kDivergenceBound; });
}

Eigen::VectorXd step_lti(LtiSystem& sys, const Eigen::VectorXd& input, double h) {
  if (!(h > 0.0)) throw InvalidArgument("step_lti: step must be positive");
  if (input.size() != static_cast<Eigen::Index>(sys.inputs())) throw InvalidArgument("step_lti: input size mismatch");
  if (!input.allFinite()) throw InvalidArgument("step_lti: non-finite input");

  Eigen::VectorXd& x = sys.state_;
  if (x.size() > 0) {
    const Eigen::VectorXd bu = sys.b_ * input;
    const Eigen::VectorXd k1 = sys.a_ * x + bu;
    const Eigen::VectorXd k2 = sys.a_ * (x + 0.5 * h * k1) + bu;
    const Eigen::VectorXd k3 = sys.a_ * (x + 0.5 * h * k2) + bu;
    const Eigen::VectorXd k4 = sys.a_ * (x + h * k3) + bu;
    x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  sys.time_ += h;
  if (overflowed(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())))) {
    throw SimulationDiverged(sys.time_);
  }
  return sys.output(x, input);
}

double step_lti(LtiSystem& sys, double input, double h) {
  if (!sys.is_siso()) throw InvalidArgument("step_lti: scalar overload requires a SISO system");
  Eigen::VectorXd u(1);
  u(0) = input;
  return step_lti(sys, u, h)(0);
}

DeadBand::DeadBand(double half) : half_width(half) {
  if (!(half >= 0.0)) throw InvalidArgument("dead-band half width must be >= 0");
}

double apply_dead_band(const DeadBand& db, double x) {
  if (std::abs(x) <= db.half_width) return 0.0;
  return x > 0.0 ? x - db.half_width : x + db.half_width;
}

RateLimiter::RateLimiter(double rate) : max_rate(rate) {
  if (!(rate > 0.0)) throw InvalidArgument("rate limiter: max_rate must be > 0");
}

double step_rate_limited_lag(RateLimiter& rl, double time_constant, double input, double h) {
  if (!(time_constant > 0.0)) throw InvalidArgument("rate-limited lag: time constant must be > 0");
  if (!(h > 0.0)) throw InvalidArgument("rate-limited lag: step must be positive");
  const double rate = std::clamp((input - rl.state) / time_constant, -rl.max_rate, rl.max_rate);
  rl.state += h * rate;
  return rl.state;
}

void SolverConfig::validate() const {
  if (!(step_h > 0.0)) throw InvalidArgument("solver.step_h must be > 0");
  if (!(horizon_T > step_h)) throw InvalidArgument("solver.horizon_T must exceed solver.step_h");
  const double ratio = horizon_T / step_h;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
    throw InvalidArgument("solver.horizon_T must be an integer multiple of solver.step_h");
  }
}

std::size_t SolverConfig::steps() const {
  validate();
  return static_cast<std::size_t>(std::llround(horizon_T / step_h));
}

}  // namespace focdes::lti
