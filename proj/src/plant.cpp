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

#include "focdes/plant.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "focdes/error.hpp"

namespace focdes::plant {

namespace {

double unit_draw(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

void require(bool ok, const char* prefix, const char* field, const char* rule) {
  if (!ok) throw InvalidArgument(std::string(prefix) + field + ": " + rule);
}

/**
 * SISO block flattened for the inner loop: A stored as a row-compressed
 * nonzero list so that cascades and block-diagonal controllers stay cheap.
 */
class CompiledBlock {
 public:
  CompiledBlock() = default;
  explicit CompiledBlock(const lti::LtiSystem& sys) : n_(sys.order()) {
    row_start_.push_back(0);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        const double v = sys.a()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        if (v != 0.0) {
          cols_.push_back(j);
          vals_.push_back(v);
        }
      }
      row_start_.push_back(cols_.size());
      b_.push_back(sys.b()(static_cast<Eigen::Index>(i), 0));
      c_.push_back(sys.c()(0, static_cast<Eigen::Index>(i)));
    }
    d_ = sys.d()(0, 0);
  }

  std::size_t order() const { return n_; }

  double output(const double* x, double u) const {
    double y = d_ * u;
    for (std::size_t i = 0; i < n_; ++i) y += c_[i] * x[i];
    return y;
  }

  void derivative(const double* x, double u, double* dx) const {
    for (std::size_t i = 0; i < n_; ++i) {
      double acc = b_[i] * u;
      for (std::size_t k = row_start_[i]; k < row_start_[i + 1]; ++k) acc += vals_[k] * x[cols_[k]];
      dx[i] = acc;
    }
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> row_start_;
  std::vector<std::size_t> cols_;
  std::vector<double> vals_;
  std::vector<double> b_, c_;
  double d_ = 0.0;
};

lti::LtiSystem lag(double gain, double time_constant) {
  const std::array<double, 1> num{gain};
  const std::array<double, 2> den{time_constant, 1.0};
  return lti::from_transfer_function(num, den);
}

struct AreaBlocks {
  CompiledBlock governor, reheater, turbine, power_system, controller;
  std::size_t gov_off = 0, rh_off = 0, tt_off = 0, ps_off = 0, ctrl_off = 0;
  bool rate_limited = false;
  double inv_r = 0.0, bias = 0.0, t_t = 0.0, grc = 0.0;
  lti::DeadBand dead_band;
};

struct Signals {
  std::array<double, 2> df{}, ptie{}, ace{}, u{}, gov_in{}, gov_out{}, rh_out{}, p_turb{};
};

class TwoAreaLoop {
 public:
  TwoAreaLoop(const PlantConfig& cfg, const fractional::RealizedController& c1,
              const fractional::RealizedController& c2)
      : a12_(cfg.a12) {
    const std::array<const AreaParams*, 2> params{&cfg.area1, &cfg.area2};
    const std::array<const fractional::RealizedController*, 2> ctrls{&c1, &c2};
    std::size_t off = 0;
    for (std::size_t i = 0; i < 2; ++i) {
      const AreaParams& p = *params[i];
      AreaBlocks& a = areas_[i];
      a.governor = CompiledBlock(lag(1.0, p.t_g));
      const std::array<double, 2> rh_num{p.k_r * p.t_r, 1.0};
      const std::array<double, 2> rh_den{p.t_r, 1.0};
      a.reheater = CompiledBlock(lti::from_transfer_function(rh_num, rh_den));
      a.turbine = CompiledBlock(lag(1.0, p.t_t));
      a.power_system = CompiledBlock(lag(p.k_ps, p.t_ps));
      a.controller = CompiledBlock(ctrls[i]->as_system());
      a.rate_limited = p.grc_delta > 0.0;
      a.inv_r = 1.0 / p.r;
      a.bias = p.b;
      a.t_t = p.t_t;
      a.grc = p.grc_delta;
      a.dead_band = lti::DeadBand(p.dead_band_half);
      a.gov_off = off;
      off += a.governor.order();
      a.rh_off = off;
      off += a.reheater.order();
      if (!a.rate_limited) {
        a.tt_off = off;
        off += a.turbine.order();
      }
      a.ps_off = off;
      off += a.power_system.order();
      a.ctrl_off = off;
      off += a.controller.order();
    }
    const std::array<double, 1> tie_num{2.0 * std::numbers::pi * cfg.t12};
    const std::array<double, 2> tie_den{1.0, 0.0};
    tie_ = CompiledBlock(lti::from_transfer_function(tie_num, tie_den));
    tie_off_ = off;
    off += tie_.order();
    state_.assign(off, 0.0);
    ws_.resize(off);
  }

  /// All loop signals at state x with loads and rate-limited turbine outputs held.
  Signals signals(const double* x) const {
    Signals s;
    const double ptie1 = tie_.output(x + tie_off_, 0.0);
    s.ptie = {ptie1, a12_ * ptie1};
    for (std::size_t i = 0; i < 2; ++i) {
      const AreaBlocks& a = areas_[i];
      s.df[i] = a.power_system.output(x + a.ps_off, 0.0);
    }
    for (std::size_t i = 0; i < 2; ++i) {
      const AreaBlocks& a = areas_[i];
      s.ace[i] = compute_ace(s.ptie[i], s.df[i], a.bias);
      s.u[i] = -a.controller.output(x + a.ctrl_off, s.ace[i]);
      s.gov_in[i] = s.u[i] + lti::apply_dead_band(a.dead_band, -s.df[i] * a.inv_r);
      s.gov_out[i] = a.governor.output(x + a.gov_off, 0.0);
      s.rh_out[i] = a.reheater.output(x + a.rh_off, s.gov_out[i]);
      s.p_turb[i] = a.rate_limited ? turbine_held_[i] : a.turbine.output(x + a.tt_off, 0.0);
    }
    return s;
  }

  void derivative(std::span<const double> xs, std::span<double> dx) const {
    const double* x = xs.data();
    const Signals s = signals(x);
    for (std::size_t i = 0; i < 2; ++i) {
      const AreaBlocks& a = areas_[i];
      a.governor.derivative(x + a.gov_off, s.gov_in[i], dx.data() + a.gov_off);
      a.reheater.derivative(x + a.rh_off, s.gov_out[i], dx.data() + a.rh_off);
      if (!a.rate_limited) a.turbine.derivative(x + a.tt_off, s.rh_out[i], dx.data() + a.tt_off);
      a.power_system.derivative(x + a.ps_off, s.p_turb[i] - load_held_[i] - s.ptie[i], dx.data() + a.ps_off);
      a.controller.derivative(x + a.ctrl_off, s.ace[i], dx.data() + a.ctrl_off);
    }
    tie_.derivative(x + tie_off_, s.df[0] - s.df[1], dx.data() + tie_off_);
  }

  /// One step of size h; returns false on divergence.
  bool step(double h, double load1, double load2) {
    load_held_ = {load1, load2};
    const Signals start = signals(state_.data());
    lti::rk4_advance(std::span<double>(state_), h,
                     [this](std::span<const double> x, std::span<double> dx) { derivative(x, dx); }, ws_);
    for (std::size_t i = 0; i < 2; ++i) {
      const AreaBlocks& a = areas_[i];
      if (!a.rate_limited) continue;
      const double rate = std::clamp((start.rh_out[i] - turbine_held_[i]) / a.t_t, -a.grc, a.grc);
      turbine_held_[i] += h * rate;
    }
    return !lti::overflowed(state_) && std::isfinite(turbine_held_[0]) && std::isfinite(turbine_held_[1]);
  }

  Signals current() const { return signals(state_.data()); }

 private:
  std::array<AreaBlocks, 2> areas_;
  CompiledBlock tie_;
  std::size_t tie_off_ = 0;
  double a12_;
  std::vector<double> state_;
  lti::Rk4Workspace ws_;
  std::array<double, 2> load_held_{};
  std::array<double, 2> turbine_held_{};
};

void record(SimTrace& tr, double t, const Signals& s) {
  tr.t.push_back(t);
  tr.df1.push_back(s.df[0]);
  tr.df2.push_back(s.df[1]);
  tr.dptie.push_back(s.ptie[0]);
  tr.ace1.push_back(s.ace[0]);
  tr.ace2.push_back(s.ace[1]);
  tr.u1.push_back(s.u[0]);
  tr.u2.push_back(s.u[1]);
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& f) {
  double acc = 0.0;
  for (std::size_t k = 1; k < t.size(); ++k) acc += 0.5 * (t[k] - t[k - 1]) * (f[k] + f[k - 1]);
  return acc;
}

}  // namespace

void AreaParams::validate(const char* prefix) const {
  require(t_ps > 0.0, prefix, "t_ps", "must be > 0");
  require(t_g > 0.0, prefix, "t_g", "must be > 0");
  require(t_t > 0.0, prefix, "t_t", "must be > 0");
  require(t_r > 0.0, prefix, "t_r", "must be > 0");
  require(k_ps > 0.0, prefix, "k_ps", "must be > 0");
  require(r > 0.0, prefix, "r", "must be > 0");
  require(b > 0.0, prefix, "b", "must be > 0");
  require(k_r >= 0.0 && k_r <= 1.0, prefix, "k_r", "must lie in [0, 1]");
  require(grc_delta >= 0.0 && std::isfinite(grc_delta), prefix, "grc_delta", "must be finite and >= 0 (0 disables)");
  require(dead_band_half >= 0.0 && std::isfinite(dead_band_half), prefix, "dead_band_half", "must be finite and >= 0");
}

void LoadProfile::validate(const char* prefix) const {
  require(amplitude >= 0.0 && std::isfinite(amplitude), prefix, "amplitude", "must be finite and >= 0");
  require(start_time >= 0.0 && std::isfinite(start_time), prefix, "start_time", "must be finite and >= 0");
  if (kind == LoadKind::kPiecewiseRandom) require(segment_length > 0.0, prefix, "segment_length", "must be > 0");
}

LoadSignal::LoadSignal(const LoadProfile& profile, double horizon) : profile_(profile) {
  if (profile.kind != LoadKind::kPiecewiseRandom) return;
  std::mt19937_64 gen(profile.seed);
  const double span = std::max(0.0, horizon - profile.start_time);
  const auto count = static_cast<std::size_t>(std::floor(span / profile.segment_length)) + 1;
  segments_.reserve(count);
  for (std::size_t k = 0; k < count; ++k) segments_.push_back(profile.amplitude * unit_draw(gen));
}

double LoadSignal::at(double t) const {
  constexpr double eps = 1e-9;
  if (t + eps < profile_.start_time) return 0.0;
  if (profile_.kind == LoadKind::kStep) return profile_.amplitude;
  const auto idx = static_cast<std::size_t>(std::floor((t - profile_.start_time) / profile_.segment_length + eps));
  return segments_[std::min(idx, segments_.size() - 1)];
}

void PlantConfig::validate() const {
  area1.validate("area1.");
  area2.validate("area2.");
  require(t12 > 0.0 && std::isfinite(t12), "", "t12", "must be > 0");
  require(std::isfinite(a12), "", "a12", "must be finite");
  load1.validate("load1.");
  load2.validate("load2.");
  solver.validate();
}

PlantConfig PlantConfig::linearized() const {
  PlantConfig out = *this;
  for (AreaParams* a : {&out.area1, &out.area2}) {
    a->grc_delta = 0.0;
    a->dead_band_half = 0.0;
  }
  return out;
}

double frequency_bias(double r, double d) {
  if (!(r > 0.0)) throw InvalidArgument("frequency_bias: droop r must be > 0");
  if (!(d >= 0.0)) throw InvalidArgument("frequency_bias: damping d must be >= 0");
  return 1.0 / r + d;
}

SimTrace simulate(const PlantConfig& config, const fractional::RealizedController& ctrl1,
                  const fractional::RealizedController& ctrl2) {
  config.validate();
  const std::size_t steps = config.solver.steps();
  const double h = config.solver.step_h;
  const LoadSignal load1(config.load1, config.solver.horizon_T);
  const LoadSignal load2(config.load2, config.solver.horizon_T);

  TwoAreaLoop loop(config, ctrl1, ctrl2);
  SimTrace tr;
  for (auto* v : {&tr.t, &tr.df1, &tr.df2, &tr.dptie, &tr.ace1, &tr.ace2, &tr.u1, &tr.u2}) v->reserve(steps + 1);

  record(tr, 0.0, loop.current());
  for (std::size_t n = 0; n < steps; ++n) {
    const double t = static_cast<double>(n) * h;
    if (!loop.step(h, load1.at(t), load2.at(t))) {
      tr.diverged = true;
      tr.divergence_time = static_cast<double>(n + 1) * h;
      const double nan = std::numeric_limits<double>::quiet_NaN();
      Signals blank;
      for (auto* arr : {&blank.df, &blank.ptie, &blank.ace, &blank.u}) arr->fill(nan);
      for (std::size_t k = n + 1; k <= steps; ++k) record(tr, static_cast<double>(k) * h, blank);
      return tr;
    }
    record(tr, static_cast<double>(n + 1) * h, loop.current());
  }
  return tr;
}

ObjectiveVector evaluate_objectives(const SimTrace& trace) {
  if (trace.diverged) return {kDivergencePenalty, kDivergencePenalty};
  const std::size_t n = trace.size();
  std::vector<double> itse(n), isdco(n);
  for (std::size_t k = 0; k < n; ++k) {
    itse[k] = trace.t[k] * (trace.ace1[k] * trace.ace1[k] + trace.ace2[k] * trace.ace2[k]);
    isdco[k] = trace.u1[k] * trace.u1[k] + trace.u2[k] * trace.u2[k];
  }
  ObjectiveVector out{trapezoid(trace.t, itse), trapezoid(trace.t, isdco)};
  if (!std::isfinite(out.j1_itse) || !std::isfinite(out.j2_isdco)) return {kDivergencePenalty, kDivergencePenalty};
  return out;
}

}  // namespace focdes::plant
