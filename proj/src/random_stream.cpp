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

#include "focdes/random_stream.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "focdes/error.hpp"

namespace focdes::nsga2 {

namespace {

constexpr double kHenonLow = -1.5;
constexpr double kHenonHigh = 1.5;
constexpr double kHenonEscape = 10.0;

bool near_degenerate(double x) {
  for (double bad : {0.25, 0.5, 0.75}) {
    if (std::abs(x - bad) < 1e-3) return true;
  }
  return false;
}

}  // namespace

std::string_view to_string(StreamKind k) {
  switch (k) {
    case StreamKind::kUniform:
      return "uniform";
    case StreamKind::kLogistic:
      return "logistic";
    case StreamKind::kHenon:
      return "henon";
  }
  return "uniform";
}

StreamKind parse_stream_kind(std::string_view name) {
  if (name == "uniform") return StreamKind::kUniform;
  if (name == "logistic") return StreamKind::kLogistic;
  if (name == "henon") return StreamKind::kHenon;
  throw InvalidArgument("unknown optimizer variant '" + std::string(name) + "' (expected uniform, logistic, henon)");
}

RandomStream::RandomStream(StreamKind kind, std::uint64_t seed) : kind_(kind), seed_(seed), gen_(seed) {
  if (kind_ == StreamKind::kLogistic) seed_logistic();
  if (kind_ == StreamKind::kHenon) seed_henon();
}

double RandomStream::uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

void RandomStream::seed_logistic() {
  do {
    logistic_x_ = 0.01 + 0.98 * uniform();
  } while (near_degenerate(logistic_x_) || logistic_x_ <= 0.01);
}

void RandomStream::seed_henon() {
  henon_x_ = -0.5 + uniform();
  henon_y_ = -0.1 + 0.2 * uniform();
}

double RandomStream::chaotic() {
  if (kind_ == StreamKind::kLogistic) {
    const double next = logistic_next(logistic_x_);
    // Floating-point orbits can collapse onto 0 or the fixed point 3/4.
    if (!(next > 0.0 && next < 1.0) || std::abs(next - 0.75) < 1e-12 || next == logistic_x_) {
      seed_logistic();
    } else {
      logistic_x_ = next;
    }
    return logistic_x_;
  }
  auto [x, y] = henon_next(henon_x_, henon_y_);
  if (!std::isfinite(x) || std::abs(x) > kHenonEscape) {
    seed_henon();
    std::tie(x, y) = henon_next(henon_x_, henon_y_);
  }
  henon_x_ = x;
  henon_y_ = y;
  return std::clamp((x - kHenonLow) / (kHenonHigh - kHenonLow), 0.0, 1.0);
}

double RandomStream::next() {
  if (kind_ == StreamKind::kUniform) return uniform();
  const double c = chaotic();
  return c * uniform();
}

double RandomStream::next_gaussian() {
  const double u1 = std::max(next(), 1e-300);
  const double u2 = next();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t RandomStream::next_index(std::size_t n) {
  const auto idx = static_cast<std::size_t>(next() * static_cast<double>(n));
  return std::min(idx, n - 1);
}

}  // namespace focdes::nsga2
