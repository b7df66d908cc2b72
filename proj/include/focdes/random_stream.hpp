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
#include <random>
#include <string_view>
#include <utility>

namespace focdes::nsga2 {

enum class StreamKind { kUniform, kLogistic, kHenon };

std::string_view to_string(StreamKind k);
StreamKind parse_stream_kind(std::string_view name);

inline double logistic_next(double x, double a = 4.0) { return a * x * (1.0 - x); }

inline std::pair<double, double> henon_next(double x, double y, double a = 1.4, double b = 0.3) {
  return {y + 1.0 - a * x * x, b * x};
}

/**
 * Random numbers on [0, 1] for the evolutionary operators.
 *
 * Uniform streams are a seeded 64-bit Mersenne twister reduced to 53-bit
 * doubles. Chaotic streams multiply the scaled map orbit by a uniform draw
 * from the same generator, which skews mass toward 0. The map seeds are
 * drawn from the uniform generator, so one 64-bit seed fixes the sequence.
 */
class RandomStream {
 public:
  RandomStream(StreamKind kind, std::uint64_t seed);

  double next();
  /// Standard normal deviate via Box-Muller on two stream draws.
  double next_gaussian();
  /// Index in [0, n).
  std::size_t next_index(std::size_t n);

  StreamKind kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }

  // Map state, exposed for tests.
  double logistic_state() const { return logistic_x_; }
  std::pair<double, double> henon_state() const { return {henon_x_, henon_y_}; }

  double uniform();
  /// Chaotic value in [0, 1] before the uniform product; advances the map.
  double chaotic();

 private:
  void seed_logistic();
  void seed_henon();

  StreamKind kind_;
  std::uint64_t seed_;
  std::mt19937_64 gen_;
  double logistic_x_ = 0.0;
  double henon_x_ = 0.0;
  double henon_y_ = 0.0;
};

}  // namespace focdes::nsga2
