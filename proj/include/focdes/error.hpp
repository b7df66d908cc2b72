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

#include <stdexcept>
#include <string>
#include <vector>

namespace focdes {

enum class ErrorCode {
  kInvalidArgument = 2,
  kDiverged = 3,
  kIo = 4,
  kCancelled = 5,
  kEvaluation = 6,
};

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorCode::kInvalidArgument, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::kIo, what) {}
};

class Cancelled : public Error {
 public:
  Cancelled() : Error(ErrorCode::kCancelled, "operation cancelled") {}
};

/// Raised when an integrated state becomes non-finite or overflows.
class SimulationDiverged : public Error {
 public:
  explicit SimulationDiverged(double time)
      : Error(ErrorCode::kDiverged, "simulation diverged at t=" + std::to_string(time)), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// An objective evaluation threw; carries the genome that triggered it.
class EvaluationError : public Error {
 public:
  EvaluationError(std::vector<double> genome, const std::string& what)
      : Error(ErrorCode::kEvaluation, what), genome_(std::move(genome)) {}
  const std::vector<double>& genome() const noexcept { return genome_; }

 private:
  std::vector<double> genome_;
};

}  // namespace focdes
