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
#include <string>
#include <string_view>
#include <vector>

namespace focdes::pareto {

using Point = std::vector<double>;
using Points = std::vector<Point>;

struct Provenance {
  std::string variant;
  std::string family;
  int run = 0;
  std::uint64_t seed = 0;
  int generations = 0;
  long long evaluations = 0;
  bool stalled = false;
  bool cancelled = false;
};

struct FrontPoint {
  std::vector<double> genome;
  std::vector<double> objectives;
};

struct ParetoFront {
  std::vector<FrontPoint> points;
  Provenance provenance;

  Points objectives() const;
  std::size_t size() const { return points.size(); }
};

/// True iff u <= v in every coordinate and u < v in at least one.
bool dominates(const Point& u, const Point& v);
bool is_mutually_non_dominated(const Points& pts);

enum class HvFormula {
  kArea,              // union of origin-anchored rectangles
  kIncrementProduct,  // sum of (x_i - x_{i-1}) * (y_i - y_{i-1}) from the origin
};

/// Area between a two-objective minimization front and the origin. Smaller is better.
double hypervolume_to_origin(const Points& front, HvFormula formula = HvFormula::kArea);
/// Standard deviation of nearest-neighbour Manhattan distances.
double spacing_metric(const Points& front);
/// Euclidean distance between the endpoints of the x-sorted front.
double pareto_spread(const Points& front);
/// Moment of inertia about the centroid.
double diversity_metric(const Points& front);

double fuzzy_membership(double f, double f_min, double f_max);
/// Normalized fuzzy satisfaction of every front member.
std::vector<double> compromise_scores(const Points& front);
/// Argmax of the satisfaction; near-ties go to the lowest first objective, then lowest index.
std::size_t best_compromise(const Points& front);

struct MetricReport {
  double hypervolume = 0.0;
  double spacing = 0.0;
  double spread = 0.0;
  double diversity = 0.0;
};

/// All four metrics; a singleton front reports spacing 0. Zero objective values are accepted here.
MetricReport compute_metrics(const Points& front);

enum class Criterion { kMinHypervolume, kMaxDiversity, kMaxSpread, kMinSpacing };

std::string_view to_string(Criterion c);
Criterion parse_criterion(std::string_view name);
double criterion_value(const MetricReport& m, Criterion c);

/// Index of the best front under the criterion; ties keep the earliest.
std::size_t select_best_front_index(const std::vector<ParetoFront>& fronts, Criterion c);
const ParetoFront& select_best_front(const std::vector<ParetoFront>& fronts, Criterion c);

struct BoxSummary {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double whisker_low = 0.0;   // smallest sample >= q1 - 1.5 IQR
  double whisker_high = 0.0;  // largest sample <= q3 + 1.5 IQR
  std::size_t outliers = 0;
  std::size_t count = 0;
};

/// Linear-interpolation quantile on sorted data at position p * (n - 1).
double quantile_inclusive(const std::vector<double>& sorted, double p);
BoxSummary box_summary(std::vector<double> values);

}  // namespace focdes::pareto
