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

#include "focdes/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "focdes/error.hpp"

namespace focdes::pareto {

namespace {

constexpr double kTieTolerance = 1e-12;

void require_two_objectives(const Points& front, const char* what) {
  for (const auto& p : front) {
    if (p.size() != 2) throw InvalidArgument(std::string(what) + ": points must have two objectives");
  }
}

void require_common_dimension(const Points& front, const char* what) {
  for (const auto& p : front) {
    if (p.size() != front.front().size()) throw InvalidArgument(std::string(what) + ": ragged point dimensions");
  }
}

// Non-dominated, de-duplicated points sorted by x ascending.
Points staircase(const Points& front) {
  Points pts = front;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  Points out;
  double best_y = std::numeric_limits<double>::infinity();
  for (const auto& p : pts) {
    if (p[1] < best_y) {
      out.push_back(p);
      best_y = p[1];
    }
  }
  return out;
}

}  // namespace

Points ParetoFront::objectives() const {
  Points out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.objectives);
  return out;
}

bool dominates(const Point& u, const Point& v) {
  if (u.size() != v.size()) throw InvalidArgument("dominates: objective vectors differ in length");
  bool strict = false;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] > v[i]) return false;
    if (u[i] < v[i]) strict = true;
  }
  return strict;
}

bool is_mutually_non_dominated(const Points& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (i != j && dominates(pts[i], pts[j])) return false;
    }
  }
  return true;
}

namespace {

double staircase_area(const Points& front, HvFormula formula, bool allow_zero) {
  if (front.empty()) throw InvalidArgument("hypervolume: empty front");
  require_two_objectives(front, "hypervolume");
  for (const auto& p : front) {
    const bool in_domain = allow_zero ? p[0] >= 0.0 && p[1] >= 0.0 : p[0] > 0.0 && p[1] > 0.0;
    if (!in_domain || !std::isfinite(p[0]) || !std::isfinite(p[1])) {
      throw InvalidArgument(allow_zero ? "hypervolume: coordinates must be finite and non-negative"
                                       : "hypervolume: coordinates must be finite and positive");
    }
  }
  const Points stairs = staircase(front);
  double area = 0.0;
  double prev_x = 0.0;
  double prev_y = 0.0;
  for (const auto& p : stairs) {
    if (formula == HvFormula::kArea) {
      area += (p[0] - prev_x) * p[1];
    } else {
      area += (p[0] - prev_x) * (p[1] - prev_y);
    }
    prev_x = p[0];
    prev_y = p[1];
  }
  return area;
}

}  // namespace

double hypervolume_to_origin(const Points& front, HvFormula formula) {
  return staircase_area(front, formula, false);
}

double spacing_metric(const Points& front) {
  if (front.size() < 2) throw InvalidArgument("spacing: front needs at least two points");
  require_common_dimension(front, "spacing");
  const std::size_t s = front.size();
  std::vector<double> d(s, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      if (i == j) continue;
      double dist = 0.0;
      for (std::size_t k = 0; k < front[i].size(); ++k) dist += std::abs(front[i][k] - front[j][k]);
      d[i] = std::min(d[i], dist);
    }
  }
  const double mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(s);
  double sum_sq = 0.0;
  for (double di : d) sum_sq += (mean - di) * (mean - di);
  return std::sqrt(sum_sq / static_cast<double>(s - 1));
}

double pareto_spread(const Points& front) {
  if (front.empty()) throw InvalidArgument("spread: empty front");
  require_two_objectives(front, "spread");
  if (front.size() == 1) return 0.0;
  auto by_x = [](const Point& a, const Point& b) { return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]); };
  const Point& first = *std::min_element(front.begin(), front.end(), by_x);
  auto by_x_desc_then_y = [](const Point& a, const Point& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] > b[1]);
  };
  const Point& last = *std::max_element(front.begin(), front.end(), by_x_desc_then_y);
  return std::hypot(last[0] - first[0], last[1] - first[1]);
}

double diversity_metric(const Points& front) {
  if (front.empty()) throw InvalidArgument("diversity: empty front");
  require_common_dimension(front, "diversity");
  const std::size_t m = front.front().size();
  double inertia = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double centroid = 0.0;
    for (const auto& p : front) centroid += p[i];
    centroid /= static_cast<double>(front.size());
    for (const auto& p : front) inertia += (p[i] - centroid) * (p[i] - centroid);
  }
  return inertia;
}

double fuzzy_membership(double f, double f_min, double f_max) {
  if (f_min > f_max) throw InvalidArgument("fuzzy_membership: f_min exceeds f_max");
  if (f <= f_min) return 1.0;
  if (f >= f_max) return 0.0;
  return (f_max - f) / (f_max - f_min);
}

std::vector<double> compromise_scores(const Points& front) {
  if (front.empty()) throw InvalidArgument("best_compromise: empty front");
  require_common_dimension(front, "best_compromise");
  const std::size_t m = front.front().size();
  std::vector<double> raw(front.size(), 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double lo = front.front()[i];
    double hi = lo;
    for (const auto& p : front) {
      lo = std::min(lo, p[i]);
      hi = std::max(hi, p[i]);
    }
    for (std::size_t k = 0; k < front.size(); ++k) raw[k] += fuzzy_membership(front[k][i], lo, hi);
  }
  const double total = std::accumulate(raw.begin(), raw.end(), 0.0);
  for (double& r : raw) r = total > 0.0 ? r / total : 0.0;
  return raw;
}

std::size_t best_compromise(const Points& front) {
  const std::vector<double> score = compromise_scores(front);
  const double top = *std::max_element(score.begin(), score.end());
  std::size_t best = front.size();
  for (std::size_t k = 0; k < front.size(); ++k) {
    if (score[k] < top - kTieTolerance * std::max(1.0, std::abs(top))) continue;
    if (best == front.size() || front[k][0] < front[best][0]) best = k;
  }
  return best;
}

MetricReport compute_metrics(const Points& front) {
  MetricReport r;
  // Optimizer objectives are integrals of squares and may be exactly zero.
  r.hypervolume = staircase_area(front, HvFormula::kArea, true);
  r.spacing = front.size() >= 2 ? spacing_metric(front) : 0.0;
  r.spread = pareto_spread(front);
  r.diversity = diversity_metric(front);
  return r;
}

std::string_view to_string(Criterion c) {
  switch (c) {
    case Criterion::kMinHypervolume:
      return "min-hypervolume";
    case Criterion::kMaxDiversity:
      return "max-diversity";
    case Criterion::kMaxSpread:
      return "max-spread";
    case Criterion::kMinSpacing:
      return "min-spacing";
  }
  return "min-hypervolume";
}

Criterion parse_criterion(std::string_view name) {
  for (Criterion c : {Criterion::kMinHypervolume, Criterion::kMaxDiversity, Criterion::kMaxSpread,
                      Criterion::kMinSpacing}) {
    if (name == to_string(c)) return c;
  }
  throw InvalidArgument("unknown criterion '" + std::string(name) +
                        "' (expected min-hypervolume, max-diversity, max-spread, min-spacing)");
}

double criterion_value(const MetricReport& m, Criterion c) {
  switch (c) {
    case Criterion::kMinHypervolume:
      return m.hypervolume;
    case Criterion::kMaxDiversity:
      return m.diversity;
    case Criterion::kMaxSpread:
      return m.spread;
    case Criterion::kMinSpacing:
      return m.spacing;
  }
  return m.hypervolume;
}

std::size_t select_best_front_index(const std::vector<ParetoFront>& fronts, Criterion c) {
  if (fronts.empty()) throw InvalidArgument("select_best_front: no fronts");
  const bool minimize = c == Criterion::kMinHypervolume || c == Criterion::kMinSpacing;
  std::size_t best = 0;
  double best_value = 0.0;
  for (std::size_t i = 0; i < fronts.size(); ++i) {
    const double v = criterion_value(compute_metrics(fronts[i].objectives()), c);
    if (i == 0 || (minimize ? v < best_value : v > best_value)) {
      best = i;
      best_value = v;
    }
  }
  return best;
}

const ParetoFront& select_best_front(const std::vector<ParetoFront>& fronts, Criterion c) {
  return fronts[select_best_front_index(fronts, c)];
}

double quantile_inclusive(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw InvalidArgument("quantile: no samples");
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

BoxSummary box_summary(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("box_summary: no samples");
  std::sort(values.begin(), values.end());
  BoxSummary b;
  b.count = values.size();
  b.min = values.front();
  b.max = values.back();
  b.q1 = quantile_inclusive(values, 0.25);
  b.median = quantile_inclusive(values, 0.5);
  b.q3 = quantile_inclusive(values, 0.75);
  const double iqr = b.q3 - b.q1;
  const double lo_fence = b.q1 - 1.5 * iqr;
  const double hi_fence = b.q3 + 1.5 * iqr;
  b.whisker_low = b.max;
  b.whisker_high = b.min;
  for (double v : values) {
    if (v < lo_fence || v > hi_fence) {
      ++b.outliers;
      continue;
    }
    b.whisker_low = std::min(b.whisker_low, v);
    b.whisker_high = std::max(b.whisker_high, v);
  }
  return b;
}

}  // namespace focdes::pareto
