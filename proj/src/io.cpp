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

#include "focdes/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "focdes/error.hpp"

namespace focdes::io {

namespace fs = std::filesystem;

namespace {

json area_to_json(const plant::AreaParams& a) {
  return {{"k_ps", a.k_ps}, {"t_ps", a.t_ps}, {"r", a.r},     {"b", a.b},
          {"t_g", a.t_g},   {"t_t", a.t_t},   {"t_r", a.t_r}, {"k_r", a.k_r},
          {"grc_delta", a.grc_delta}, {"dead_band_half", a.dead_band_half}};
}

json load_to_json(const plant::LoadProfile& l) {
  return {{"kind", l.kind == plant::LoadKind::kStep ? "step" : "random"},
          {"amplitude", l.amplitude},
          {"start_time", l.start_time},
          {"segment_length", l.segment_length},
          {"seed", l.seed}};
}

bool same_kind(const json& want, const json& got) {
  if (want.is_number()) return got.is_number();
  if (want.is_boolean()) return got.is_boolean();
  if (want.is_string()) return got.is_string();
  if (want.is_object()) return got.is_object();
  return want.type() == got.type();
}

std::string kind_name(const json& j) {
  if (j.is_number()) return "a number";
  if (j.is_object()) return "an object";
  if (j.is_string()) return "a string";
  if (j.is_boolean()) return "a boolean";
  return "a value of another type";
}

// Merges `patch` into `base`, which fixes the schema.
void merge_checked(json& base, const json& patch, const std::string& path) {
  if (!patch.is_object()) throw InvalidArgument((path.empty() ? "config" : path) + ": expected an object");
  for (auto it = patch.begin(); it != patch.end(); ++it) {
    const std::string key = path.empty() ? it.key() : path + "." + it.key();
    if (!base.contains(it.key())) throw InvalidArgument(key + ": unknown field");
    json& slot = base[it.key()];
    if (!same_kind(slot, it.value())) throw InvalidArgument(key + ": expected " + kind_name(slot));
    if (slot.is_object()) {
      merge_checked(slot, it.value(), key);
    } else {
      slot = it.value();
    }
  }
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw InvalidArgument("override '" + assignment + "': expected key=value");
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  // Rebuild the override as a nested patch so it goes through the same checks.
  json patch = value;
  std::string rest = key;
  std::vector<std::string> parts;
  for (std::size_t pos; (pos = rest.find('.')) != std::string::npos; rest = rest.substr(pos + 1)) {
    parts.push_back(rest.substr(0, pos));
  }
  parts.push_back(rest);
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    if (it->empty()) throw InvalidArgument("override '" + assignment + "': empty path component");
    patch = json{{*it, patch}};
  }
  merge_checked(doc, patch, "");
}

double num(const json& j, const char* key) { return j.at(key).get<double>(); }

std::uint64_t seed_value(const json& j, const std::string& path) {
  const json& v = j.at("seed");
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::uint64_t>(v.get<long long>());
  throw InvalidArgument(path + ".seed: must be a non-negative integer");
}

plant::AreaParams area_from_json(const json& j) {
  plant::AreaParams a;
  a.k_ps = num(j, "k_ps");
  a.t_ps = num(j, "t_ps");
  a.r = num(j, "r");
  a.b = num(j, "b");
  a.t_g = num(j, "t_g");
  a.t_t = num(j, "t_t");
  a.t_r = num(j, "t_r");
  a.k_r = num(j, "k_r");
  a.grc_delta = num(j, "grc_delta");
  a.dead_band_half = num(j, "dead_band_half");
  return a;
}

plant::LoadProfile load_from_json(const json& j, const std::string& path) {
  plant::LoadProfile l;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "step") {
    l.kind = plant::LoadKind::kStep;
  } else if (kind == "random") {
    l.kind = plant::LoadKind::kPiecewiseRandom;
  } else {
    throw InvalidArgument(path + ".kind: expected step or random");
  }
  l.amplitude = num(j, "amplitude");
  l.start_time = num(j, "start_time");
  l.segment_length = num(j, "segment_length");
  l.seed = seed_value(j, path);
  return l;
}

fractional::FopidParams fopid_from_json(const json& j, const std::string& path, std::optional<fractional::Family> family) {
  if (!j.is_object()) throw InvalidArgument(path + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k != "kp" && k != "ki" && k != "kd" && k != "lambda" && k != "mu") {
      throw InvalidArgument(path + "." + k + ": unknown field");
    }
    if (!it.value().is_number()) throw InvalidArgument(path + "." + k + ": expected a number");
  }
  fractional::FopidParams p;
  for (const char* k : {"kp", "ki", "kd"}) {
    if (!j.contains(k)) throw InvalidArgument(path + "." + k + ": missing");
  }
  p.kp = j["kp"].get<double>();
  p.ki = j["ki"].get<double>();
  p.kd = j["kd"].get<double>();
  p.lambda = j.value("lambda", 1.0);
  p.mu = j.value("mu", 1.0);
  for (const auto& [name, v] : {std::pair{"kp", p.kp}, std::pair{"ki", p.ki}, std::pair{"kd", p.kd}}) {
    if (!(v >= 0.0 && v <= 10.0)) throw InvalidArgument(path + "." + name + ": must lie in [0, 10]");
  }
  if (!(p.lambda >= 0.0 && p.lambda <= 2.0)) throw InvalidArgument(path + ".lambda: must lie in [0, 2]");
  if (!(p.mu >= 0.0 && p.mu <= 2.0)) throw InvalidArgument(path + ".mu: must lie in [0, 2]");
  if (family) {
    p.family = *family;
  } else if (!j.contains("lambda") && !j.contains("mu")) {
    p.family = fractional::Family::kPid;
  } else {
    p.family = p.lambda <= 1.0 ? fractional::Family::kSlow : fractional::Family::kFast;
  }
  try {
    p.validate();
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
  return p;
}

json fopid_to_json(const fractional::FopidParams& p) {
  json j{{"kp", p.kp}, {"ki", p.ki}, {"kd", p.kd}};
  if (p.family != fractional::Family::kPid) {
    j["lambda"] = p.lambda;
    j["mu"] = p.mu;
  }
  return j;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_number(const std::string& s, const std::string& where) {
  std::string t = s;
  while (!t.empty() && (t.back() == '\r' || t.back() == ' ')) t.pop_back();
  if (t == "nan") return std::nan("");
  if (t == "inf") return HUGE_VAL;
  if (t == "-inf") return -HUGE_VAL;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw InvalidArgument(where + ": '" + s + "' is not a number");
  }
  return v;
}

}  // namespace

json to_json(const StudyConfig& cfg) {
  const plant::PlantConfig& p = cfg.plant;
  return {{"area1", area_to_json(p.area1)},
          {"area2", area_to_json(p.area2)},
          {"t12", p.t12},
          {"a12", p.a12},
          {"load1", load_to_json(p.load1)},
          {"load2", load_to_json(p.load2)},
          {"solver", {{"step_h", p.solver.step_h}, {"horizon_T", p.solver.horizon_T}}},
          {"realization",
           {{"omega_b", cfg.realization.omega_b},
            {"omega_h", cfg.realization.omega_h},
            {"n_half", cfg.realization.n_half}}}};
}

StudyConfig config_from_json(const json& doc, const std::vector<std::string>& overrides) {
  json merged = to_json(StudyConfig{});
  merge_checked(merged, doc, "");
  for (const auto& o : overrides) apply_override(merged, o);
  StudyConfig cfg;
  cfg.plant.area1 = area_from_json(merged["area1"]);
  cfg.plant.area2 = area_from_json(merged["area2"]);
  cfg.plant.t12 = num(merged, "t12");
  cfg.plant.a12 = num(merged, "a12");
  cfg.plant.load1 = load_from_json(merged["load1"], "load1");
  cfg.plant.load2 = load_from_json(merged["load2"], "load2");
  cfg.plant.solver.step_h = num(merged["solver"], "step_h");
  cfg.plant.solver.horizon_T = num(merged["solver"], "horizon_T");
  const json& r = merged["realization"];
  cfg.realization.omega_b = num(r, "omega_b");
  cfg.realization.omega_h = num(r, "omega_h");
  const double n_half = num(r, "n_half");
  if (n_half != std::floor(n_half) || n_half < 1 || n_half > 50) {
    throw InvalidArgument("realization.n_half: must be an integer in [1, 50]");
  }
  cfg.realization.n_half = static_cast<int>(n_half);
  cfg.plant.validate();
  fractional::OustaloupSpec{0.0, cfg.realization.omega_b, cfg.realization.omega_h, cfg.realization.n_half}.validate();
  return cfg;
}

StudyConfig load_config(const std::optional<fs::path>& path, const std::vector<std::string>& overrides) {
  const json doc = path ? read_json_file(*path) : json::object();
  try {
    return config_from_json(doc, overrides);
  } catch (const InvalidArgument& e) {
    throw InvalidArgument((path ? path->string() + ": " : std::string()) + e.what());
  }
}

experiments::ControllerPair params_from_json(const json& doc) {
  if (!doc.is_object()) throw InvalidArgument("params: expected an object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() != "family" && it.key() != "area1" && it.key() != "area2") {
      throw InvalidArgument(it.key() + ": unknown field");
    }
  }
  std::optional<fractional::Family> family;
  if (doc.contains("family")) {
    if (!doc["family"].is_string()) throw InvalidArgument("family: expected a string");
    family = fractional::parse_family(doc["family"].get<std::string>());
  }
  for (const char* k : {"area1", "area2"}) {
    if (!doc.contains(k)) throw InvalidArgument(std::string(k) + ": missing");
  }
  return {fopid_from_json(doc["area1"], "area1", family), fopid_from_json(doc["area2"], "area2", family)};
}

json params_to_json(const experiments::ControllerPair& params) {
  return {{"family", std::string(fractional::to_string(params.first.family))},
          {"area1", fopid_to_json(params.first)},
          {"area2", fopid_to_json(params.second)}};
}

experiments::ControllerPair load_params(const fs::path& path) {
  try {
    return params_from_json(read_json_file(path));
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InvalidArgument(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

json read_json_file(const fs::path& path) { return parse_json_text(read_text_file(path), path.string()); }

void write_text_file(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw IoError("write failed for " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move " + tmp.string() + " into place: " + ec.message());
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // no "-0" in output files
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string trace_csv(const plant::SimTrace& tr) {
  std::string out = "t,df1,df2,dptie,ace1,ace2,u1,u2\n";
  out.reserve(tr.size() * 120);
  for (std::size_t k = 0; k < tr.size(); ++k) {
    for (const auto* col : {&tr.t, &tr.df1, &tr.df2, &tr.dptie, &tr.ace1, &tr.ace2, &tr.u1, &tr.u2}) {
      if (col != &tr.t) out += ',';
      out += format_number((*col)[k]);
    }
    out += '\n';
  }
  return out;
}

std::string front_csv(const pareto::ParetoFront& front) {
  const std::size_t n_var = front.points.empty() ? 0 : front.points.front().genome.size();
  std::string out;
  for (std::size_t i = 0; i < n_var; ++i) out += "genome_" + std::to_string(i) + ",";
  out += "j1,j2\n";
  for (const auto& p : front.points) {
    for (double g : p.genome) out += format_number(g) + ",";
    out += format_number(p.objectives.at(0)) + "," + format_number(p.objectives.at(1)) + "\n";
  }
  return out;
}

pareto::ParetoFront parse_front_csv(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument(origin + ": empty front file");
  const auto header = split(line, ',');
  if (header.size() < 2 || header[header.size() - 2] != "j1" || split(header.back(), '\r').front() != "j2") {
    throw InvalidArgument(origin + ":1: header must end with j1,j2");
  }
  for (std::size_t i = 0; i + 2 < header.size(); ++i) {
    if (header[i] != "genome_" + std::to_string(i)) throw InvalidArgument(origin + ":1: unexpected column " + header[i]);
  }
  pareto::ParetoFront front;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto cells = split(line, ',');
    const std::string where = origin + ":" + std::to_string(lineno);
    if (cells.size() != header.size()) throw InvalidArgument(where + ": expected " + std::to_string(header.size()) + " fields");
    pareto::FrontPoint p;
    for (std::size_t i = 0; i + 2 < cells.size(); ++i) p.genome.push_back(parse_number(cells[i], where));
    p.objectives = {parse_number(cells[cells.size() - 2], where), parse_number(cells.back(), where)};
    front.points.push_back(std::move(p));
  }
  if (front.points.empty()) throw InvalidArgument(origin + ": front has no points");
  return front;
}

json provenance_to_json(const pareto::Provenance& p) {
  return {{"variant", p.variant},         {"family", p.family},         {"run", p.run},
          {"seed", p.seed},               {"generations", p.generations}, {"evaluations", p.evaluations},
          {"stalled", p.stalled},         {"cancelled", p.cancelled}};
}

pareto::Provenance provenance_from_json(const json& d) {
  pareto::Provenance p;
  p.variant = d.value("variant", "");
  p.family = d.value("family", "");
  p.run = d.value("run", 0);
  p.seed = d.value("seed", std::uint64_t{0});
  p.generations = d.value("generations", 0);
  p.evaluations = d.value("evaluations", 0LL);
  p.stalled = d.value("stalled", false);
  p.cancelled = d.value("cancelled", false);
  return p;
}

std::string metrics_csv(const std::vector<experiments::MetricRow>& rows) {
  std::string out = "variant,controller,run,hypervolume,spacing,spread,diversity,seconds\n";
  for (const auto& r : rows) {
    out += r.variant + "," + r.controller + "," + std::to_string(r.run) + "," + format_number(r.metrics.hypervolume) +
           "," + format_number(r.metrics.spacing) + "," + format_number(r.metrics.spread) + "," +
           format_number(r.metrics.diversity) + "," + format_number(r.seconds) + "\n";
  }
  return out;
}

std::string boxplots_csv(const std::vector<experiments::CaseBoxplot>& boxes) {
  std::string out = "variant,controller,metric,min,q1,median,q3,max,whisker_low,whisker_high,outliers,count\n";
  for (const auto& c : boxes) {
    for (const char* metric : {"hypervolume", "spacing", "spread", "diversity", "seconds"}) {
      const auto it = c.metrics.find(metric);
      if (it == c.metrics.end()) continue;
      const pareto::BoxSummary& b = it->second;
      out += c.variant + "," + c.controller + "," + metric;
      for (double v : {b.min, b.q1, b.median, b.q3, b.max, b.whisker_low, b.whisker_high}) out += "," + format_number(v);
      out += "," + std::to_string(b.outliers) + "," + std::to_string(b.count) + "\n";
    }
  }
  return out;
}

json trace_summary_to_json(const experiments::TraceSummary& s) {
  auto finite_or_null = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  return {{"itse", s.itse},
          {"isdco", s.isdco},
          {"peak_abs_df1", finite_or_null(s.peak_df1)},
          {"peak_abs_df2", finite_or_null(s.peak_df2)},
          {"final_df1", finite_or_null(s.final_df1)},
          {"final_df2", finite_or_null(s.final_df2)},
          {"settling_time", finite_or_null(s.settling_time)},
          {"settling_band", experiments::kSettleBand},
          {"verdict", std::string(experiments::to_string(s.verdict))}};
}

json moo_to_json(const nsga2::MooConfig& m) {
  return {{"pop_size", m.pop_size},
          {"max_gen", m.max_gen},
          {"func_tol", m.func_tol},
          {"stall_window", m.stall_window},
          {"crossover_fraction", m.crossover_fraction},
          {"mutation_fraction", m.mutation_fraction},
          {"tournament_size", m.tournament_size},
          {"pareto_fraction", m.pareto_fraction},
          {"sigma_start", m.sigma_start},
          {"sigma_end", m.sigma_end}};
}

}  // namespace focdes::io
