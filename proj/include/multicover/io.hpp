// JSON file formats: versioned instance and solution files, plus report
// serialization for the CLI. Doubles round-trip exactly through the shortest
// decimal representation; non-finite numbers are rejected at load time.
#pragma once

#include <cmath>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "multicover/cover.hpp"
#include "multicover/model.hpp"

namespace multicover {

using json = nlohmann::json;

inline json instance_to_json(const Instance& inst) {
  json j;
  j["version"] = 1;
  j["dim"] = inst.dim;
  j["alpha"] = inst.alpha;
  j["norm"] = to_string(inst.norm);
  j["servers"] = inst.servers;
  j["clients"] = inst.clients;
  j["kappa"] = inst.kappa;
  return j;
}

inline Instance instance_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("instance: not an object");
  if (!j.contains("version") || j.at("version").get<int>() != 1)
    throw std::invalid_argument("instance: unsupported version");
  Instance inst;
  inst.dim = j.at("dim").get<int>();
  inst.alpha = j.at("alpha").get<double>();
  inst.norm = norm_from_string(j.at("norm").get<std::string>());
  inst.servers = j.at("servers").get<std::vector<Point>>();
  inst.clients = j.at("clients").get<std::vector<Point>>();
  inst.kappa = j.at("kappa").get<std::vector<int>>();
  require_valid(inst);  // rejects NaN/inf coordinates and bad kappa
  return inst;
}

struct Solution {
  RadiusAssignment radii;
  double cost = 0.0;
  Norm norm = Norm::linf;
  std::optional<SolveTrace> trace;
};

inline json trace_to_json(const SolveTrace& trace) {
  json levels = json::array();
  for (const auto& rec : trace.levels)
    levels.push_back({{"level", rec.level},
                      {"x_prime_size", rec.x_prime_size},
                      {"outer_cost", rec.outer_cost},
                      {"increase", rec.increase},
                      {"bound", rec.bound},
                      {"primaries", rec.primaries}});
  return json{{"levels", levels},
              {"final_cost", trace.final_cost},
              {"dual_lower_bounds", trace.dual_lower_bounds}};
}

inline SolveTrace trace_from_json(const json& j) {
  SolveTrace trace;
  for (const auto& lj : j.at("levels")) {
    LevelRecord rec;
    rec.level = lj.at("level").get<int>();
    rec.x_prime_size = lj.at("x_prime_size").get<int>();
    rec.outer_cost = lj.at("outer_cost").get<double>();
    rec.increase = lj.at("increase").get<double>();
    rec.bound = lj.at("bound").get<double>();
    rec.primaries = lj.at("primaries").get<std::vector<int>>();
    trace.levels.push_back(std::move(rec));
  }
  trace.final_cost = j.at("final_cost").get<double>();
  trace.dual_lower_bounds =
      j.at("dual_lower_bounds").get<std::vector<double>>();
  return trace;
}

inline json solution_to_json(const Solution& sol) {
  json j;
  j["version"] = 1;
  j["radii"] = sol.radii;
  j["cost"] = sol.cost;
  j["norm"] = to_string(sol.norm);
  if (sol.trace) j["trace"] = trace_to_json(*sol.trace);
  return j;
}

inline Solution solution_from_json(const json& j) {
  if (!j.contains("version") || j.at("version").get<int>() != 1)
    throw std::invalid_argument("solution: unsupported version");
  Solution sol;
  sol.radii = j.at("radii").get<RadiusAssignment>();
  sol.cost = j.at("cost").get<double>();
  sol.norm = norm_from_string(j.at("norm").get<std::string>());
  for (double r : sol.radii)
    if (!(r >= 0.0) || !std::isfinite(r))
      throw std::invalid_argument("solution: radius not a finite nonnegative");
  if (j.contains("trace")) sol.trace = trace_from_json(j.at("trace"));
  return sol;
}

inline std::string dump_pretty(const json& j) { return j.dump(2) + "\n"; }

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::invalid_argument("write failed: " + path);
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return j;
}

inline Instance load_instance(const std::string& path) {
  return instance_from_json(load_json_file(path));
}

inline void save_instance(const std::string& path, const Instance& inst) {
  write_file(path, dump_pretty(instance_to_json(inst)));
}

inline Solution load_solution(const std::string& path) {
  return solution_from_json(load_json_file(path));
}

inline void save_solution(const std::string& path, const Solution& sol) {
  write_file(path, dump_pretty(solution_to_json(sol)));
}

}  // namespace multicover
