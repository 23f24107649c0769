// Copyright 2026 The vsnsim Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vsn/scenario_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace vsn {

namespace {

double get_num(const Json& j, const std::string& path, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ConfigError(path + "." + key + ": missing or not a number");
  }
  return j.at(key).get<double>();
}

double get_num_or(const Json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  return j.at(key).get<double>();
}

// Powers may be spelled either in watts or dBm; watts win when both appear.
double get_power_w(const Json& j, const std::string& path,
                   const std::string& stem) {
  std::string w_key = stem + "_w";
  std::string dbm_key = stem + "_dbm";
  if (j.contains(w_key)) return j.at(w_key).get<double>();
  if (j.contains(dbm_key)) return dbm_to_watts(j.at(dbm_key).get<double>());
  throw ConfigError(path + "." + w_key + ": missing (also accepts " +
                    dbm_key + ")");
}

Json radio_to_json(const RadioModel& r) {
  Json j;
  j["g0"] = r.g0;
  j["gamma"] = r.gamma;
  j["p_max_w"] = r.p_max_w;
  j["alpha_w"] = r.alpha_w;
  j["beta_w"] = r.beta_w;
  j["beta1_j_per_bit"] = r.beta1_j_per_bit;
  j["beta2_j_per_bit_mgamma"] = r.beta2_j_per_bit_mgamma;
  j["rho_j_per_bit"] = r.rho_j_per_bit;
  return j;
}

RadioModel radio_from_json(const Json& j, const std::string& path) {
  RadioModel r;
  r.g0 = get_num(j, path, "g0");
  r.gamma = get_num(j, path, "gamma");
  r.p_max_w = get_power_w(j, path, "p_max");
  r.alpha_w = get_power_w(j, path, "alpha");
  r.beta_w = get_power_w(j, path, "beta");
  r.beta1_j_per_bit = get_num(j, path, "beta1_j_per_bit");
  r.beta2_j_per_bit_mgamma = get_num(j, path, "beta2_j_per_bit_mgamma");
  r.rho_j_per_bit = get_num(j, path, "rho_j_per_bit");
  return r;
}

const char* mode_name(InterferencePowerMode m) {
  return m == InterferencePowerMode::kPMax ? "pmax" : "per_link_min";
}

InterferencePowerMode mode_from_name(const std::string& name,
                                     const std::string& path) {
  if (name == "pmax") return InterferencePowerMode::kPMax;
  if (name == "per_link_min") return InterferencePowerMode::kPerLinkMin;
  throw ConfigError(path + ": expected \"pmax\" or \"per_link_min\", got \"" +
                    name + "\"");
}

}  // namespace

Json scenario_to_json(const Scenario& s) {
  Json j;
  j["area"] = Json{{"width_m", s.area_width_m}, {"height_m", s.area_height_m}};
  j["sensing_range_m"] = s.sensing_range_m;
  j["n_max_per_app"] = s.n_max;
  j["activation_cost_j"] = s.activation_cost_j;
  j["movement_cost_j"] = s.movement_cost_j;
  j["big_k_bps"] = s.big_k_bps;
  j["interference_power_mode"] = mode_name(s.interference_power);
  j["generator_seed"] = s.generator_seed;
  j["radio"] = radio_to_json(s.radio);
  Json nodes = Json::array();
  for (const auto& n : s.nodes) {
    Json nj;
    nj["id"] = n.id;
    nj["x_m"] = n.position.x_m;
    nj["y_m"] = n.position.y_m;
    nj["bandwidth_bps"] = n.bandwidth_bps;
    nj["memory_bytes"] = n.memory_bytes;
    nj["cpu_mips"] = n.cpu_mips;
    nj["initial_energy_j"] = n.initial_energy_j;
    nj["is_sink"] = n.is_sink;
    nodes.push_back(nj);
  }
  j["nodes"] = nodes;
  Json tps = Json::array();
  for (const auto& tp : s.test_points) {
    tps.push_back(Json{{"x_m", tp.x_m}, {"y_m", tp.y_m}});
  }
  j["test_points"] = tps;
  Json apps = Json::array();
  for (const auto& a : s.applications) {
    Json aj;
    aj["id"] = a.id;
    aj["arrival_s"] = a.arrival_s;
    aj["lifetime_s"] = a.lifetime_s;
    aj["test_points"] = a.test_points;
    aj["source_rate_bps"] = a.source_rate_bps;
    aj["memory_bytes"] = a.memory_bytes;
    aj["cpu_mips"] = a.cpu_mips;
    aj["proc_power_w"] = a.proc_power_w;
    apps.push_back(aj);
  }
  j["applications"] = apps;
  return j;
}

Scenario scenario_from_json(const Json& j) {
  Scenario s;
  if (!j.contains("area")) throw ConfigError("area: missing");
  s.area_width_m = get_num(j.at("area"), "area", "width_m");
  s.area_height_m = get_num(j.at("area"), "area", "height_m");
  s.sensing_range_m = get_num(j, "", "sensing_range_m");
  s.n_max = static_cast<int>(get_num(j, "", "n_max_per_app"));
  s.activation_cost_j = get_num(j, "", "activation_cost_j");
  s.movement_cost_j = get_num(j, "", "movement_cost_j");
  s.big_k_bps = get_num(j, "", "big_k_bps");
  if (j.contains("interference_power_mode")) {
    s.interference_power = mode_from_name(
        j.at("interference_power_mode").get<std::string>(),
        "interference_power_mode");
  }
  if (j.contains("generator_seed")) {
    s.generator_seed = j.at("generator_seed").get<std::uint64_t>();
  }
  if (!j.contains("radio")) throw ConfigError("radio: missing");
  s.radio = radio_from_json(j.at("radio"), "radio");
  if (!j.contains("nodes") || !j.at("nodes").is_array()) {
    throw ConfigError("nodes: missing or not an array");
  }
  for (std::size_t i = 0; i < j.at("nodes").size(); ++i) {
    const Json& nj = j.at("nodes").at(i);
    const std::string path = "nodes[" + std::to_string(i) + "]";
    SensorNode n;
    n.id = static_cast<int>(get_num(nj, path, "id"));
    n.position = {get_num(nj, path, "x_m"), get_num(nj, path, "y_m")};
    n.bandwidth_bps = get_num(nj, path, "bandwidth_bps");
    n.memory_bytes = get_num(nj, path, "memory_bytes");
    n.cpu_mips = get_num(nj, path, "cpu_mips");
    n.initial_energy_j = get_num(nj, path, "initial_energy_j");
    n.is_sink = nj.value("is_sink", false);
    s.nodes.push_back(n);
  }
  if (j.contains("test_points")) {
    for (std::size_t i = 0; i < j.at("test_points").size(); ++i) {
      const Json& tj = j.at("test_points").at(i);
      const std::string path = "test_points[" + std::to_string(i) + "]";
      s.test_points.push_back(
          {get_num(tj, path, "x_m"), get_num(tj, path, "y_m")});
    }
  }
  if (j.contains("applications")) {
    for (std::size_t i = 0; i < j.at("applications").size(); ++i) {
      const Json& aj = j.at("applications").at(i);
      const std::string path = "applications[" + std::to_string(i) + "]";
      Application a;
      a.id = static_cast<int>(get_num(aj, path, "id"));
      a.arrival_s = get_num(aj, path, "arrival_s");
      a.lifetime_s = get_num(aj, path, "lifetime_s");
      if (!aj.contains("test_points") || !aj.at("test_points").is_array()) {
        throw ConfigError(path + ".test_points: missing or not an array");
      }
      a.test_points = aj.at("test_points").get<std::vector<int>>();
      a.source_rate_bps = get_num(aj, path, "source_rate_bps");
      a.memory_bytes = get_num(aj, path, "memory_bytes");
      a.cpu_mips = get_num(aj, path, "cpu_mips");
      a.proc_power_w = get_num(aj, path, "proc_power_w");
      s.applications.push_back(a);
    }
  }
  validate(s);
  return s;
}

void save_scenario(const Scenario& s, const std::string& path) {
  write_text_file(path, to_canonical_bytes(scenario_to_json(s)));
}

Scenario load_scenario(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return scenario_from_json(j);
}

Json generator_config_to_json(const GeneratorConfig& c) {
  Json j;
  j["placement"] =
      c.placement == NodePlacement::kGrid ? "grid" : "uniform_random";
  j["node_count"] = c.node_count;
  j["area"] = Json{{"width_m", c.area_width_m}, {"height_m", c.area_height_m}};
  j["sink_nodes"] = c.sink_nodes;
  j["app_count"] = c.app_count;
  j["arrival_rate_per_hour"] = c.arrival_rate_per_hour;
  j["lifetime_hours"] = c.lifetime_hours;
  j["test_points_per_app"] = c.test_points_per_app;
  j["n_max_per_app"] = c.n_max;
  j["sensing_range_m"] = c.sensing_range_m;
  j["activation_cost_j"] = c.activation_cost_j;
  j["movement_cost_j"] = c.movement_cost_j;
  Json r;
  r["g0"] = c.radio.g0;
  r["gamma"] = c.radio.gamma;
  r["p_max_dbm"] = watts_to_dbm(c.radio.p_max_w);
  r["alpha_dbm"] = watts_to_dbm(c.radio.alpha_w);
  r["beta_dbm"] = watts_to_dbm(c.radio.beta_w);
  r["beta1_j_per_bit"] = c.radio.beta1_j_per_bit;
  r["beta2_j_per_bit_mgamma"] = c.radio.beta2_j_per_bit_mgamma;
  r["rho_j_per_bit"] = c.radio.rho_j_per_bit;
  j["radio"] = r;
  j["big_k_bps"] = c.big_k_bps;
  j["interference_power_mode"] = mode_name(c.interference_power);
  j["application_profile"] = Json{{"source_rate_bps", c.app.source_rate_bps},
                                  {"memory_bytes", c.app.memory_bytes},
                                  {"cpu_mips", c.app.cpu_mips},
                                  {"proc_power_w", c.app.proc_power_w}};
  j["node_profile"] = Json{{"bandwidth_bps", c.node.bandwidth_bps},
                           {"memory_bytes", c.node.memory_bytes},
                           {"cpu_mips", c.node.cpu_mips},
                           {"initial_energy_j", c.node.initial_energy_j}};
  return j;
}

GeneratorConfig generator_config_from_json(const Json& j) {
  GeneratorConfig c;
  if (j.contains("placement")) {
    std::string p = j.at("placement").get<std::string>();
    if (p == "grid") {
      c.placement = NodePlacement::kGrid;
    } else if (p == "uniform_random") {
      c.placement = NodePlacement::kUniformRandom;
    } else {
      throw ConfigError("placement: expected \"grid\" or \"uniform_random\"");
    }
  }
  c.node_count = static_cast<int>(get_num_or(j, "node_count", c.node_count));
  if (j.contains("area")) {
    c.area_width_m = get_num(j.at("area"), "area", "width_m");
    c.area_height_m = get_num(j.at("area"), "area", "height_m");
  }
  if (j.contains("sink_nodes")) {
    c.sink_nodes = j.at("sink_nodes").get<std::vector<int>>();
  }
  c.app_count = static_cast<int>(get_num_or(j, "app_count", c.app_count));
  c.arrival_rate_per_hour =
      get_num_or(j, "arrival_rate_per_hour", c.arrival_rate_per_hour);
  c.lifetime_hours = get_num_or(j, "lifetime_hours", c.lifetime_hours);
  c.test_points_per_app = static_cast<int>(
      get_num_or(j, "test_points_per_app", c.test_points_per_app));
  c.n_max = static_cast<int>(get_num_or(j, "n_max_per_app", c.n_max));
  c.sensing_range_m = get_num_or(j, "sensing_range_m", c.sensing_range_m);
  c.activation_cost_j =
      get_num_or(j, "activation_cost_j", c.activation_cost_j);
  c.movement_cost_j = get_num_or(j, "movement_cost_j", c.movement_cost_j);
  c.radio = default_radio_model();
  if (j.contains("radio")) {
    c.radio = radio_from_json(j.at("radio"), "radio");
  }
  c.big_k_bps = get_num_or(j, "big_k_bps", 0.0);
  if (j.contains("interference_power_mode")) {
    c.interference_power = mode_from_name(
        j.at("interference_power_mode").get<std::string>(),
        "interference_power_mode");
  }
  if (j.contains("application_profile")) {
    const Json& a = j.at("application_profile");
    c.app.source_rate_bps =
        get_num(a, "application_profile", "source_rate_bps");
    c.app.memory_bytes = get_num(a, "application_profile", "memory_bytes");
    c.app.cpu_mips = get_num(a, "application_profile", "cpu_mips");
    c.app.proc_power_w = get_num(a, "application_profile", "proc_power_w");
  }
  if (j.contains("node_profile")) {
    const Json& n = j.at("node_profile");
    c.node.bandwidth_bps = get_num(n, "node_profile", "bandwidth_bps");
    c.node.memory_bytes = get_num(n, "node_profile", "memory_bytes");
    c.node.cpu_mips = get_num(n, "node_profile", "cpu_mips");
    c.node.initial_energy_j = get_num(n, "node_profile", "initial_energy_j");
  }
  return c;
}

GeneratorConfig load_generator_config(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return generator_config_from_json(j);
}

std::string to_canonical_bytes(const Json& j) { return j.dump(2) + "\n"; }

std::uint64_t scenario_base_hash(const Scenario& scenario) {
  Scenario base = scenario;
  base.activation_cost_j = 0.0;
  base.movement_cost_j = 0.0;
  std::string bytes = to_canonical_bytes(scenario_to_json(base));
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError(path + ": cannot open for writing");
  out << content;
  if (!out) throw ConfigError(path + ": write failed");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace vsn
