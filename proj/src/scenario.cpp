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

#include "vsn/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vsn/rng.hpp"

namespace vsn {

double distance_m(const Position& a, const Position& b) {
  return std::hypot(a.x_m - b.x_m, a.y_m - b.y_m);
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double transmission_range_m(const RadioModel& radio, double p_w) {
  if (!(p_w > 0.0)) {
    throw std::domain_error("transmission_range_m: power must be positive");
  }
  return std::pow(p_w * radio.g0 / radio.alpha_w, 1.0 / radio.gamma);
}

double interference_range_m(const RadioModel& radio, double p_w) {
  if (!(p_w > 0.0)) {
    throw std::domain_error("interference_range_m: power must be positive");
  }
  return std::pow(p_w * radio.g0 / radio.beta_w, 1.0 / radio.gamma);
}

double tx_energy_j_per_bit(const RadioModel& radio, double d_m) {
  return radio.beta1_j_per_bit +
         radio.beta2_j_per_bit_mgamma * std::pow(d_m, radio.gamma);
}

std::vector<int> Scenario::sink_ids() const {
  std::vector<int> out;
  for (const auto& n : nodes) {
    if (n.is_sink) out.push_back(n.id);
  }
  return out;
}

std::vector<int> Scenario::non_sink_ids() const {
  std::vector<int> out;
  for (const auto& n : nodes) {
    if (!n.is_sink) out.push_back(n.id);
  }
  return out;
}

double Scenario::node_distance_m(int i, int h) const {
  return distance_m(nodes.at(i).position, nodes.at(h).position);
}

double Scenario::link_capacity_bps(int i, int h) const {
  return std::min(nodes.at(i).bandwidth_bps, nodes.at(h).bandwidth_bps);
}

std::vector<int> coverage_set(const Scenario& scenario, int app,
                              int test_point) {
  const Application& a = scenario.applications.at(app);
  if (std::find(a.test_points.begin(), a.test_points.end(), test_point) ==
      a.test_points.end()) {
    throw std::invalid_argument("coverage_set: test point " +
                                std::to_string(test_point) +
                                " does not belong to application " +
                                std::to_string(app));
  }
  const Position& tp = scenario.test_points.at(test_point);
  std::vector<int> covering;
  for (const auto& node : scenario.nodes) {
    if (distance_m(node.position, tp) <= scenario.sensing_range_m) {
      covering.push_back(node.id);
    }
  }
  return covering;
}

bool link_viable(const Scenario& scenario, int i, int h) {
  if (i == h) {
    throw std::domain_error("link_viable: i == h");
  }
  double range = transmission_range_m(scenario.radio, scenario.radio.p_max_w);
  return scenario.node_distance_m(i, h) <= range;
}

RadioModel default_radio_model() {
  RadioModel r;
  r.g0 = 8.1e-3;
  r.gamma = 4.0;
  r.p_max_w = dbm_to_watts(-10.0);
  r.alpha_w = dbm_to_watts(-92.0);
  r.beta_w = dbm_to_watts(-104.0);
  r.beta1_j_per_bit = 50e-9;
  r.beta2_j_per_bit_mgamma = 0.0013e-12;
  r.rho_j_per_bit = 50e-9;
  return r;
}

namespace {

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigError(field + ": " + what);
}

std::vector<int> default_sinks(const std::vector<SensorNode>& nodes,
                               double width, double height) {
  // Two nodes nearest the opposite quarter-points, ties by lowest id. The
  // second sink must differ from the first.
  Position q1{width * 0.25, height * 0.25};
  Position q2{width * 0.75, height * 0.75};
  auto nearest = [&nodes](const Position& p, int exclude) {
    int best = -1;
    double best_d = 0.0;
    for (const auto& n : nodes) {
      if (n.id == exclude) continue;
      double d = distance_m(n.position, p);
      if (best < 0 || d < best_d) {
        best = n.id;
        best_d = d;
      }
    }
    return best;
  };
  int s1 = nearest(q1, -1);
  int s2 = nearest(q2, s1);
  return {s1, s2};
}

}  // namespace

Scenario generate_instance(const GeneratorConfig& config, std::uint64_t seed) {
  require(config.node_count >= 1, "node_count", "must be >= 1");
  require(config.area_width_m > 0.0, "area_width_m", "must be positive");
  require(config.area_height_m > 0.0, "area_height_m", "must be positive");
  require(config.app_count >= 0, "app_count", "must be >= 0");
  require(config.arrival_rate_per_hour > 0.0, "arrival_rate_per_hour",
          "must be positive");
  require(config.lifetime_hours > 0.0, "lifetime_hours", "must be positive");
  require(config.test_points_per_app >= 1, "test_points_per_app",
          "must be >= 1");
  require(config.n_max >= 1, "n_max", "must be >= 1");
  require(config.sensing_range_m > 0.0, "sensing_range_m", "must be positive");
  require(config.activation_cost_j >= 0.0, "activation_cost_j",
          "must be >= 0");
  require(config.movement_cost_j >= 0.0, "movement_cost_j", "must be >= 0");
  require(config.app.source_rate_bps > 0.0, "app.source_rate_bps",
          "must be positive");
  require(config.app.memory_bytes > 0.0, "app.memory_bytes",
          "must be positive");
  require(config.app.cpu_mips > 0.0, "app.cpu_mips", "must be positive");
  require(config.app.proc_power_w >= 0.0, "app.proc_power_w", "must be >= 0");
  require(config.radio.gamma > 0.0, "radio.gamma", "must be positive");
  require(config.radio.beta_w < config.radio.alpha_w, "radio.beta_dbm",
          "interference sensitivity must be below receiver sensitivity");
  if (config.placement == NodePlacement::kGrid) {
    int side = static_cast<int>(std::lround(std::sqrt(config.node_count)));
    require(side * side == config.node_count, "node_count",
            "grid placement needs a perfect square");
  }

  Rng rng(seed);
  Scenario s;
  s.area_width_m = config.area_width_m;
  s.area_height_m = config.area_height_m;
  s.sensing_range_m = config.sensing_range_m;
  s.n_max = config.n_max;
  s.activation_cost_j = config.activation_cost_j;
  s.movement_cost_j = config.movement_cost_j;
  s.radio = config.radio;
  s.interference_power = config.interference_power;
  s.generator_seed = seed;

  // Nodes
  if (config.placement == NodePlacement::kGrid) {
    int side = static_cast<int>(std::lround(std::sqrt(config.node_count)));
    double dx = side > 1 ? config.area_width_m / (side - 1) : 0.0;
    double dy = side > 1 ? config.area_height_m / (side - 1) : 0.0;
    for (int row = 0; row < side; ++row) {
      for (int col = 0; col < side; ++col) {
        SensorNode n;
        n.id = row * side + col;
        n.position = {col * dx, row * dy};
        s.nodes.push_back(n);
      }
    }
  } else {
    for (int i = 0; i < config.node_count; ++i) {
      SensorNode n;
      n.id = i;
      n.position = {rng.uniform(0.0, config.area_width_m),
                    rng.uniform(0.0, config.area_height_m)};
      s.nodes.push_back(n);
    }
  }
  for (auto& n : s.nodes) {
    n.bandwidth_bps = config.node.bandwidth_bps;
    n.memory_bytes = config.node.memory_bytes;
    n.cpu_mips = config.node.cpu_mips;
    n.initial_energy_j = config.node.initial_energy_j;
  }

  std::vector<int> sinks = config.sink_nodes;
  if (sinks.empty()) {
    sinks = default_sinks(s.nodes, config.area_width_m, config.area_height_m);
  }
  for (int idx : sinks) {
    require(idx >= 0 && idx < s.node_count(), "sink_nodes",
            "index " + std::to_string(idx) + " out of range");
    s.nodes[idx].is_sink = true;
  }

  // Applications: Poisson arrivals, uniform test points.
  double rate_per_s = config.arrival_rate_per_hour / 3600.0;
  double clock = 0.0;
  int tp_index = 0;
  for (int j = 0; j < config.app_count; ++j) {
    clock += rng.exponential(rate_per_s);
    Application a;
    a.id = j;
    a.arrival_s = clock;
    a.lifetime_s = config.lifetime_hours * 3600.0;
    for (int t = 0; t < config.test_points_per_app; ++t) {
      s.test_points.push_back({rng.uniform(0.0, config.area_width_m),
                               rng.uniform(0.0, config.area_height_m)});
      a.test_points.push_back(tp_index++);
    }
    a.source_rate_bps = config.app.source_rate_bps;
    a.memory_bytes = config.app.memory_bytes;
    a.cpu_mips = config.app.cpu_mips;
    a.proc_power_w = config.app.proc_power_w;
    s.applications.push_back(a);
  }

  if (config.big_k_bps > 0.0) {
    s.big_k_bps = config.big_k_bps;
  } else {
    double total = 0.0;
    for (const auto& a : s.applications) {
      total += static_cast<double>(a.test_points.size()) * a.source_rate_bps;
    }
    s.big_k_bps = 2.0 * total;
    if (s.big_k_bps <= 0.0) s.big_k_bps = 1.0;
  }

  validate(s);
  return s;
}

std::vector<std::string> connectivity_warnings(const Scenario& scenario) {
  std::vector<std::string> warnings;
  double range = transmission_range_m(scenario.radio, scenario.radio.p_max_w);
  for (const auto& n : scenario.nodes) {
    if (n.is_sink) continue;
    bool linked = false;
    for (const auto& m : scenario.nodes) {
      if (m.id == n.id) continue;
      if (distance_m(n.position, m.position) <= range) {
        linked = true;
        break;
      }
    }
    if (!linked) {
      warnings.push_back("node " + std::to_string(n.id) +
                         " has no viable link at p_max (isolated)");
    }
  }
  return warnings;
}

void validate(const Scenario& s) {
  require(!s.nodes.empty(), "nodes", "must not be empty");
  require(s.area_width_m > 0.0, "area.width_m", "must be positive");
  require(s.area_height_m > 0.0, "area.height_m", "must be positive");
  require(s.sensing_range_m > 0.0, "sensing_range_m", "must be positive");
  require(s.n_max >= 1, "n_max_per_app", "must be >= 1");
  require(s.activation_cost_j >= 0.0, "activation_cost_j", "must be >= 0");
  require(s.movement_cost_j >= 0.0, "movement_cost_j", "must be >= 0");
  require(s.big_k_bps > 0.0, "big_k_bps", "must be positive");
  require(s.radio.g0 > 0.0, "radio.g0", "must be positive");
  require(s.radio.gamma > 0.0, "radio.gamma", "must be positive");
  require(s.radio.p_max_w > 0.0, "radio.p_max_dbm", "must be a finite power");
  require(s.radio.alpha_w > 0.0, "radio.alpha_dbm", "must be a finite power");
  require(s.radio.beta_w > 0.0, "radio.beta_dbm", "must be a finite power");
  require(s.radio.beta_w < s.radio.alpha_w, "radio.beta_dbm",
          "interference sensitivity must be below receiver sensitivity");
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    const auto& n = s.nodes[i];
    const std::string path = "nodes[" + std::to_string(i) + "]";
    require(n.id == static_cast<int>(i), path + ".id",
            "must equal its position in the node list");
    require(n.bandwidth_bps >= 0.0, path + ".bandwidth_bps", "must be >= 0");
    require(n.memory_bytes >= 0.0, path + ".memory_bytes", "must be >= 0");
    require(n.cpu_mips >= 0.0, path + ".cpu_mips", "must be >= 0");
    require(n.initial_energy_j >= 0.0, path + ".initial_energy_j",
            "must be >= 0");
    require(n.position.x_m >= 0.0 && n.position.x_m <= s.area_width_m &&
                n.position.y_m >= 0.0 && n.position.y_m <= s.area_height_m,
            path + ".position", "must lie inside the scenario rectangle");
  }
  for (std::size_t j = 0; j < s.applications.size(); ++j) {
    const auto& a = s.applications[j];
    const std::string path = "applications[" + std::to_string(j) + "]";
    require(a.id == static_cast<int>(j), path + ".id",
            "must equal its position in the application list");
    require(a.lifetime_s > 0.0, path + ".lifetime_s", "must be positive");
    require(!a.test_points.empty(), path + ".test_points",
            "must not be empty");
    require(a.source_rate_bps > 0.0, path + ".source_rate_bps",
            "must be positive");
    require(a.memory_bytes > 0.0, path + ".memory_bytes", "must be positive");
    require(a.cpu_mips > 0.0, path + ".cpu_mips", "must be positive");
    require(a.proc_power_w >= 0.0, path + ".proc_power_w", "must be >= 0");
    require(a.arrival_s >= 0.0, path + ".arrival_s", "must be >= 0");
    for (int k : a.test_points) {
      require(k >= 0 && k < static_cast<int>(s.test_points.size()),
              path + ".test_points", "index " + std::to_string(k) +
                  " out of range");
    }
  }
}

}  // namespace vsn
