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

#ifndef VSN_SCENARIO_HPP
#define VSN_SCENARIO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "vsn/common.hpp"

namespace vsn {

struct Position {
  double x_m{0.0};
  double y_m{0.0};
};

double distance_m(const Position& a, const Position& b);

// Physical node with its resource vector. Sinks are grid powered: they keep
// an energy field for symmetry but no energy constraint is ever emitted for
// them.
struct SensorNode {
  int id{0};
  Position position;
  double bandwidth_bps{0.0};
  double memory_bytes{0.0};
  double cpu_mips{0.0};
  double initial_energy_j{0.0};
  bool is_sink{false};
};

// One sensing application: arrives, runs for a fixed lifetime, requires its
// test points to be sensed for the whole time.
struct Application {
  int id{0};
  double arrival_s{0.0};
  double lifetime_s{0.0};
  std::vector<int> test_points;
  double source_rate_bps{0.0};
  double memory_bytes{0.0};
  double cpu_mips{0.0};
  double proc_power_w{0.0};
};

// Protocol interference radio model. Powers are stored in watts; the file
// formats accept dBm and convert on load.
struct RadioModel {
  double g0{0.0};
  double gamma{0.0};
  double p_max_w{0.0};
  double alpha_w{0.0};  // receiver sensitivity
  double beta_w{0.0};   // interference sensitivity
  double beta1_j_per_bit{0.0};
  double beta2_j_per_bit_mgamma{0.0};
  double rho_j_per_bit{0.0};
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

// (p*g0/alpha)^(1/gamma). Throws std::domain_error for p <= 0.
double transmission_range_m(const RadioModel& radio, double p_w);

// (p*g0/beta)^(1/gamma). Throws std::domain_error for p <= 0.
double interference_range_m(const RadioModel& radio, double p_w);

// Energy per transmitted bit over distance d: beta1 + beta2 * d^gamma.
double tx_energy_j_per_bit(const RadioModel& radio, double d_m);

enum class InterferencePowerMode {
  kPMax,        // every node assumed to transmit at P_max
  kPerLinkMin,  // each link at the minimum power that reaches its receiver
};

struct Scenario {
  std::vector<SensorNode> nodes;
  std::vector<Position> test_points;
  std::vector<Application> applications;
  double area_width_m{0.0};
  double area_height_m{0.0};
  double sensing_range_m{0.0};
  int n_max{0};                  // max test points of one app per node
  double activation_cost_j{0.0}; // phi
  double movement_cost_j{0.0};   // delta
  RadioModel radio;
  double big_k_bps{0.0};
  InterferencePowerMode interference_power{InterferencePowerMode::kPMax};
  std::uint64_t generator_seed{0};

  int node_count() const { return static_cast<int>(nodes.size()); }
  bool is_sink(int i) const { return nodes.at(i).is_sink; }
  std::vector<int> sink_ids() const;
  std::vector<int> non_sink_ids() const;

  double node_distance_m(int i, int h) const;
  // min(C_i, C_h)
  double link_capacity_bps(int i, int h) const;
};

// Nodes within sensing range of test point k of application j, sinks
// included, ascending id. Throws std::out_of_range for unknown indices and
// std::invalid_argument when k is not a test point of j.
std::vector<int> coverage_set(const Scenario& scenario, int app, int test_point);

// dist(i, h) <= R_T(p_max). Throws std::domain_error when i == h.
bool link_viable(const Scenario& scenario, int i, int h);

enum class NodePlacement { kGrid, kUniformRandom };

// Radio constants used throughout the experiments: g0 = 8.1e-3, gamma = 4,
// P_max = -10 dBm, alpha = -92 dBm, beta = -104 dBm, beta1 = rho = 50 nJ/bit,
// beta2 = 0.0013 pJ/bit/m^4.
RadioModel default_radio_model();

struct GeneratorConfig {
  NodePlacement placement{NodePlacement::kGrid};
  int node_count{36};
  double area_width_m{141.0};
  double area_height_m{141.0};
  // Node indices; empty selects the two nodes nearest the opposite
  // quarter-points of the area.
  std::vector<int> sink_nodes;
  int app_count{200};
  double arrival_rate_per_hour{1.0};
  double lifetime_hours{5.0};
  int test_points_per_app{3};
  int n_max{1};
  double sensing_range_m{40.0};
  double activation_cost_j{10.0};
  double movement_cost_j{10.0};
  RadioModel radio = default_radio_model();
  // <= 0 selects the default 2 * sum over apps of |T_j| * c_j.
  double big_k_bps{0.0};
  InterferencePowerMode interference_power{InterferencePowerMode::kPMax};

  struct AppProfile {
    double source_rate_bps{12000.0};
    double memory_bytes{842000.0};
    double cpu_mips{69.23};
    double proc_power_w{0.2};
  } app;

  struct NodeProfile {
    double bandwidth_bps{250000.0};
    double memory_bytes{256e6};
    double cpu_mips{720.0};
    double initial_energy_j{32400.0};
  } node;
};

// Deterministic instance generation. Throws ConfigError on invalid config.
Scenario generate_instance(const GeneratorConfig& config, std::uint64_t seed);

// One warning per non-sink node with no viable link at P_max.
std::vector<std::string> connectivity_warnings(const Scenario& scenario);

// Structural sanity of a scenario (index ranges, positivity, beta < alpha).
// Throws ConfigError naming the offending field.
void validate(const Scenario& scenario);

}  // namespace vsn

#endif  // VSN_SCENARIO_HPP
