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

#ifndef VSN_METRICS_REPORT_HPP
#define VSN_METRICS_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "vsn/scenario_io.hpp"

namespace vsn {

struct EnergySample {
  double time_s{0.0};
  double min_residual_j{0.0};    // minimum over non-sink nodes
  double total_residual_j{0.0};  // sum over non-sink nodes
};

// Structural identity of the instance family a run belongs to. Runs are only
// aggregated within one family; seeds inside a family differ by design, so
// compatibility cannot hinge on the instance hash.
struct ScenarioFamily {
  int node_count{0};
  int app_count{0};
  double area_width_m{0.0};
  double area_height_m{0.0};

  bool operator==(const ScenarioFamily&) const = default;
};

// Everything a single simulation run produces. Deliberately free of wall
// times and host details: identical invocations must serialize identically.
struct RunMetrics {
  std::string policy;
  double delta_j{0.0};
  double phi_j{0.0};
  std::uint64_t seed{0};
  std::uint64_t scenario_base_hash{0};
  ScenarioFamily family;
  long arrivals{0};
  long deployed{0};
  long rejected{0};
  long movements{0};
  long activations{0};
  long solver_nodes{0};
  long solver_lp_iterations{0};
  std::vector<EnergySample> energy_trace;
};

Json run_metrics_to_json(const RunMetrics& rm);
RunMetrics run_metrics_from_json(const Json& j);
void write_run_metrics(const std::string& path, const RunMetrics& rm);
RunMetrics read_run_metrics(const std::string& path);

// One aggregated statistic for one (policy, delta, phi) group.
struct SummaryRow {
  std::string policy;
  double delta_j{0.0};
  double phi_j{0.0};
  std::string metric;  // deployed | movements | activations
  double mean{0.0};
  double stddev{0.0};  // sample standard deviation; 0 when n == 1
  long n{0};
};

// Groups by (policy, delta, phi) and reduces deployed, movements and
// activations to mean/stddev/n. Rows come out sorted by policy name, delta,
// phi, metric, so output is permutation-invariant in run order. Throws
// ConfigError when one group mixes scenario families.
std::vector<SummaryRow> aggregate(const std::vector<RunMetrics>& runs);

// Columns: policy,delta_j,phi_j,metric,mean,stddev,n. Shortest round-trip
// number rendering keeps bytes stable and the parse lossless.
std::string summary_to_csv(const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> summary_from_csv(const std::string& csv);
void write_summary_csv(const std::string& path,
                       const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> read_summary_csv(const std::string& path);

// Minimal line chart: one series per policy, x from the chosen sweep axis
// ("delta_j" or "phi_j"), y = mean of `metric`. Self-contained SVG.
std::string summary_to_svg(const std::vector<SummaryRow>& rows,
                           const std::string& metric,
                           const std::string& x_axis);

}  // namespace vsn

#endif  // VSN_METRICS_REPORT_HPP
