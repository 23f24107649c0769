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

#include "vsn/metrics_report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <tuple>

#include "vsn/common.hpp"

namespace vsn {

namespace {

const char* const kMetricNames[] = {"activations", "deployed", "movements"};

double metric_value(const RunMetrics& rm, const std::string& metric) {
  if (metric == "deployed") return static_cast<double>(rm.deployed);
  if (metric == "movements") return static_cast<double>(rm.movements);
  if (metric == "activations") return static_cast<double>(rm.activations);
  throw ConfigError("unknown metric " + metric);
}

double parse_double_field(const std::string& s, int line) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ParseError("malformed number '" + s + "'", line, 1);
  }
  return v;
}

long parse_long_field(const std::string& s, int line) {
  long v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ParseError("malformed count '" + s + "'", line, 1);
  }
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

Json run_metrics_to_json(const RunMetrics& rm) {
  Json j;
  j["policy"] = rm.policy;
  j["delta_j"] = rm.delta_j;
  j["phi_j"] = rm.phi_j;
  j["seed"] = rm.seed;
  j["scenario_base_hash"] = rm.scenario_base_hash;
  Json family;
  family["node_count"] = rm.family.node_count;
  family["app_count"] = rm.family.app_count;
  family["area_width_m"] = rm.family.area_width_m;
  family["area_height_m"] = rm.family.area_height_m;
  j["family"] = family;
  j["arrivals"] = rm.arrivals;
  j["deployed"] = rm.deployed;
  j["rejected"] = rm.rejected;
  j["movements"] = rm.movements;
  j["activations"] = rm.activations;
  Json solver;
  solver["nodes"] = rm.solver_nodes;
  solver["lp_iterations"] = rm.solver_lp_iterations;
  j["solver"] = solver;
  Json trace = Json::array();
  for (const EnergySample& s : rm.energy_trace) {
    Json row;
    row["time_s"] = s.time_s;
    row["min_residual_j"] = s.min_residual_j;
    row["total_residual_j"] = s.total_residual_j;
    trace.push_back(row);
  }
  j["energy_trace"] = trace;
  return j;
}

RunMetrics run_metrics_from_json(const Json& j) {
  RunMetrics rm;
  rm.policy = j.at("policy").get<std::string>();
  rm.delta_j = j.at("delta_j").get<double>();
  rm.phi_j = j.at("phi_j").get<double>();
  rm.seed = j.at("seed").get<std::uint64_t>();
  rm.scenario_base_hash = j.at("scenario_base_hash").get<std::uint64_t>();
  const Json& family = j.at("family");
  rm.family.node_count = family.at("node_count").get<int>();
  rm.family.app_count = family.at("app_count").get<int>();
  rm.family.area_width_m = family.at("area_width_m").get<double>();
  rm.family.area_height_m = family.at("area_height_m").get<double>();
  rm.arrivals = j.at("arrivals").get<long>();
  rm.deployed = j.at("deployed").get<long>();
  rm.rejected = j.at("rejected").get<long>();
  rm.movements = j.at("movements").get<long>();
  rm.activations = j.at("activations").get<long>();
  rm.solver_nodes = j.at("solver").at("nodes").get<long>();
  rm.solver_lp_iterations = j.at("solver").at("lp_iterations").get<long>();
  for (const Json& row : j.at("energy_trace")) {
    EnergySample s;
    s.time_s = row.at("time_s").get<double>();
    s.min_residual_j = row.at("min_residual_j").get<double>();
    s.total_residual_j = row.at("total_residual_j").get<double>();
    rm.energy_trace.push_back(s);
  }
  return rm;
}

void write_run_metrics(const std::string& path, const RunMetrics& rm) {
  write_text_file(path, to_canonical_bytes(run_metrics_to_json(rm)));
}

RunMetrics read_run_metrics(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  try {
    return run_metrics_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::vector<SummaryRow> aggregate(const std::vector<RunMetrics>& runs) {
  std::map<std::tuple<std::string, double, double>,
           std::vector<const RunMetrics*>>
      groups;
  for (const RunMetrics& rm : runs) {
    groups[{rm.policy, rm.delta_j, rm.phi_j}].push_back(&rm);
  }
  std::vector<SummaryRow> rows;
  for (auto& [key, members] : groups) {
    for (const RunMetrics* rm : members) {
      if (!(rm->family == members.front()->family)) {
        throw ConfigError("aggregation group (" + std::get<0>(key) +
                          ") mixes incompatible scenario families");
      }
    }
    for (const char* metric : kMetricNames) {
      SummaryRow row;
      row.policy = std::get<0>(key);
      row.delta_j = std::get<1>(key);
      row.phi_j = std::get<2>(key);
      row.metric = metric;
      row.n = static_cast<long>(members.size());
      double sum = 0.0;
      for (const RunMetrics* rm : members) sum += metric_value(*rm, metric);
      row.mean = sum / static_cast<double>(row.n);
      if (row.n > 1) {
        double ss = 0.0;
        for (const RunMetrics* rm : members) {
          double d = metric_value(*rm, metric) - row.mean;
          ss += d * d;
        }
        row.stddev = std::sqrt(ss / static_cast<double>(row.n - 1));
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string summary_to_csv(const std::vector<SummaryRow>& rows) {
  std::string out = "policy,delta_j,phi_j,metric,mean,stddev,n\n";
  for (const SummaryRow& r : rows) {
    out += r.policy;
    out += ',';
    out += format_double(r.delta_j);
    out += ',';
    out += format_double(r.phi_j);
    out += ',';
    out += r.metric;
    out += ',';
    out += format_double(r.mean);
    out += ',';
    out += format_double(r.stddev);
    out += ',';
    out += std::to_string(r.n);
    out += '\n';
  }
  return out;
}

std::vector<SummaryRow> summary_from_csv(const std::string& csv) {
  std::vector<SummaryRow> rows;
  int line_no = 0;
  std::size_t start = 0;
  while (start < csv.size()) {
    std::size_t nl = csv.find('\n', start);
    std::size_t end = nl == std::string::npos ? csv.size() : nl;
    std::string line = csv.substr(start, end - start);
    start = nl == std::string::npos ? csv.size() : nl + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != "policy,delta_j,phi_j,metric,mean,stddev,n") {
        throw ParseError("unexpected header '" + line + "'", 1, 1);
      }
      continue;
    }
    std::vector<std::string> f = split_csv_line(line);
    if (f.size() != 7) {
      throw ParseError("expected 7 fields, got " + std::to_string(f.size()),
                       line_no, 1);
    }
    SummaryRow row;
    row.policy = f[0];
    row.delta_j = parse_double_field(f[1], line_no);
    row.phi_j = parse_double_field(f[2], line_no);
    row.metric = f[3];
    row.mean = parse_double_field(f[4], line_no);
    row.stddev = parse_double_field(f[5], line_no);
    row.n = parse_long_field(f[6], line_no);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_summary_csv(const std::string& path,
                       const std::vector<SummaryRow>& rows) {
  write_text_file(path, summary_to_csv(rows));
}

std::vector<SummaryRow> read_summary_csv(const std::string& path) {
  return summary_from_csv(read_text_file(path));
}

std::string summary_to_svg(const std::vector<SummaryRow>& rows,
                           const std::string& metric,
                           const std::string& x_axis) {
  if (x_axis != "delta_j" && x_axis != "phi_j") {
    throw ConfigError("x axis must be delta_j or phi_j, got " + x_axis);
  }
  // policy -> sorted (x, mean)
  std::map<std::string, std::map<double, double>> series;
  for (const SummaryRow& r : rows) {
    if (r.metric != metric) continue;
    double x = x_axis == "delta_j" ? r.delta_j : r.phi_j;
    auto& s = series[r.policy];
    if (s.count(x) > 0) {
      throw ConfigError("multiple rows for policy " + r.policy + " at " +
                        x_axis + " = " + format_double(x) +
                        "; fix the other axis before plotting");
    }
    s[x] = r.mean;
  }
  if (series.empty()) {
    throw ConfigError("no rows with metric " + metric);
  }

  double xmin = 0.0, xmax = 0.0, ymax = 0.0;
  bool first = true;
  for (auto& [policy, s] : series) {
    for (auto& [x, y] : s) {
      if (first) {
        xmin = xmax = x;
        first = false;
      }
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymax = std::max(ymax, y);
    }
  }
  if (xmax == xmin) {
    xmin -= 1.0;
    xmax += 1.0;
  }
  if (ymax <= 0.0) ymax = 1.0;
  ymax *= 1.05;

  const double w = 640.0, h = 400.0;
  const double ml = 60.0, mr = 150.0, mt = 20.0, mb = 45.0;
  auto px = [&](double x) {
    return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr);
  };
  auto py = [&](double y) { return h - mb - y / ymax * (h - mt - mb); };

  const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                           "#8c564b", "#e377c2"};
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         format_double(w) + "\" height=\"" + format_double(h) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // axes
  svg += "<line x1=\"" + format_double(ml) + "\" y1=\"" + format_double(mt) +
         "\" x2=\"" + format_double(ml) + "\" y2=\"" + format_double(h - mb) +
         "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + format_double(ml) + "\" y1=\"" +
         format_double(h - mb) + "\" x2=\"" + format_double(w - mr) +
         "\" y2=\"" + format_double(h - mb) + "\" stroke=\"black\"/>\n";
  svg += "<text x=\"" + format_double((ml + w - mr) / 2) + "\" y=\"" +
         format_double(h - 10.0) + "\" text-anchor=\"middle\" font-size=\"13\">" +
         x_axis + "</text>\n";
  svg += "<text x=\"15\" y=\"" + format_double((mt + h - mb) / 2) +
         "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 15 " +
         format_double((mt + h - mb) / 2) + ")\">mean " + metric +
         "</text>\n";
  // x tick labels at every distinct x
  std::map<double, bool> ticks;
  for (auto& [policy, s] : series) {
    for (auto& [x, y] : s) ticks[x] = true;
  }
  for (auto& [x, unused] : ticks) {
    svg += "<text x=\"" + format_double(px(x)) + "\" y=\"" +
           format_double(h - mb + 18.0) +
           "\" text-anchor=\"middle\" font-size=\"11\">" + format_double(x) +
           "</text>\n";
  }
  // y ticks at 0 and max
  svg += "<text x=\"" + format_double(ml - 8.0) + "\" y=\"" +
         format_double(h - mb + 4.0) +
         "\" text-anchor=\"end\" font-size=\"11\">0</text>\n";
  svg += "<text x=\"" + format_double(ml - 8.0) + "\" y=\"" +
         format_double(py(ymax / 1.05) + 4.0) +
         "\" text-anchor=\"end\" font-size=\"11\">" +
         format_double(ymax / 1.05) + "</text>\n";

  int idx = 0;
  for (auto& [policy, s] : series) {
    const char* color = palette[idx % 6];
    std::string points;
    for (auto& [x, y] : s) {
      if (!points.empty()) points += ' ';
      points += format_double(px(x)) + "," + format_double(py(y));
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
    for (auto& [x, y] : s) {
      svg += "<circle cx=\"" + format_double(px(x)) + "\" cy=\"" +
             format_double(py(y)) + "\" r=\"3\" fill=\"" + color + "\"/>\n";
    }
    double ly = mt + 18.0 * idx + 10.0;
    svg += "<line x1=\"" + format_double(w - mr + 10.0) + "\" y1=\"" +
           format_double(ly) + "\" x2=\"" + format_double(w - mr + 30.0) +
           "\" y2=\"" + format_double(ly) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + format_double(w - mr + 36.0) + "\" y=\"" +
           format_double(ly + 4.0) + "\" font-size=\"12\">" + policy +
           "</text>\n";
    ++idx;
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace vsn
