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

#include "vsn/feasibility_checker.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace vsn {

namespace {

std::string num(double v) {
  std::ostringstream ss;
  ss.precision(12);
  ss << v;
  return ss.str();
}

class Checker {
 public:
  Checker(const Scenario& sc, const std::vector<int>& live_apps,
          const PriorState& prior, const Allocation& alloc, double tol)
      : sc_(sc), prior_(prior), alloc_(alloc), tol_(tol) {
    live_.insert(live_apps.begin(), live_apps.end());
  }

  CheckReport run() {
    if (static_cast<int>(prior_.active.size()) != sc_.node_count() ||
        static_cast<int>(prior_.residual_energy_j.size()) != sc_.node_count()) {
      throw ConfigError("prior state does not match node count");
    }
    collect_links();
    check_assignment_domain();
    check_coverage();
    check_task_caps();
    check_budgets();
    check_flow_domain();
    check_routing();
    check_conservation();
    check_sink_balance();
    check_activation();
    check_airtime();
    check_energy();
    return std::move(report_);
  }

 private:
  void add(std::string name, std::string detail, double lhs, double rhs) {
    report_.violations.push_back(
        Violation{std::move(name), std::move(detail), lhs, rhs});
  }

  bool node_ok(int i) const { return i >= 0 && i < sc_.node_count(); }
  bool app_live(int j) const { return live_.count(j) > 0; }

  bool app_has_point(int j, int k) const {
    const auto& pts = sc_.applications[j].test_points;
    return std::find(pts.begin(), pts.end(), k) != pts.end();
  }

  double dtau(int j) const { return remaining_lifetime_s(sc_, prior_, j); }

  // Every directed pair a node may transmit over. Mirrors the declared flow
  // domain: viable distance, non-sink tail.
  void collect_links() {
    for (int i = 0; i < sc_.node_count(); ++i) {
      if (sc_.is_sink(i)) continue;
      for (int h = 0; h < sc_.node_count(); ++h) {
        if (h != i && link_viable(sc_, i, h)) links_.emplace_back(i, h);
      }
    }
    for (auto& [key, f] : alloc_.flows_bps) {
      auto [i, h, j] = key;
      if (!node_ok(i) || !node_ok(h) || i == h) continue;
      link_flow_[{i, h}] += f;
    }
  }

  void check_assignment_domain() {
    for (const Assignment& a : alloc_.assignments) {
      std::string name =
          "ydom_" + std::to_string(a.node) + "_" + std::to_string(a.app) + "_" +
          std::to_string(a.test_point);
      if (!node_ok(a.node) || a.app < 0 ||
          a.app >= static_cast<int>(sc_.applications.size())) {
        add(name, "assignment references an unknown node or application", 0, 0);
        continue;
      }
      if (!app_live(a.app)) {
        add(name, "assignment for an application that is not live", 0, 0);
        continue;
      }
      if (!app_has_point(a.app, a.test_point)) {
        add(name, "test point does not belong to the application", 0, 0);
        continue;
      }
      double d = distance_m(sc_.nodes[a.node].position,
                            sc_.test_points[a.test_point]);
      if (d > sc_.sensing_range_m) {
        add(name, "assigned node cannot sense the test point", d,
            sc_.sensing_range_m);
      }
    }
  }

  // Each live test point sensed exactly once, counting in-domain
  // assignments.
  void check_coverage() {
    std::map<std::pair<int, int>, int> count;
    for (const Assignment& a : alloc_.assignments) {
      if (!node_ok(a.node) || !app_live(a.app) ||
          !app_has_point(a.app, a.test_point)) {
        continue;
      }
      double d = distance_m(sc_.nodes[a.node].position,
                            sc_.test_points[a.test_point]);
      if (d <= sc_.sensing_range_m) ++count[{a.app, a.test_point}];
    }
    for (int j : live_) {
      for (int k : sc_.applications[j].test_points) {
        int c = count.count({j, k}) ? count.at({j, k}) : 0;
        if (c != 1) {
          add("cov_" + std::to_string(j) + "_" + std::to_string(k),
              "test point must be sensed exactly once", c, 1);
        }
      }
    }
  }

  void check_task_caps() {
    std::map<std::pair<int, int>, int> per_node_app;
    for (const Assignment& a : alloc_.assignments) {
      if (node_ok(a.node) && app_live(a.app)) ++per_node_app[{a.node, a.app}];
    }
    for (auto& [key, c] : per_node_app) {
      if (c > sc_.n_max) {
        add("nmax_" + std::to_string(key.first) + "_" +
                std::to_string(key.second),
            "too many test points of one application on one node", c,
            sc_.n_max);
      }
    }
  }

  void check_budgets() {
    std::map<int, double> mem, cpu;
    for (const Assignment& a : alloc_.assignments) {
      if (!node_ok(a.node) || !app_live(a.app)) continue;
      const Application& app = sc_.applications[a.app];
      mem[a.node] += app.memory_bytes;
      cpu[a.node] += app.cpu_mips;
    }
    for (auto& [i, used] : mem) {
      if (used > sc_.nodes[i].memory_bytes + tol_) {
        add("mem_" + std::to_string(i), "memory budget exceeded", used,
            sc_.nodes[i].memory_bytes);
      }
    }
    for (auto& [i, used] : cpu) {
      if (used > sc_.nodes[i].cpu_mips + tol_) {
        add("cpu_" + std::to_string(i), "cpu budget exceeded", used,
            sc_.nodes[i].cpu_mips);
      }
    }
  }

  void check_flow_domain() {
    for (auto& [key, f] : alloc_.flows_bps) {
      auto [i, h, j] = key;
      std::string name = "fdom_" + std::to_string(i) + "_" + std::to_string(h) +
                         "_" + std::to_string(j);
      if (!node_ok(i) || !node_ok(h) || i == h) {
        add(name, "flow on an unknown node pair", f, 0);
        continue;
      }
      if (f < -tol_) {
        add(name, "negative flow", f, 0);
      }
      if (!app_live(j)) {
        add(name, "flow for an application that is not live", f, 0);
      }
      if (sc_.is_sink(i)) {
        add(name, "sinks do not transmit", f, 0);
      } else if (!link_viable(sc_, i, h)) {
        add(name, "flow on a link beyond transmission range", f, 0);
      }
    }
  }

  // Single selected next hop per node; traffic only on the selected link.
  void check_routing() {
    for (auto& [i, h] : alloc_.next_hop) {
      std::string name = "routedom_" + std::to_string(i);
      if (!node_ok(i) || !node_ok(h) || i == h) {
        add(name, "next hop on an unknown node pair", 0, 0);
        continue;
      }
      if (sc_.is_sink(i)) {
        add(name, "sinks do not route", 0, 0);
      } else if (!link_viable(sc_, i, h)) {
        add(name, "selected next hop beyond transmission range",
            sc_.node_distance_m(i, h), 0);
      }
    }
    for (auto& [link, f] : link_flow_) {
      auto [i, h] = link;
      if (f <= tol_) continue;
      auto sel = alloc_.next_hop.find(i);
      bool selected = sel != alloc_.next_hop.end() && sel->second == h;
      if (!selected) {
        add("gate_" + std::to_string(i) + "_" + std::to_string(h),
            "traffic on a link that is not the selected next hop", f, 0);
      } else if (f > sc_.big_k_bps + tol_) {
        add("gate_" + std::to_string(i) + "_" + std::to_string(h),
            "aggregate flow exceeds the routing capacity bound", f,
            sc_.big_k_bps);
      }
    }
  }

  double sensed_rate(int i, int j) const {
    double r = 0.0;
    for (const Assignment& a : alloc_.assignments) {
      if (a.node == i && a.app == j) r += sc_.applications[j].source_rate_bps;
    }
    return r;
  }

  void check_conservation() {
    for (int i = 0; i < sc_.node_count(); ++i) {
      if (sc_.is_sink(i)) continue;
      for (int j : live_) {
        double in = 0.0, out = 0.0;
        for (auto& [key, f] : alloc_.flows_bps) {
          auto [a, b, app] = key;
          if (app != j) continue;
          if (b == i) in += f;
          if (a == i) out += f;
        }
        double residual = in - out + sensed_rate(i, j);
        if (std::fabs(residual) > tol_) {
          add("cons_" + std::to_string(i) + "_" + std::to_string(j),
              "inflow plus sensed data must equal outflow", residual, 0);
        }
      }
    }
  }

  void check_sink_balance() {
    double produced = 0.0;
    for (int j : live_) {
      const Application& app = sc_.applications[j];
      produced +=
          static_cast<double>(app.test_points.size()) * app.source_rate_bps;
    }
    double delivered = 0.0;
    for (auto& [key, f] : alloc_.flows_bps) {
      auto [i, h, j] = key;
      if (node_ok(h) && sc_.is_sink(h)) delivered += f;
    }
    for (const Assignment& a : alloc_.assignments) {
      if (node_ok(a.node) && sc_.is_sink(a.node) && app_live(a.app)) {
        delivered += sc_.applications[a.app].source_rate_bps;
      }
    }
    if (std::fabs(delivered - produced) > tol_) {
      add("sinkbal", "all generated data must reach the sinks", delivered,
          produced);
    }
  }

  void check_activation() {
    for (int i = 0; i < sc_.node_count(); ++i) {
      double load = 0.0;
      for (auto& [key, f] : alloc_.flows_bps) {
        if (std::get<1>(key) == i) load += f;
      }
      for (int j : live_) load += sensed_rate(i, j);
      double cap = alloc_.is_active(i) ? sc_.big_k_bps : 0.0;
      if (load > cap + tol_) {
        add("act_" + std::to_string(i),
            alloc_.is_active(i)
                ? "load exceeds the activation capacity bound"
                : "node carries load while inactive",
            load, cap);
      }
    }
  }

  // Interference radius the transmitter of (a, b) radiates at, under the
  // scenario's power mode.
  double jam_radius(int a, int b) const {
    if (sc_.interference_power == InterferencePowerMode::kPMax) {
      return interference_range_m(sc_.radio, sc_.radio.p_max_w);
    }
    double ratio =
        std::pow(sc_.radio.alpha_w / sc_.radio.beta_w, 1.0 / sc_.radio.gamma);
    return sc_.node_distance_m(a, b) * ratio;
  }

  // Two directed links cannot carry traffic in the same instant when they
  // share a node or either transmitter radiates over the other's receiver.
  bool conflicting(int i, int h, int a, int b) const {
    if (i == a || i == b || h == a || h == b) return true;
    if (sc_.node_distance_m(i, b) <= jam_radius(i, h)) return true;
    if (sc_.node_distance_m(a, h) <= jam_radius(a, b)) return true;
    return false;
  }

  void check_airtime() {
    std::vector<std::pair<std::pair<int, int>, double>> flowing;
    for (auto& [link, f] : link_flow_) {
      auto [a, b] = link;
      if (f > 0.0 && node_ok(a) && node_ok(b) && !sc_.is_sink(a) && a != b &&
          link_viable(sc_, a, b)) {
        flowing.push_back({link, f});
      }
    }
    if (flowing.empty()) return;
    for (auto& [i, h] : links_) {
      double airtime = 0.0;
      for (auto& [link, f] : flowing) {
        auto [a, b] = link;
        bool same = a == i && b == h;
        if (same || conflicting(i, h, a, b)) {
          airtime += f / sc_.link_capacity_bps(a, b);
        }
      }
      if (airtime > 1.0 + tol_) {
        add("air_" + std::to_string(i) + "_" + std::to_string(h),
            "shared medium around the link is oversubscribed", airtime, 1.0);
      }
    }
  }

  void check_energy() {
    for (int i = 0; i < sc_.node_count(); ++i) {
      if (sc_.is_sink(i)) continue;
      double wake = 0.0, move = 0.0, proc = 0.0, tx = 0.0, rx = 0.0;
      if (alloc_.is_active(i) && !prior_.active[i]) {
        wake = sc_.activation_cost_j;
      }
      for (const Assignment& a : alloc_.assignments) {
        if (a.node != i || !app_live(a.app)) continue;
        if (!prior_.was_assigned(a.node, a.app, a.test_point)) {
          move += sc_.movement_cost_j;
        }
        proc += sc_.applications[a.app].proc_power_w * dtau(a.app);
      }
      for (auto& [key, f] : alloc_.flows_bps) {
        auto [a, b, j] = key;
        if (!app_live(j) || !node_ok(a) || !node_ok(b)) continue;
        if (a == i) {
          tx += tx_energy_j_per_bit(sc_.radio, sc_.node_distance_m(a, b)) *
                dtau(j) * f;
        }
        if (b == i) {
          rx += sc_.radio.rho_j_per_bit * dtau(j) * f;
        }
      }
      double spend = wake + move + proc + tx + rx;
      double budget = prior_.residual_energy_j[i];
      std::string breakdown = "wake " + num(wake) + " + move " + num(move) +
                              " + proc " + num(proc) + " + tx " + num(tx) +
                              " + rx " + num(rx) + " J against " + num(budget) +
                              " J";
      auto it = alloc_.lambda_j.find(i);
      double lam = it != alloc_.lambda_j.end() ? it->second : budget - spend;
      if (it != alloc_.lambda_j.end() &&
          std::fabs(spend + lam - budget) > tol_) {
        add("en_" + std::to_string(i),
            "stated residual slack is inconsistent with spend: " + breakdown,
            spend + lam, budget);
      }
      if (lam < -tol_) {
        add("overdraw_" + std::to_string(i),
            "energy balance leaves negative residual: " + breakdown, lam, 0.0);
      }
    }
  }

  const Scenario& sc_;
  const PriorState& prior_;
  const Allocation& alloc_;
  double tol_;
  std::set<int> live_;
  std::vector<std::pair<int, int>> links_;
  std::map<std::pair<int, int>, double> link_flow_;
  CheckReport report_;
};

}  // namespace

CheckReport check_allocation(const Scenario& scenario,
                             const std::vector<int>& live_apps,
                             const PriorState& prior, const Allocation& alloc,
                             double tol) {
  Checker checker(scenario, live_apps, prior, alloc, tol);
  return checker.run();
}

std::string check_report_text(const CheckReport& report) {
  std::ostringstream ss;
  if (report.ok()) {
    ss << "feasible: no violations\n";
    return ss.str();
  }
  ss << report.violations.size() << " violation(s)\n";
  for (const Violation& v : report.violations) {
    ss << "  " << v.constraint << ": " << v.detail << " (lhs " << num(v.lhs)
       << ", rhs " << num(v.rhs) << ")\n";
  }
  return ss.str();
}

Json check_report_json(const CheckReport& report) {
  Json j;
  j["feasible"] = report.ok();
  j["violation_count"] = report.violations.size();
  Json arr = Json::array();
  for (const Violation& v : report.violations) {
    Json item;
    item["constraint"] = v.constraint;
    item["detail"] = v.detail;
    item["lhs"] = v.lhs;
    item["rhs"] = v.rhs;
    arr.push_back(item);
  }
  j["violations"] = arr;
  return j;
}

}  // namespace vsn
