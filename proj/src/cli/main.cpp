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

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vsn/common.hpp"
#include "vsn/engine.hpp"
#include "vsn/feasibility_checker.hpp"
#include "vsn/lp_format.hpp"
#include "vsn/metrics_report.hpp"
#include "vsn/milp.hpp"
#include "vsn/scenario.hpp"
#include "vsn/scenario_io.hpp"
#include "vsn/solver.hpp"
#include "vsn/sweep.hpp"

namespace {

using namespace vsn;

ObjectivePolicy parse_policy(const std::string& name) {
  std::optional<ObjectivePolicy> p = policy_from_name(name);
  if (!p) {
    throw ConfigError("unknown policy '" + name +
                      "'; valid policies: total, maxmin, mixed, "
                      "only-restrictions");
  }
  return *p;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t comma = csv.find(',', start);
    std::string item = csv.substr(start, comma - start);
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& csv,
                                      const std::string& flag) {
  std::vector<double> out;
  for (const std::string& item : split_list(csv)) {
    try {
      std::size_t used = 0;
      double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError(flag + ": malformed number '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError(flag + ": empty list");
  return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& csv) {
  std::vector<std::uint64_t> out;
  for (const std::string& item : split_list(csv)) {
    try {
      std::size_t used = 0;
      unsigned long long v = std::stoull(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError("--seeds: malformed seed '" + item + "'");
    }
  }
  return out;
}

// --solver builtin | external:<path>; VSNSIM_SOLVER supplies the external
// command when the flag is absent.
std::string resolve_external_solver(const std::string& solver_flag) {
  if (solver_flag.empty()) {
    const char* env = std::getenv("VSNSIM_SOLVER");
    return env == nullptr ? std::string() : std::string(env);
  }
  if (solver_flag == "builtin") return {};
  const std::string prefix = "external:";
  if (solver_flag.rfind(prefix, 0) == 0 &&
      solver_flag.size() > prefix.size()) {
    return solver_flag.substr(prefix.size());
  }
  throw ConfigError("--solver expects 'builtin' or 'external:<path>', got '" +
                    solver_flag + "'");
}

struct SolverFlags {
  std::string solver;
  double time_limit_s{0.0};
  double gap{1e-6};
  long node_limit{1000000};

  void attach(CLI::App* cmd) {
    cmd->add_option("--solver", solver,
                    "builtin or external:<path> (default: builtin, or "
                    "$VSNSIM_SOLVER when set)");
    cmd->add_option("--time-limit-s", time_limit_s,
                    "wall-clock limit per solve, 0 disables");
    cmd->add_option("--gap", gap, "relative MIP gap");
    cmd->add_option("--node-limit", node_limit,
                    "branch-and-bound node limit per solve");
  }

  SolverOptions options() const {
    SolverOptions opt;
    opt.time_limit_s = time_limit_s;
    opt.rel_gap = gap;
    opt.node_limit = node_limit;
    return opt;
  }
};

int cmd_generate(const std::string& config_path, std::uint64_t seed,
                 std::optional<int> nodes, std::optional<int> apps,
                 const std::string& out) {
  GeneratorConfig config;
  if (!config_path.empty()) config = load_generator_config(config_path);
  if (nodes) {
    // Without an explicit config the area shrinks with the node count so the
    // grid pitch (and hence connectivity) stays at the reference density.
    if (config_path.empty()) {
      double scale = std::sqrt(static_cast<double>(*nodes) /
                               static_cast<double>(config.node_count));
      config.area_width_m *= scale;
      config.area_height_m *= scale;
    }
    config.node_count = *nodes;
  }
  if (apps) config.app_count = *apps;
  Scenario scenario = generate_instance(config, seed);
  save_scenario(scenario, out);
  std::printf("nodes %d (%d sinks), apps %d\n",
              static_cast<int>(scenario.nodes.size()),
              static_cast<int>(scenario.sink_ids().size()),
              static_cast<int>(scenario.applications.size()));
  std::printf("transmission_range_m %s\n",
              format_double(
                  transmission_range_m(scenario.radio, scenario.radio.p_max_w))
                  .c_str());
  std::printf("interference_range_m %s\n",
              format_double(
                  interference_range_m(scenario.radio, scenario.radio.p_max_w))
                  .c_str());
  std::printf("big_k_bps %s\n", format_double(scenario.big_k_bps).c_str());
  for (const std::string& w : connectivity_warnings(scenario)) {
    std::fprintf(stderr, "warning: %s\n", w.c_str());
  }
  std::printf("wrote %s\n", out.c_str());
  return 0;
}

int cmd_run(const std::string& scenario_path, const std::string& policy,
            std::optional<double> delta, std::optional<double> phi,
            const SolverFlags& sf, bool fail_on_limit, const std::string& out,
            const std::string& trace_path, const std::string& work_dir) {
  Scenario scenario = load_scenario(scenario_path);
  if (delta) scenario.movement_cost_j = *delta;
  if (phi) scenario.activation_cost_j = *phi;
  EngineConfig ec;
  ec.policy = parse_policy(policy);
  ec.solver = sf.options();
  ec.external_solver = resolve_external_solver(sf.solver);
  ec.solver_work_dir = work_dir;
  ec.fail_on_solver_limit = fail_on_limit;
  Engine engine(scenario, ec);
  RunMetrics rm = engine.run();
  write_run_metrics(out, rm);
  if (!trace_path.empty()) {
    write_text_file(trace_path, trace_to_csv(engine.trace()));
  }
  std::printf("arrivals %ld deployed %ld rejected %ld movements %ld "
              "activations %ld\n",
              rm.arrivals, rm.deployed, rm.rejected, rm.movements,
              rm.activations);
  std::printf("wrote %s\n", out.c_str());
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& policies,
              const std::string& delta_list, const std::string& phi_list,
              const std::string& seeds, int seed_count, const SolverFlags& sf,
              bool fail_on_limit, int threads, const std::string& out_dir,
              bool quiet) {
  SweepConfig sc;
  if (!config_path.empty()) sc.generator = load_generator_config(config_path);
  for (const std::string& name : split_list(policies)) {
    sc.policies.push_back(parse_policy(name));
  }
  sc.delta_values = parse_double_list(delta_list, "--delta-list");
  sc.phi_values = parse_double_list(phi_list, "--phi-list");
  sc.seeds = parse_seed_list(seeds);
  if (sc.seeds.empty()) {
    if (seed_count <= 0) throw ConfigError("--seed-count must be positive");
    for (int s = 1; s <= seed_count; ++s) {
      sc.seeds.push_back(static_cast<std::uint64_t>(s));
    }
  }
  sc.out_dir = out_dir;
  sc.solver = sf.options();
  sc.external_solver = resolve_external_solver(sf.solver);
  sc.fail_on_solver_limit = fail_on_limit;
  sc.threads = threads;
  if (!quiet) {
    sc.on_event = [](const std::string& line) {
      std::fprintf(stderr, "%s\n", line.c_str());
    };
  }
  SweepOutcome outcome = run_sweep(sc);
  std::printf("completed %ld resumed %ld failed %ld\n", outcome.completed,
              outcome.resumed, outcome.failed);
  for (const std::string& f : outcome.failures) {
    std::fprintf(stderr, "failed %s\n", f.c_str());
  }
  std::printf("wrote %s\n", outcome.summary_path.c_str());
  return outcome.failed == 0 ? 0 : 1;
}

int cmd_solve_file(const std::string& lp_path, const std::string& sol_path,
                   const SolverFlags& sf) {
  IlpModel model = load_lp(lp_path);
  SolveResult result;
  std::string external = resolve_external_solver(sf.solver);
  if (external.empty()) {
    result = solve_model(model, sf.options());
  } else {
    result = solve_via_external(model, external, ".");
  }
  write_text_file(sol_path, write_solution(model, result));
  std::printf("status %s\n", solve_status_name(result.status));
  if (result.status == SolveStatus::kOptimal) {
    std::printf("objective %s\n", format_double(result.objective).c_str());
  }
  std::printf("nodes %ld lp_iterations %ld\n", result.nodes,
              result.lp_iterations);
  // Definitive answers exit 0 so the binary can serve as an external solver.
  return (result.status == SolveStatus::kOptimal ||
          result.status == SolveStatus::kInfeasible)
             ? 0
             : 3;
}

int cmd_check(const std::string& scenario_path, const std::string& snap_path,
              bool as_json, double tol) {
  Scenario scenario = load_scenario(scenario_path);
  Json j;
  try {
    j = Json::parse(read_text_file(snap_path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(snap_path + ": " + e.what());
  }
  AllocationSnapshot snap = snapshot_from_json(j);
  CheckReport report =
      check_allocation(scenario, snap.live_apps, snap.prior, snap.allocation,
                       tol);
  if (as_json) {
    std::printf("%s", to_canonical_bytes(check_report_json(report)).c_str());
  } else {
    std::printf("%s", check_report_text(report).c_str());
  }
  return report.ok() ? 0 : 1;
}

int cmd_plot(const std::string& csv_path, const std::string& metric,
             const std::string& x_axis, const std::string& out) {
  std::vector<SummaryRow> rows = read_summary_csv(csv_path);
  write_text_file(out, summary_to_svg(rows, metric, x_axis));
  std::printf("wrote %s\n", out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"virtual sensor network allocation toolkit"};
  app.require_subcommand(1);
  int rc = 0;

  // generate
  auto* gen = app.add_subcommand("generate", "generate a scenario instance");
  std::string gen_config;
  std::uint64_t gen_seed = 1;
  std::optional<int> gen_nodes, gen_apps;
  std::string gen_out = "scenario.json";
  gen->add_option("--config", gen_config, "generator config JSON");
  gen->add_option("--seed", gen_seed, "instance seed");
  gen->add_option("--nodes", gen_nodes, "override node count");
  gen->add_option("--apps", gen_apps, "override application count");
  gen->add_option("--out", gen_out, "output scenario path");
  gen->callback([&] {
    rc = cmd_generate(gen_config, gen_seed, gen_nodes, gen_apps, gen_out);
  });

  // run
  auto* run = app.add_subcommand("run", "simulate one scenario");
  std::string run_scenario, run_policy = "mixed";
  std::optional<double> run_delta, run_phi;
  SolverFlags run_sf;
  bool run_fail_on_limit = false;
  std::string run_out = "metrics.json", run_trace, run_work = "vsn_solve";
  run->add_option("--scenario", run_scenario, "scenario JSON")->required();
  run->add_option("--policy", run_policy,
                  "total | maxmin | mixed | only-restrictions");
  run->add_option("--delta-j", run_delta, "override movement cost");
  run->add_option("--phi-j", run_phi, "override activation cost");
  run_sf.attach(run);
  run->add_flag("--fail-on-limit", run_fail_on_limit,
                "treat solver limits as integrity errors instead of "
                "rejections");
  run->add_option("--out", run_out, "metrics output path");
  run->add_option("--trace", run_trace, "per-event trace CSV path");
  run->add_option("--work-dir", run_work, "external solver scratch dir");
  run->callback([&] {
    rc = cmd_run(run_scenario, run_policy, run_delta, run_phi, run_sf,
                 run_fail_on_limit, run_out, run_trace, run_work);
  });

  // sweep
  auto* sweep = app.add_subcommand("sweep", "policy/cost grid of runs");
  std::string sw_config;
  std::string sw_policies = "total,maxmin,mixed,only-restrictions";
  std::string sw_delta = "0,5,10,20,50";
  std::string sw_phi = "10";
  std::string sw_seeds;
  int sw_seed_count = 20;
  SolverFlags sw_sf;
  bool sw_fail_on_limit = false;
  int sw_threads = 0;
  std::string sw_out = "sweep_out";
  bool sw_quiet = false;
  sweep->add_option("--config", sw_config, "generator config JSON");
  sweep->add_option("--policies", sw_policies, "comma list of policies");
  sweep->add_option("--delta-list", sw_delta, "comma list of movement costs");
  sweep->add_option("--phi-list", sw_phi, "comma list of activation costs");
  sweep->add_option("--seeds", sw_seeds, "comma list of explicit seeds");
  sweep->add_option("--seed-count", sw_seed_count,
                    "use seeds 1..N when --seeds is absent");
  sw_sf.attach(sweep);
  sweep->add_flag("--fail-on-limit", sw_fail_on_limit,
                  "treat solver limits as integrity errors");
  sweep->add_option("--threads", sw_threads, "worker threads, 0 = default");
  sweep->add_option("--out", sw_out, "output directory");
  sweep->add_flag("--quiet", sw_quiet, "suppress per-run progress");
  sweep->callback([&] {
    rc = cmd_sweep(sw_config, sw_policies, sw_delta, sw_phi, sw_seeds,
                   sw_seed_count, sw_sf, sw_fail_on_limit, sw_threads, sw_out,
                   sw_quiet);
  });

  // solve-file
  auto* solve = app.add_subcommand("solve-file",
                                   "solve an exported model file");
  std::string lp_path, sol_path;
  SolverFlags solve_sf;
  solve->add_option("lp", lp_path, "model file (LP text)")->required();
  solve->add_option("solution", sol_path, "solution output path")->required();
  solve_sf.attach(solve);
  solve->callback([&] { rc = cmd_solve_file(lp_path, sol_path, solve_sf); });

  // check
  auto* check = app.add_subcommand("check",
                                   "verify an allocation snapshot");
  std::string chk_scenario, chk_snapshot;
  bool chk_json = false;
  double chk_tol = 1e-6;
  check->add_option("--scenario", chk_scenario, "scenario JSON")->required();
  check->add_option("--snapshot", chk_snapshot, "allocation snapshot JSON")
      ->required();
  check->add_flag("--json", chk_json, "emit the report as JSON");
  check->add_option("--tol", chk_tol, "absolute feasibility tolerance");
  check->callback([&] {
    rc = cmd_check(chk_scenario, chk_snapshot, chk_json, chk_tol);
  });

  // plot
  auto* plot = app.add_subcommand("plot", "render a summary CSV as SVG");
  std::string plot_csv, plot_metric = "deployed", plot_x = "delta_j";
  std::string plot_out = "plot.svg";
  plot->add_option("--summary", plot_csv, "summary CSV path")->required();
  plot->add_option("--metric", plot_metric,
                   "deployed | movements | activations");
  plot->add_option("--x", plot_x, "delta_j | phi_j");
  plot->add_option("--out", plot_out, "SVG output path");
  plot->callback([&] { rc = cmd_plot(plot_csv, plot_metric, plot_x, plot_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const IntegrityError& e) {
    std::fprintf(stderr, "integrity error: %s\n", e.what());
    return 2;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return rc;
}
