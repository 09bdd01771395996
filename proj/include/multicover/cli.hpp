// Command-line surface: generate, solve, verify, outer-cover, exact oracle,
// and batch benchmark with machine-readable reports.
//
// Exit codes are a stable contract for CI: 0 success, 1 verification
// failure, 2 input error, 3 internal-invariant or bound violation.
#pragma once

#include <chrono>
#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "multicover/cover.hpp"
#include "multicover/io.hpp"
#include "multicover/model.hpp"
#include "multicover/oracle.hpp"
#include "multicover/outer_cover.hpp"

namespace multicover {

namespace cli_detail {

inline void emit(const json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << dump_pretty(j);
  else
    write_file(out_path, dump_pretty(j));
}

// One benchmark row; optional fields stay empty when the oracle is off or
// out of budget.
struct BenchRow {
  int id = 0;
  int n_clients = 0;
  int n_servers = 0;
  int max_kappa = 0;
  double alpha = 1.0;
  std::string norm;
  double alg_cost = 0.0;
  double dual_lower_bound = 0.0;
  std::optional<double> oracle_cost;
  std::optional<double> ratio;
  double wall_ms = 0.0;
};

inline json row_to_json(const BenchRow& r) {
  json j{{"id", r.id},
         {"n_clients", r.n_clients},
         {"n_servers", r.n_servers},
         {"max_kappa", r.max_kappa},
         {"alpha", r.alpha},
         {"norm", r.norm},
         {"alg_cost", r.alg_cost},
         {"dual_lower_bound", r.dual_lower_bound},
         {"oracle_cost", r.oracle_cost ? json(*r.oracle_cost) : json()},
         {"ratio", r.ratio ? json(*r.ratio) : json()},
         {"wall_ms", r.wall_ms}};
  return j;
}

inline std::string csv_num(double v) { return json(v).dump(); }

inline std::string row_to_csv(const BenchRow& r) {
  std::string line = std::to_string(r.id) + "," +
                     std::to_string(r.n_clients) + "," +
                     std::to_string(r.n_servers) + "," +
                     std::to_string(r.max_kappa) + "," + csv_num(r.alpha) +
                     "," + r.norm + "," + csv_num(r.alg_cost) + "," +
                     csv_num(r.dual_lower_bound) + ",";
  line += r.oracle_cost ? csv_num(*r.oracle_cost) : std::string();
  line += ",";
  line += r.ratio ? csv_num(*r.ratio) : std::string();
  line += "," + csv_num(r.wall_ms);
  return line;
}

constexpr const char* kCsvHeader =
    "id,n_clients,n_servers,max_kappa,alpha,norm,alg_cost,"
    "dual_lower_bound,oracle_cost,ratio,wall_ms";

}  // namespace cli_detail

inline int cmd_gen(const GenSpec& spec, const std::string& out_path) {
  Instance inst = generate(spec);
  save_instance(out_path, inst);
  std::cout << "wrote " << out_path << " (" << inst.servers.size()
            << " servers, " << inst.clients.size() << " clients)\n";
  return 0;
}

inline int cmd_solve(const std::string& inst_path, const std::string& out_path,
                     bool shrink, bool with_trace) {
  Instance inst = load_instance(inst_path);
  auto [radii, trace] = solve(inst);
  if (shrink) radii = shrink_postpass(inst, radii);
  Solution sol;
  sol.radii = std::move(radii);
  sol.cost = cost(sol.radii, inst.alpha);
  sol.norm = inst.norm;
  if (with_trace) sol.trace = trace;
  if (out_path.empty()) {
    std::cout << dump_pretty(solution_to_json(sol));
  } else {
    save_solution(out_path, sol);
    std::cout << "cost " << json(sol.cost).dump() << ", "
              << trace.levels.size() << " levels, wrote " << out_path << "\n";
  }
  return 0;
}

inline int cmd_verify(const std::string& inst_path,
                      const std::string& sol_path) {
  Instance inst = load_instance(inst_path);
  Solution sol = load_solution(sol_path);
  if (sol.radii.size() != inst.servers.size())
    throw std::invalid_argument("solution radii count does not match servers");
  if (sol.norm != inst.norm)
    throw std::invalid_argument("solution norm does not match instance norm");
  for (std::size_t j = 0; j < inst.clients.size(); ++j) {
    const int c = coverage_count(inst, sol.radii, static_cast<int>(j));
    if (c < inst.kappa[j]) {
      std::cout << "infeasible: client " << j << " covered " << c
                << " times, needs " << inst.kappa[j] << "\n";
      return 1;
    }
  }
  std::cout << "feasible\n";
  return 0;
}

inline int cmd_outercover(const std::string& inst_path,
                          const std::string& out_path) {
  Instance inst = load_instance(inst_path);
  std::vector<int> x_prime;
  for (std::size_t j = 0; j < inst.kappa.size(); ++j)
    if (inst.kappa[j] >= 1) x_prime.push_back(static_cast<int>(j));
  const NeighborTable nt = NeighborTable::build(inst, Norm::linf);
  OuterCoverResult oc = solve_outer_cover(inst, nt, x_prime, inst.kappa);
  json F = json::array();
  for (const auto& f : oc.F) F.push_back({f.server, f.radius});
  cli_detail::emit(json{{"rho", oc.rho},
                        {"dual_lower_bound", oc.dual_lower_bound},
                        {"F", F}},
                   out_path);
  return 0;
}

inline int cmd_oracle(const std::string& inst_path, const std::string& out_path,
                      std::uint64_t max_nodes, bool compare) {
  Instance inst = load_instance(inst_path);
  SearchLimits limits{max_nodes};
  OracleReport rep = exact_mcmc(inst, limits);
  json j{{"budget_exceeded", rep.budget_exceeded},
         {"cost", rep.budget_exceeded ? json() : json(rep.cost)},
         {"radii", rep.radii},
         {"nodes", rep.nodes},
         {"fingerprint", rep.instance_fingerprint}};
  if (compare) {
    RatioReport rr = ratio_report(inst, limits);
    j["ratio_report"] = {
        {"alg_cost", rr.alg_cost},
        {"oracle_cost", rr.budget_exceeded ? json() : json(rr.oracle_cost)},
        {"ratio", rr.budget_exceeded ? json() : json(rr.ratio)},
        {"paper_bound", rr.paper_bound},
        {"bound_satisfied", rr.bound_satisfied},
        {"budget_exceeded", rr.budget_exceeded}};
  }
  cli_detail::emit(j, out_path);
  return 0;
}

struct BenchOptions {
  int count = 0;
  int max_servers = 50;
  int max_clients = 200;
  int dim = 0;          // 0 = mix of 1..3
  double alpha = 0.0;   // 0 = mix of {1, 2, 3}
  std::string norm = "mix";
  std::uint64_t seed = 1;
  bool with_oracle = false;
  std::uint64_t oracle_max_nodes = 20'000'000;
  std::string json_path;
  std::string csv_path;
};

inline int cmd_bench(const BenchOptions& opt) {
  SplitMix64 master(opt.seed);
  std::vector<cli_detail::BenchRow> rows;
  std::vector<std::string> violations;
  double max_ratio = 0.0, ratio_sum = 0.0;
  int ratio_count = 0;

  for (int id = 0; id < opt.count; ++id) {
    GenSpec spec;
    spec.n_servers = master.next_int(1, opt.max_servers);
    spec.n_clients = master.next_int(1, opt.max_clients);
    spec.dim = opt.dim > 0 ? opt.dim : master.next_int(1, 3);
    spec.alpha = opt.alpha >= 1.0
                     ? opt.alpha
                     : static_cast<double>(master.next_int(1, 3));
    spec.norm = opt.norm == "mix"
                    ? (master.next_int(0, 1) == 0 ? Norm::linf : Norm::l2)
                    : norm_from_string(opt.norm);
    spec.kappa_mode = KappaMode::random_max_k;
    spec.k = master.next_int(0, spec.n_servers);
    spec.seed = master.next();
    Instance inst = generate(spec);
    const std::string fp = fingerprint(inst);

    cli_detail::BenchRow row;
    row.id = id;
    row.n_clients = spec.n_clients;
    row.n_servers = spec.n_servers;
    for (int k : inst.kappa) row.max_kappa = std::max(row.max_kappa, k);
    row.alpha = spec.alpha;
    row.norm = to_string(spec.norm);

    const auto t0 = std::chrono::steady_clock::now();
    try {
      auto [radii, trace] = solve(inst);
      row.alg_cost = cost(radii, inst.alpha);
      for (double d : trace.dual_lower_bounds) row.dual_lower_bound += d;
      if (!is_feasible(inst, radii))
        violations.push_back("infeasible solution, instance " + fp);
      for (const auto& rec : trace.levels)
        if (rec.increase > rec.bound * (1.0 + 1e-9) + 1e-9)
          violations.push_back("level bound violated, instance " + fp);
      if (opt.with_oracle) {
        RatioReport rr = ratio_report(inst, SearchLimits{opt.oracle_max_nodes});
        if (!rr.budget_exceeded) {
          row.oracle_cost = rr.oracle_cost;
          row.ratio = rr.ratio;
          max_ratio = std::max(max_ratio, rr.ratio);
          ratio_sum += rr.ratio;
          ++ratio_count;
          if (!rr.bound_satisfied)
            violations.push_back("approximation bound violated, instance " +
                                 fp);
          if (rr.ratio < 1.0 - 1e-9)
            violations.push_back("solver beat the exact oracle, instance " +
                                 fp);
        }
      }
    } catch (const internal_invariant_error& e) {
      violations.push_back(std::string(e.what()) + ", instance " + fp);
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    rows.push_back(std::move(row));
  }

  json jrows = json::array();
  for (const auto& r : rows) jrows.push_back(cli_detail::row_to_json(r));
  json report{{"rows", jrows},
              {"aggregate",
               {{"max_ratio", ratio_count ? json(max_ratio) : json()},
                {"mean_ratio",
                 ratio_count ? json(ratio_sum / ratio_count) : json()},
                {"violations", violations},
                {"violation_count", violations.size()}}}};
  cli_detail::emit(report, opt.json_path);
  if (!opt.csv_path.empty()) {
    std::string csv = cli_detail::kCsvHeader;
    csv += "\n";
    for (const auto& r : rows) csv += cli_detail::row_to_csv(r) + "\n";
    write_file(opt.csv_path, csv);
  }
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << "violation: " << v << "\n";
    return 3;
  }
  return 0;
}

inline int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Minimum-cost multi-cover solver: one disk per server, every "
               "client x covered by at least kappa(x) disks, minimizing "
               "sum r^alpha."};
  app.require_subcommand(1);

  // gen
  GenSpec spec;
  std::string gen_out;
  std::string gen_norm = "linf";
  int uniform_k = -1, max_k = -1;
  auto* gen = app.add_subcommand("gen", "Generate a random instance file");
  gen->add_option("--clients", spec.n_clients, "Number of clients")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--servers", spec.n_servers, "Number of servers")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--dim", spec.dim, "Dimension d >= 1");
  gen->add_option("--alpha", spec.alpha, "Cost exponent alpha >= 1");
  gen->add_option("--norm", gen_norm, "Norm: linf or l2")
      ->check(CLI::IsMember({"linf", "l2"}));
  auto* kopt = gen->add_option("--k", uniform_k, "Uniform demand for every client");
  auto* mkopt = gen->add_option("--max-k", max_k,
                                "Per-client demand uniform in {0..K}");
  kopt->excludes(mkopt);
  gen->add_option("--coord-min", spec.coord_min, "Coordinate lower bound");
  gen->add_option("--coord-max", spec.coord_max, "Coordinate upper bound");
  gen->add_option("--seed", spec.seed, "RNG seed");
  gen->add_option("-o,--out", gen_out, "Output instance file")->required();

  // solve
  std::string solve_in, solve_out;
  bool shrink = false, with_trace = false;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance file");
  solve_cmd->add_option("instance", solve_in, "Instance file")->required();
  solve_cmd->add_option("-o,--out", solve_out, "Output solution file");
  solve_cmd->add_flag("--shrink", shrink,
                      "Post-pass: shrink each radius to the minimum that "
                      "keeps the assignment feasible");
  solve_cmd->add_flag("--trace", with_trace,
                      "Record the per-level trace in the solution file");

  // verify
  std::string ver_inst, ver_sol;
  auto* verify_cmd =
      app.add_subcommand("verify", "Check a solution file against an instance");
  verify_cmd->add_option("instance", ver_inst, "Instance file")->required();
  verify_cmd->add_option("solution", ver_sol, "Solution file")->required();

  // outercover
  std::string oc_in, oc_out;
  auto* oc_cmd = app.add_subcommand(
      "outercover", "Run the primal-dual outer cover on all demanding clients");
  oc_cmd->add_option("instance", oc_in, "Instance file")->required();
  oc_cmd->add_option("-o,--out", oc_out, "Output file");

  // oracle
  std::string orc_in, orc_out;
  std::uint64_t orc_nodes = 20'000'000;
  bool orc_compare = false;
  auto* orc_cmd =
      app.add_subcommand("oracle", "Exact branch-and-bound solve (small instances)");
  orc_cmd->add_option("instance", orc_in, "Instance file")->required();
  orc_cmd->add_option("-o,--out", orc_out, "Output file");
  orc_cmd->add_option("--max-nodes", orc_nodes, "Search node budget");
  orc_cmd->add_flag("--compare", orc_compare,
                    "Also run the solver and report the approximation ratio");

  // bench
  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand(
      "bench", "Generate, solve and check a batch of random instances");
  bench_cmd->add_option("--count", bench.count, "Number of instances")
      ->required()
      ->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--max-servers", bench.max_servers, "Server count upper bound");
  bench_cmd->add_option("--max-clients", bench.max_clients, "Client count upper bound");
  bench_cmd->add_option("--dim", bench.dim, "Dimension (0 = mix of 1..3)");
  bench_cmd->add_option("--alpha", bench.alpha, "Alpha (0 = mix of 1,2,3)");
  bench_cmd->add_option("--norm", bench.norm, "Norm: linf, l2 or mix")
      ->check(CLI::IsMember({"linf", "l2", "mix"}));
  bench_cmd->add_option("--seed", bench.seed, "RNG seed");
  bench_cmd->add_flag("--with-oracle", bench.with_oracle,
                      "Compare every instance against the exact oracle");
  bench_cmd->add_option("--oracle-max-nodes", bench.oracle_max_nodes,
                        "Oracle node budget per instance");
  bench_cmd->add_option("--json", bench.json_path, "Report JSON file (default stdout)");
  bench_cmd->add_option("--csv", bench.csv_path, "Report CSV file");

  std::vector<const char*> argv;
  argv.push_back("multicover");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (gen->parsed()) {
      if (uniform_k < 0 && max_k < 0)
        throw std::invalid_argument("gen: one of --k or --max-k is required");
      spec.norm = norm_from_string(gen_norm);
      spec.kappa_mode =
          uniform_k >= 0 ? KappaMode::uniform_k : KappaMode::random_max_k;
      spec.k = uniform_k >= 0 ? uniform_k : max_k;
      return cmd_gen(spec, gen_out);
    }
    if (solve_cmd->parsed())
      return cmd_solve(solve_in, solve_out, shrink, with_trace);
    if (verify_cmd->parsed()) return cmd_verify(ver_inst, ver_sol);
    if (oc_cmd->parsed()) return cmd_outercover(oc_in, oc_out);
    if (orc_cmd->parsed())
      return cmd_oracle(orc_in, orc_out, orc_nodes, orc_compare);
    if (bench_cmd->parsed()) return cmd_bench(bench);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const internal_invariant_error& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace multicover
