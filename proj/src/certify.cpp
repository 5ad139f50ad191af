#include "certify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "errors.hpp"
#include "oracle.hpp"
#include "rng.hpp"

namespace pcs {

Profile profile_from_name(const std::string& name) {
  if (name == "small") return Profile::Small;
  if (name == "capacities") return Profile::Capacities;
  if (name == "bipartite") return Profile::Bipartite;
  if (name == "examples") return Profile::Examples;
  if (name == "reductions") return Profile::Reductions;
  if (name == "kernels") return Profile::Kernels;
  if (name == "all") return Profile::All;
  throw ValidationError("unknown profile '" + name +
                        "' (small, capacities, bipartite, examples, "
                        "reductions, kernels, all)");
}

std::string profile_name(Profile p) {
  switch (p) {
    case Profile::Small: return "small";
    case Profile::Capacities: return "capacities";
    case Profile::Bipartite: return "bipartite";
    case Profile::Examples: return "examples";
    case Profile::Reductions: return "reductions";
    case Profile::Kernels: return "kernels";
    case Profile::All: return "all";
  }
  return "?";
}

RandomSpec corpus_spec(std::uint64_t seed, bool with_capacities) {
  RandomSpec s;
  s.seed = seed;
  s.n_coflows = 1 + static_cast<std::int64_t>(seed % 5);
  s.n_nodes = 4 + static_cast<std::int64_t>((seed / 2) % 7);
  s.max_flows = 1 + static_cast<std::int64_t>((seed / 3) % 8);
  s.max_path = 2 + static_cast<std::int64_t>(seed % 3);
  s.max_demand = 1 + static_cast<std::int64_t>((seed / 5) % 3);
  s.max_release =
      seed % 2 == 0 ? 0 : 1 + static_cast<std::int64_t>((seed / 7) % 5);
  s.max_capacity = with_capacities ? 3 : 1;
  // Every fourth seed stays small enough for the exact oracle.
  if (seed % 4 == 1) {
    s.n_coflows = 1 + static_cast<std::int64_t>(seed % 2);
    s.max_flows = 1 + static_cast<std::int64_t>((seed / 3) % 2);
    s.max_demand = 1;
  }
  return s;
}

namespace {

struct Checker {
  CertifyReport& report;
  CertifyItem item;

  Checker(CertifyReport& r, std::string name) : report(r) {
    item.name = std::move(name);
  }

  void expect(bool ok, const std::string& what) {
    ++report.checks_run;
    if (!ok) {
      item.pass = false;
      item.failures.push_back(what);
    }
  }

  void finish() {
    if (!item.pass) report.all_pass = false;
    report.items.push_back(std::move(item));
  }
};

void collect_run_failures(const SolveRun& run, Checker& check) {
  check.expect(run.lp_bounds.ok, "LP prefix lower bounds violated");
  check.expect(run.outdegree.ok, "orientation out-degree bound violated");
  check.expect(run.finish.ok, "per-unit finish bound violated");
  check.expect(run.sched_valid.ok, "schedule failed feasibility validation");
  check.expect(run.ratio.bound_satisfied,
               "objective exceeds the guarantee factor times the LP bound");
  check.expect(run.sandwich_ok, "LP <= optimum <= objective chain violated");
  for (const auto* list :
       {&run.lp_bounds.violations, &run.outdegree.violations,
        &run.finish.violations, &run.sched_valid.violations})
    for (const auto& v : *list) check.item.failures.push_back("  " + v);
}

void certify_instance(const Instance& inst, const std::string& label,
                      const CertifyOptions& opts, CertifyReport& report,
                      LpMode lp_mode = LpMode::General) {
  std::vector<DeadlineMode> modes;
  if (opts.deadline_modes == 0 || opts.deadline_modes == 2)
    modes.push_back(DeadlineMode::Standard);
  if (opts.deadline_modes == 1 || opts.deadline_modes == 2)
    modes.push_back(DeadlineMode::Improved);

  for (DeadlineMode mode : modes) {
    const std::string mode_name =
        mode == DeadlineMode::Standard ? "standard" : "improved";
    Checker check(report, label + " [" + mode_name + "]");
    try {
      SolveOptions sopts;
      sopts.lp_mode = lp_mode;
      sopts.deadline_mode = mode;
      sopts.with_oracle = true;
      sopts.oracle_unit_cap = opts.oracle_unit_cap;
      const SolveRun run = run_pipeline(inst, sopts);
      collect_run_failures(run, check);
      if (run.oracle) ++report.oracle_runs;
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    check.finish();
  }
}

void profile_small(const CertifyOptions& opts, CertifyReport& report,
                   bool with_capacities) {
  for (std::uint64_t seed = opts.seed_lo; seed <= opts.seed_hi; ++seed) {
    const RandomSpec spec = corpus_spec(seed, with_capacities);
    const Instance inst = gen_random(spec);
    certify_instance(inst, (with_capacities ? "capacities seed " : "small seed ") +
                               std::to_string(seed),
                     opts, report);
  }
}

void profile_bipartite(const CertifyOptions& opts, CertifyReport& report) {
  for (std::uint64_t seed = opts.seed_lo; seed <= opts.seed_hi; ++seed) {
    BipartiteSpec spec;
    spec.seed = seed;
    spec.n_ports = 2 + static_cast<std::int64_t>(seed % 3);
    spec.n_coflows = 1 + static_cast<std::int64_t>(seed % 4);
    spec.density = 0.3 + 0.1 * static_cast<double>(seed % 8);
    spec.max_demand = 1 + static_cast<std::int64_t>(seed % 2);
    spec.max_release = seed % 2 == 0 ? 0 : static_cast<std::int64_t>(seed % 4);
    const Instance inst = gen_bipartite(spec);

    certify_instance(inst, "bipartite seed " + std::to_string(seed), opts,
                     report, LpMode::Bipartite);

    Checker check(report, "bipartite seed " + std::to_string(seed) +
                              " [mode agreement]");
    try {
      const LpSolution general = solve_relaxation(inst, LpMode::General);
      const LpSolution bipartite = solve_relaxation(inst, LpMode::Bipartite);
      check.expect(
          std::abs(general.lp_objective - bipartite.lp_objective) <= 1e-6,
          "general and bipartite LP objectives disagree");
      check.expect(path_lambda(inst).lambda == 2,
                   "bipartite instance without 2-node paths");
      SolveOptions sopts;
      sopts.deadline_mode = DeadlineMode::Standard;
      const SolveRun run = run_pipeline(inst, sopts);
      const double expected = run.ratio.zero_release ? 4.0 : 5.0;
      check.expect(run.ratio.bound_used == expected,
                   "two-layer factor should be 4 (zero releases) or 5");
      check.expect(run.ratio.bound_satisfied, "two-layer factor violated");
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    check.finish();
  }
}

void profile_examples(const CertifyOptions& opts, CertifyReport& report) {
  {
    Checker check(report, "triangle exact values");
    try {
      const Instance tri = gen_triangle();
      SolveOptions sopts;
      sopts.with_oracle = true;
      const SolveRun run = run_pipeline(tri, sopts);
      check.expect(std::abs(run.lp.lp_objective - 2.0) <= 1e-6,
                   "triangle LP objective must be 2");
      check.expect(run.oracle && std::abs(run.oracle->objective - 3.0) < 1e-9,
                   "triangle optimum must be 3");
      collect_run_failures(run, check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    check.finish();
  }
  {
    Checker check(report, "quad exact values");
    try {
      const Instance quad = gen_quad();
      SolveOptions sopts;
      sopts.with_oracle = true;
      const SolveRun run = run_pipeline(quad, sopts);
      check.expect(std::abs(run.lp.lp_objective - 3.0) <= 1e-6,
                   "quad LP objective must be 3");
      check.expect(run.oracle && std::abs(run.oracle->objective - 4.0) < 1e-9,
                   "quad optimum must be 4");
      collect_run_failures(run, check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    check.finish();
  }
  const std::pair<const char*, int> graphs[] = {
      {"k3", 3}, {"k4", 4}, {"c5", 3}, {"petersen", 3}};
  for (const auto& [name, chi] : graphs) {
    Checker check(report, std::string("coloring ") + name);
    try {
      const SimpleGraph g = named_graph(name);
      check.expect(chromatic_number(g) == chi,
                   std::string(name) + ": chromatic number mismatch");
      const OracleResult res = exact_optimum(gen_coloring(g));
      ++report.oracle_runs;
      check.expect(std::abs(res.objective - static_cast<double>(chi)) < 1e-9,
                   std::string(name) +
                       ": scheduling optimum differs from the chromatic number");
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    check.finish();
  }
}

EdgeCapInstance random_path_edge_instance(std::uint64_t seed,
                                          std::int64_t* longest_range) {
  Rng rng(seed);
  EdgeCapInstance e;
  e.name = "path-s" + std::to_string(seed);
  const std::int64_t n_edges = 2 + rng.uniform_int(0, 3);
  for (std::int64_t i = 0; i <= n_edges; ++i)
    e.node_ids.push_back("p" + std::to_string(i));
  for (std::int64_t i = 0; i < n_edges; ++i)
    e.edges.push_back({static_cast<NodeIndex>(i), static_cast<NodeIndex>(i + 1),
                       Capacity::finite(rng.uniform_int(1, 2))});
  const std::int64_t n_coflows = 1 + rng.uniform_int(0, 1);
  std::int64_t longest = 0;
  for (std::int64_t k = 0; k < n_coflows; ++k) {
    EdgeCoflow cf;
    cf.weight = static_cast<double>(rng.uniform_int(1, 10));
    cf.release = rng.uniform_int(0, 2);
    const std::int64_t n_flows = 1 + rng.uniform_int(0, 1);
    for (std::int64_t j = 0; j < n_flows; ++j) {
      EdgeFlow flow;
      const std::int64_t lo = rng.uniform_int(0, n_edges - 1);
      const std::int64_t hi = rng.uniform_int(lo, n_edges - 1);
      for (std::int64_t t = lo; t <= hi; ++t)
        flow.edge_path.push_back(static_cast<std::uint32_t>(t));
      flow.demand = rng.uniform_int(1, 2);
      longest = std::max(longest, hi - lo + 1);
      cf.flows.push_back(std::move(flow));
    }
    e.coflows.push_back(std::move(cf));
  }
  *longest_range = longest;
  return e;
}

void profile_reductions(const CertifyOptions& opts, CertifyReport& report) {
  for (std::uint64_t seed = opts.seed_lo; seed <= opts.seed_hi; ++seed) {
    {
      Checker check(report, "edge-to-node path seed " + std::to_string(seed));
      try {
        std::int64_t longest = 0;
        const EdgeCapInstance e = random_path_edge_instance(seed, &longest);
        const Instance inst = reduce_edge_capacities(e);
        check.expect(validate(inst).ok, "reduced instance fails validation");
        check.expect(path_lambda(inst).lambda_finite ==
                         static_cast<int>(longest),
                     "finite-node count must equal the traversed edge count");
        SolveOptions sopts;
        sopts.with_oracle = true;
        const SolveRun run = run_pipeline(inst, sopts);
        if (run.oracle) ++report.oracle_runs;
        collect_run_failures(run, check);
      } catch (const std::exception& e) {
        check.expect(false, std::string("exception: ") + e.what());
      }
      check.finish();
    }
    {
      Checker check(report, "node-edge round trip seed " + std::to_string(seed));
      try {
        RandomSpec spec;
        spec.seed = seed;
        spec.n_coflows = 1 + static_cast<std::int64_t>(seed % 2);
        spec.n_nodes = 1 + static_cast<std::int64_t>(seed % 3);
        spec.max_flows = 2;
        spec.max_path = 3;
        spec.max_demand = 2;
        spec.max_release = seed % 2 == 0 ? 0 : 2;
        spec.max_capacity = 2;
        const Instance original = gen_random(spec);
        const Instance round_trip =
            reduce_edge_capacities(reduce_node_to_edge(original));
        check.expect(validate(round_trip).ok,
                     "round-trip instance fails validation");
        const OracleResult a = exact_optimum(original, opts.oracle_unit_cap);
        const OracleResult b = exact_optimum(round_trip, opts.oracle_unit_cap);
        report.oracle_runs += 2;
        check.expect(std::abs(a.objective - b.objective) <= 1e-6,
                     "round trip changed the exact optimum (" +
                         std::to_string(a.objective) + " vs " +
                         std::to_string(b.objective) + ")");
      } catch (const std::exception& e) {
        check.expect(false, std::string("exception: ") + e.what());
      }
      check.finish();
    }
  }
}

void profile_kernels(const CertifyOptions& opts, CertifyReport& report) {
  for (std::uint64_t seed = opts.seed_lo; seed <= opts.seed_hi; ++seed) {
    Checker check(report, "kernel seed " + std::to_string(seed));
    try {
      Rng rng(seed);
      const auto n = static_cast<std::uint32_t>(2 + rng.uniform_int(0, 28));
      const double p = 0.05 + 0.3 * rng.uniform01();
      Orientation o;
      o.out_adj.resize(n);
      o.in_deg.assign(n, 0);
      std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
      for (std::uint32_t u = 0; u < n; ++u) {
        for (std::uint32_t v = 0; v < u; ++v) {
          if (rng.uniform01() < p) {
            o.out_adj[u].push_back(v);  // high-to-low keeps it acyclic
            ++o.in_deg[v];
            adj[u][v] = adj[v][u] = 1;
          }
        }
      }
      check.expect(orientation_is_acyclic(o), "orientation must be acyclic");

      // Check on the full vertex set and on a random induced subgraph.
      for (int variant = 0; variant < 2; ++variant) {
        std::vector<std::uint32_t> active;
        for (std::uint32_t u = 0; u < n; ++u)
          if (variant == 0 || rng.uniform01() < 0.6) active.push_back(u);
        if (active.empty()) continue;
        const auto kernel = find_kernel(o, active);
        std::vector<char> in_kernel(n, 0);
        for (std::uint32_t u : kernel) in_kernel[u] = 1;
        for (std::size_t x = 0; x < kernel.size(); ++x)
          for (std::size_t y = x + 1; y < kernel.size(); ++y)
            check.expect(!adj[kernel[x]][kernel[y]],
                         "kernel is not independent");
        for (std::uint32_t u : active) {
          if (in_kernel[u]) continue;
          bool dominated = false;
          for (std::uint32_t v : o.out_adj[u])
            if (in_kernel[v] &&
                std::find(active.begin(), active.end(), v) != active.end()) {
              dominated = true;
              break;
            }
          check.expect(dominated, "vertex " + std::to_string(u) +
                                      " has no arc into the kernel");
        }
      }
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    check.finish();
  }
}

}  // namespace

CertifyReport certify(const CertifyOptions& opts) {
  CertifyReport report;
  switch (opts.profile) {
    case Profile::Small: profile_small(opts, report, false); break;
    case Profile::Capacities: profile_small(opts, report, true); break;
    case Profile::Bipartite: profile_bipartite(opts, report); break;
    case Profile::Examples: profile_examples(opts, report); break;
    case Profile::Reductions: profile_reductions(opts, report); break;
    case Profile::Kernels: profile_kernels(opts, report); break;
    case Profile::All: {
      profile_small(opts, report, false);
      profile_small(opts, report, true);
      CertifyOptions rest = opts;
      rest.seed_hi = opts.seed_lo + std::min<std::uint64_t>(
                                        9, opts.seed_hi - opts.seed_lo);
      profile_bipartite(rest, report);
      profile_examples(rest, report);
      profile_reductions(rest, report);
      profile_kernels(opts, report);
      break;
    }
  }
  return report;
}

std::string certify_report_text(const CertifyReport& report) {
  std::ostringstream out;
  for (const auto& item : report.items) {
    out << (item.pass ? "pass" : "FAIL") << "  " << item.name << "\n";
    for (const auto& f : item.failures) out << "      " << f << "\n";
  }
  out << (report.all_pass ? "PASS" : "FAIL") << ": " << report.items.size()
      << " item(s), " << report.checks_run << " check(s), "
      << report.oracle_runs << " oracle-certified run(s)\n";
  return out.str();
}

std::string certify_report_json(const CertifyReport& report) {
  nlohmann::ordered_json doc;
  doc["items"] = nlohmann::ordered_json::array();
  for (const auto& item : report.items) {
    nlohmann::ordered_json row;
    row["name"] = item.name;
    row["pass"] = item.pass;
    if (!item.failures.empty()) row["failures"] = item.failures;
    doc["items"].push_back(std::move(row));
  }
  doc["checks_run"] = report.checks_run;
  doc["oracle_runs"] = report.oracle_runs;
  doc["all_pass"] = report.all_pass;
  return doc.dump(2) + "\n";
}

}  // namespace pcs
