#include "pipeline.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "errors.hpp"
#include "rational.hpp"

namespace pcs {

namespace {

using json = nlohmann::ordered_json;

// COFLOW_LOG sink, opened once per run when the variable is set.
struct DebugLog {
  std::unique_ptr<std::ofstream> file;
  std::ostream* stream = nullptr;

  DebugLog() {
    const char* target = std::getenv("COFLOW_LOG");
    if (!target || !*target) return;
    if (std::string(target) == "-" || std::string(target) == "stderr") {
      stream = &std::cerr;
      return;
    }
    file = std::make_unique<std::ofstream>(target, std::ios::app);
    if (*file) stream = file.get();
  }
};

bool unit_capacities_only(const Instance& inst) {
  for (const auto& node : inst.nodes)
    if (node.capacity.is_finite() && node.capacity.value() != 1) return false;
  return true;
}

}  // namespace

SolveRun run_pipeline(const Instance& inst, const SolveOptions& opts) {
  const ValidationReport vr = validate(inst);
  if (!vr.ok) {
    std::string msg = "instance fails validation:";
    for (const auto& v : vr.violations) msg += "\n  - " + v;
    throw ValidationError(msg);
  }

  DebugLog log;
  SolveRun run;
  run.lambda = path_lambda(inst);
  run.general_route = opts.force_general_route || !unit_capacities_only(inst);

  RelaxOptions relax;
  relax.cut_round_cap = opts.cut_round_cap;
  relax.lp.trace = log.stream;
  run.lp = solve_relaxation(inst, opts.lp_mode, relax);
  run.dl = deadlines(run.lp, opts.deadline_mode);
  run.lp_bounds = check_lp_lower_bounds(inst, run.lp, opts.deadline_mode);

  const Hypergraph h = build_hypergraph(inst, run.dl, opts.expansion_cap);
  run.n_units = h.total_units();
  const LineAdjacency adj = build_line_adjacency(h);
  const Orientation o = orient(h, adj);
  if (log.stream) {
    *log.stream << "orientation of " << inst.name << " (" << h.total_units()
                << " units):\n";
    dump_orientation(o, *log.stream);
  }
  run.outdegree = check_outdegree_bound(o, h, inst);

  run.schedule = run.general_route ? schedule_general_capacity(h, o, inst)
                                   : schedule_unit_capacity(h, o, inst);
  run.finish = check_finish_bounds(h, run.schedule, inst, run.general_route);
  run.sched_valid = validate_schedule(inst, run.schedule);

  std::optional<double> oracle_obj;
  if (opts.with_oracle) {
    if (inst.total_demand_units() <= opts.oracle_unit_cap) {
      run.oracle = exact_optimum(inst, opts.oracle_unit_cap);
      oracle_obj = run.oracle->objective;
    } else if (opts.oracle_required) {
      throw CapExceededError(
          "instance has " + std::to_string(inst.total_demand_units()) +
          " demand units; the oracle cap is " +
          std::to_string(opts.oracle_unit_cap));
    } else {
      run.oracle_skipped = true;
    }
  }

  run.ratio = evaluate(inst, run.lp, run.dl, run.schedule, oracle_obj,
                       run.general_route);
  if (run.oracle) {
    const double tol = opts.tolerance;
    run.sandwich_ok = run.lp.lp_objective <= run.oracle->objective + tol &&
                      run.oracle->objective <= run.schedule.objective + tol;
  }
  run.all_checks_ok = run.lp_bounds.ok && run.outdegree.ok && run.finish.ok &&
                      run.sched_valid.ok && run.ratio.bound_satisfied &&
                      run.sandwich_ok;
  return run;
}

namespace {

json report_json_doc(const Instance& inst, const SolveRun& run) {
  json doc = json::object();
  doc["instance"] = {{"name", inst.name},
                     {"nodes", inst.node_count()},
                     {"coflows", inst.job_count()},
                     {"units", run.n_units},
                     {"lambda", run.lambda.lambda},
                     {"lambda_finite", run.lambda.lambda_finite}};
  json cstar = json::array();
  for (double c : run.lp.c_star) cstar.push_back(c);
  json order = json::array();
  for (std::size_t k : run.lp.order) order.push_back(k);
  doc["lp"] = {{"objective", run.lp.lp_objective},
               {"c_star", std::move(cstar)},
               {"order", std::move(order)},
               {"cuts_added", run.lp.cuts_added},
               {"rounds", run.lp.iterations}};
  json dl = json::array();
  json dl_rational = json::array();
  for (double d : run.dl.d) {
    dl.push_back(d);
    dl_rational.push_back(to_string(approx_rational(d)));
  }
  doc["deadlines"] = {
      {"mode", run.dl.mode == DeadlineMode::Standard ? "standard" : "improved"},
      {"values", std::move(dl)},
      {"approx_rational", std::move(dl_rational)}};
  json completion = json::array();
  for (std::int64_t c : run.schedule.completion) completion.push_back(c);
  doc["schedule"] = {{"objective", run.schedule.objective},
                     {"completion", std::move(completion)},
                     {"slots_used", run.schedule.horizon_used},
                     {"route", run.general_route ? "capacities" : "unit"}};
  doc["ratio"] = {{"lambda", run.ratio.lambda},
                  {"delta", run.ratio.delta},
                  {"bound", run.ratio.bound_used},
                  {"vs_lp", run.ratio.ratio_vs_lp},
                  {"bound_satisfied", run.ratio.bound_satisfied}};
  if (run.ratio.oracle_objective) {
    doc["oracle"] = {{"objective", *run.ratio.oracle_objective},
                     {"nodes_explored", run.oracle->nodes_explored},
                     {"proven_optimal", run.oracle->proven_optimal}};
    if (run.ratio.ratio_vs_opt) doc["ratio"]["vs_opt"] = *run.ratio.ratio_vs_opt;
  } else if (run.oracle_skipped) {
    doc["oracle"] = {{"skipped", "instance exceeds the oracle unit cap"}};
  }
  doc["checks"] = {{"lp_lower_bounds", run.lp_bounds.ok},
                   {"outdegree_bound", run.outdegree.ok},
                   {"finish_bound", run.finish.ok},
                   {"schedule_feasible", run.sched_valid.ok},
                   {"ratio_bound", run.ratio.bound_satisfied},
                   {"lp_opt_alg_sandwich", run.sandwich_ok},
                   {"all", run.all_checks_ok}};
  json problems = json::array();
  for (const auto* list : {&run.lp_bounds.violations, &run.outdegree.violations,
                           &run.finish.violations, &run.sched_valid.violations})
    for (const auto& v : *list) problems.push_back(v);
  if (!problems.empty()) doc["violations"] = std::move(problems);
  return doc;
}

}  // namespace

std::string solve_report_json(const Instance& inst, const SolveRun& run) {
  return report_json_doc(inst, run).dump(2) + "\n";
}

std::string solve_report_text(const Instance& inst, const SolveRun& run) {
  std::ostringstream out;
  out << "instance: " << (inst.name.empty() ? "(unnamed)" : inst.name) << "  ["
      << inst.node_count() << " nodes, " << inst.job_count() << " coflows, "
      << run.n_units << " units, lambda " << run.lambda.lambda;
  if (run.lambda.lambda_finite != run.lambda.lambda)
    out << " (finite " << run.lambda.lambda_finite << ")";
  out << "]\n";
  out << "lp: objective " << run.lp.lp_objective << " after "
      << run.lp.iterations << " round(s), " << run.lp.cuts_added
      << " cut(s)\n";
  out << "deadlines (" << (run.dl.mode == DeadlineMode::Standard ? "standard" : "improved")
      << "):";
  for (std::size_t k = 0; k < run.dl.d.size(); ++k)
    out << " D" << k << "=" << to_string(approx_rational(run.dl.d[k]));
  out << "\n";
  out << "schedule (" << (run.general_route ? "capacities" : "unit")
      << " route): objective " << run.schedule.objective << ", last slot "
      << run.schedule.horizon_used << "\n";
  if (run.oracle)
    out << "oracle: optimum " << run.oracle->objective << " ("
        << run.oracle->nodes_explored << " nodes)\n";
  else if (run.oracle_skipped)
    out << "oracle: skipped (instance exceeds the unit cap)\n";
  out << "guarantee: factor " << run.ratio.bound_used << " * LP = "
      << run.ratio.bound_used * run.lp.lp_objective << ", achieved "
      << run.schedule.objective << " (ratio " << run.ratio.ratio_vs_lp << ")\n";
  out << "checks: " << (run.all_checks_ok ? "all ok" : "FAILED") << "\n";
  for (const auto* list : {&run.lp_bounds.violations, &run.outdegree.violations,
                           &run.finish.violations, &run.sched_valid.violations})
    for (const auto& v : *list) out << "  violation: " << v << "\n";
  return out.str();
}

std::string schedule_json(const Schedule& s) {
  json doc = json::object();
  doc["slots"] = json::array();
  for (const auto& [t, members] : s.by_slot) {
    json units = json::array();
    for (std::uint32_t u : members)
      units.push_back({{"job", s.units[u].job},
                       {"flow", s.units[u].flow},
                       {"copy", s.units[u].copy}});
    doc["slots"].push_back({{"t", t}, {"units", std::move(units)}});
  }
  doc["completion"] = s.completion;
  doc["objective"] = s.objective;
  return doc.dump(2) + "\n";
}

}  // namespace pcs
