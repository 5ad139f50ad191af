#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hyper.hpp"
#include "instance.hpp"
#include "oracle.hpp"
#include "relaxation.hpp"
#include "scheduler.hpp"

namespace pcs {

struct SolveOptions {
  LpMode lp_mode = LpMode::General;
  DeadlineMode deadline_mode = DeadlineMode::Standard;
  // Route selection: by default the unit-capacity scheduler runs when every
  // finite capacity is 1, the capacity-aware one otherwise.
  bool force_general_route = false;
  bool with_oracle = false;
  bool oracle_required = false;  // error out instead of skipping over the cap
  std::int64_t oracle_unit_cap = 12;
  std::int64_t expansion_cap = 100000;
  int cut_round_cap = 1000;
  double tolerance = 1e-6;
};

// Everything one end-to-end run produces, checks included.
struct SolveRun {
  LpSolution lp;
  DeadlineSet dl;
  std::size_t n_units = 0;
  bool general_route = false;
  Schedule schedule;
  RatioReport ratio;
  LemmaReport lp_bounds;       // prefix-load lower bounds on the LP solution
  BoundReport outdegree;       // orientation out-degree bound
  BoundReport finish;          // per-unit latest-slot bound
  ValidationReport sched_valid;
  std::optional<OracleResult> oracle;
  bool oracle_skipped = false;  // requested but over the size cap
  bool sandwich_ok = true;      // lp <= opt <= alg when the oracle ran
  bool all_checks_ok = false;
  LambdaInfo lambda;
};

// relaxation -> deadlines -> hypergraph -> orientation -> schedule, plus all
// bound checks. Honors the COFLOW_LOG environment variable: set it to a file
// path (or "-" for stderr) to dump LP pivots and the orientation arcs.
SolveRun run_pipeline(const Instance& inst, const SolveOptions& opts = {});

std::string solve_report_text(const Instance& inst, const SolveRun& run);
std::string solve_report_json(const Instance& inst, const SolveRun& run);
std::string schedule_json(const Schedule& s);

}  // namespace pcs
