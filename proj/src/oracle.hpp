#pragma once

#include <cstdint>

#include "instance.hpp"
#include "scheduler.hpp"

namespace pcs {

struct OracleResult {
  double objective = 0.0;
  Schedule schedule;
  std::uint64_t nodes_explored = 0;
  bool proven_optimal = false;
};

// Provably optimal schedule by depth-first search over the slots, trying
// only maximal feasible unit sets per slot (delaying a schedulable unit
// while the rest of the slot stays fixed never helps a min-sum objective)
// and pruning with a per-job load lower bound. Throws CapExceededError when
// the instance has more than unit_cap demand units. horizon_cap of 0 means
// the always-sufficient default of total units + max release.
OracleResult exact_optimum(const Instance& inst, std::int64_t unit_cap = 12,
                           std::int64_t horizon_cap = 0);

// Exact chromatic number by iterative deepening over the color count.
int chromatic_number(const SimpleGraph& g, int vertex_cap = 12);

// List scheduling: units ordered by (release, weight desc, job, flow, copy),
// each placed in the earliest feasible slot. Feasible by construction; used
// as a baseline and as the oracle's initial upper bound.
Schedule greedy_baseline(const Instance& inst);

}  // namespace pcs
