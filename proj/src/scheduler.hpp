#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hyper.hpp"
#include "instance.hpp"
#include "relaxation.hpp"

namespace pcs {

// A feasible assignment of every demand unit to an integer time slot.
// Units are indexed as in the hypergraph they were scheduled from; the
// (job, flow, copy) descriptors make the schedule self-contained, so it can
// be validated against the instance alone.
struct Schedule {
  struct UnitRef {
    std::size_t job = 0;
    std::size_t flow = 0;
    std::int64_t copy = 0;
  };
  std::vector<UnitRef> units;
  std::vector<std::int64_t> slot_of;                      // per unit, >= 1
  std::map<std::int64_t, std::vector<std::uint32_t>> by_slot;
  std::vector<std::int64_t> completion;                   // per job
  double objective = 0.0;
  std::int64_t horizon_used = 0;   // last occupied slot
  std::int64_t horizon_bound = 0;  // slot budget the scheduler ran with
};

// Kernel scheduling for unit capacities: slot by slot, extract one kernel of
// the released part of the orientation and schedule it. Requires every
// finite node capacity to be 1. The orientation must come from orient() on
// deadlines that dominate the prefix loads.
Schedule schedule_unit_capacity(const Hypergraph& h, const Orientation& o,
                                const Instance& inst);

// Capacity-aware variant: within each slot, keeps extracting kernels while
// unsaturated released units remain, decrementing per-node residuals and
// dropping units whose node saturated for this slot.
Schedule schedule_general_capacity(const Hypergraph& h, const Orientation& o,
                                   const Instance& inst);

// Independent feasibility check: unit coverage, release times, per-slot
// per-node occupancy against capacities, and recomputed completions and
// objective.
ValidationReport validate_schedule(const Instance& inst, const Schedule& s);

// Per-unit latest-slot guarantee implied by the out-degree bound:
// unit capacities  -> slot <= r_e + lambda * D_e - (lambda - 1)
// general          -> slot <= r_e + lambda * D_e * disparity(e)
BoundReport check_finish_bounds(const Hypergraph& h, const Schedule& s,
                                const Instance& inst, bool general_capacity);

struct RatioReport {
  double lp_objective = 0.0;
  double alg_objective = 0.0;
  std::optional<double> oracle_objective;
  int lambda = 0;          // effective path length used by the bound
  std::int64_t delta = 1;  // max capacity disparity over units
  double bound_used = 0.0;
  double ratio_vs_lp = 0.0;
  std::optional<double> ratio_vs_opt;
  bool bound_satisfied = false;
  bool zero_release = false;
  bool release_below_lambda = false;
};

// Picks the guarantee factor for the run configuration and checks the
// schedule objective against bound * LP (and bound * optimum if given):
//   standard deadlines: 2*lambda*Delta, +1 unless all releases are zero
//   improved deadlines: (2n/(n+1))*lambda*Delta, +1 unless all releases are
//   below lambda (unit capacities) or zero (general capacities).
RatioReport evaluate(const Instance& inst, const LpSolution& lp,
                     const DeadlineSet& dl, const Schedule& s,
                     std::optional<double> oracle_objective,
                     bool general_capacity);

}  // namespace pcs
