#include "scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "errors.hpp"

namespace pcs {

namespace {

void finalize(Schedule& s, const Hypergraph& h, const Instance& inst) {
  s.units.resize(h.units.size());
  for (const auto& unit : h.units)
    s.units[unit.unit_id] = {unit.job, unit.flow, unit.copy};
  s.completion.assign(inst.job_count(), 0);
  for (const auto& unit : h.units) {
    const std::int64_t slot = s.slot_of[unit.unit_id];
    s.completion[unit.job] = std::max(s.completion[unit.job], slot);
    s.horizon_used = std::max(s.horizon_used, slot);
  }
  s.objective = 0.0;
  for (std::size_t k = 0; k < inst.job_count(); ++k)
    s.objective += inst.coflows[k].weight * static_cast<double>(s.completion[k]);
}

std::int64_t ceil_to_slot(double x) {
  return static_cast<std::int64_t>(std::ceil(x - 1e-9));
}

}  // namespace

Schedule schedule_unit_capacity(const Hypergraph& h, const Orientation& o,
                                const Instance& inst) {
  for (const auto& node : inst.nodes)
    if (node.capacity.is_finite() && node.capacity.value() != 1)
      throw ValidationError("unit-capacity scheduling requires every finite "
                            "node capacity to be 1 (node '" + node.id + "')");

  Schedule s;
  s.slot_of.assign(h.units.size(), 0);
  const double lambda = effective_lambda(inst);
  std::int64_t max_release = 0;
  double max_deadline = 0.0;
  for (const auto& unit : h.units) {
    max_release = std::max(max_release, unit.release);
    max_deadline = std::max(max_deadline, unit.deadline);
  }
  const std::int64_t horizon =
      ceil_to_slot(static_cast<double>(max_release) + lambda * max_deadline);
  s.horizon_bound = horizon;

  std::vector<char> pending(h.units.size(), 1);
  std::size_t left = h.units.size();
  std::vector<std::uint32_t> active;
  for (std::int64_t t = 1; t <= horizon && left > 0; ++t) {
    active.clear();
    for (const auto& unit : h.units)
      if (pending[unit.unit_id] && t > unit.release)
        active.push_back(unit.unit_id);
    if (active.empty()) continue;
    for (std::uint32_t u : find_kernel(o, active)) {
      s.slot_of[u] = t;
      s.by_slot[t].push_back(u);
      pending[u] = 0;
      --left;
    }
  }
  if (left > 0)
    throw InternalError("edge scheduling left units unscheduled at the "
                        "horizon; the out-degree precondition must be broken");
  finalize(s, h, inst);
  return s;
}

Schedule schedule_general_capacity(const Hypergraph& h, const Orientation& o,
                                   const Instance& inst) {
  Schedule s;
  s.slot_of.assign(h.units.size(), 0);
  const double lambda = effective_lambda(inst);
  std::int64_t max_release = 0;
  double max_scaled_deadline = 0.0;
  for (const auto& unit : h.units) {
    max_release = std::max(max_release, unit.release);
    max_scaled_deadline =
        std::max(max_scaled_deadline,
                 unit.deadline *
                     static_cast<double>(capacity_disparity(unit, inst)));
  }
  const std::int64_t horizon = ceil_to_slot(static_cast<double>(max_release) +
                                            lambda * max_scaled_deadline);
  s.horizon_bound = horizon;

  std::vector<char> pending(h.units.size(), 1);
  std::size_t left = h.units.size();
  std::vector<std::int64_t> residual(inst.node_count(), 0);
  std::vector<std::uint32_t> working;
  for (std::int64_t t = 1; t <= horizon && left > 0; ++t) {
    for (NodeIndex v = 0; v < inst.node_count(); ++v)
      residual[v] = inst.nodes[v].capacity.is_finite()
                        ? inst.nodes[v].capacity.value()
                        : -1;  // unbounded: never saturates

    working.clear();
    for (const auto& unit : h.units)
      if (pending[unit.unit_id] && t > unit.release)
        working.push_back(unit.unit_id);

    while (!working.empty()) {
      const auto kernel = find_kernel(o, working);
      std::vector<char> in_kernel(h.units.size(), 0);
      for (std::uint32_t u : kernel) {
        s.slot_of[u] = t;
        s.by_slot[t].push_back(u);
        pending[u] = 0;
        in_kernel[u] = 1;
        --left;
        for (NodeIndex v : h.units[u].all_nodes)
          if (residual[v] > 0) --residual[v];
      }
      // Keep only units that survived this extraction and still have room
      // on every finite node they touch.
      std::vector<std::uint32_t> next;
      next.reserve(working.size());
      for (std::uint32_t u : working) {
        if (in_kernel[u]) continue;
        bool open = true;
        for (NodeIndex v : h.units[u].adj_nodes)
          if (residual[v] == 0) { open = false; break; }
        if (open) next.push_back(u);
      }
      working.swap(next);
    }
  }
  if (left > 0)
    throw InternalError("edge scheduling left units unscheduled at the "
                        "horizon; the out-degree precondition must be broken");
  finalize(s, h, inst);
  return s;
}

ValidationReport validate_schedule(const Instance& inst, const Schedule& s) {
  ValidationReport report;
  auto fail = [&report](std::string msg) {
    report.ok = false;
    report.violations.push_back(std::move(msg));
  };

  // Coverage: each flow's demand units exactly once, identified by copy.
  std::map<std::pair<std::size_t, std::size_t>, std::map<std::int64_t, int>> seen;
  for (std::size_t u = 0; u < s.units.size(); ++u) {
    const auto& ref = s.units[u];
    if (ref.job >= inst.job_count() ||
        ref.flow >= inst.coflows[ref.job].flows.size()) {
      fail("unit " + std::to_string(u) + " references a nonexistent flow");
      continue;
    }
    seen[{ref.job, ref.flow}][ref.copy]++;
  }
  for (std::size_t k = 0; k < inst.job_count(); ++k) {
    for (std::size_t j = 0; j < inst.coflows[k].flows.size(); ++j) {
      const std::int64_t demand = inst.coflows[k].flows[j].demand;
      const auto it = seen.find({k, j});
      const std::int64_t have =
          it == seen.end() ? 0 : static_cast<std::int64_t>(it->second.size());
      bool copies_ok = have == demand;
      if (it != seen.end())
        for (const auto& [copy, count] : it->second)
          if (count != 1 || copy < 0 || copy >= demand) copies_ok = false;
      if (!copies_ok)
        fail("coflow " + std::to_string(k) + " flow " + std::to_string(j) +
             ": demand " + std::to_string(demand) + " not covered exactly once");
    }
  }

  if (s.slot_of.size() != s.units.size()) {
    fail("slot assignment length mismatch");
    return report;
  }

  // Releases and per-slot per-node occupancy.
  std::map<std::int64_t, std::unordered_map<NodeIndex, std::int64_t>> occupancy;
  for (std::size_t u = 0; u < s.units.size(); ++u) {
    const auto& ref = s.units[u];
    if (ref.job >= inst.job_count()) continue;
    const std::int64_t slot = s.slot_of[u];
    if (slot < 1) {
      fail("unit " + std::to_string(u) + " has no valid slot");
      continue;
    }
    if (slot < inst.coflows[ref.job].release + 1)
      fail("unit " + std::to_string(u) + " scheduled at slot " +
           std::to_string(slot) + " before release " +
           std::to_string(inst.coflows[ref.job].release));
    if (ref.flow < inst.coflows[ref.job].flows.size())
      for (NodeIndex v : inst.coflows[ref.job].flows[ref.flow].path)
        occupancy[slot][v]++;
  }
  for (const auto& [slot, per_node] : occupancy) {
    for (const auto& [v, count] : per_node) {
      const auto& cap = inst.nodes[v].capacity;
      if (cap.is_finite() && count > cap.value())
        fail("slot " + std::to_string(slot) + " node '" + inst.nodes[v].id +
             "': " + std::to_string(count) + " units exceed capacity " +
             std::to_string(cap.value()));
    }
  }

  // Recompute completions and the objective.
  std::vector<std::int64_t> completion(inst.job_count(), 0);
  for (std::size_t u = 0; u < s.units.size(); ++u)
    if (s.units[u].job < inst.job_count())
      completion[s.units[u].job] =
          std::max(completion[s.units[u].job], s.slot_of[u]);
  double objective = 0.0;
  for (std::size_t k = 0; k < inst.job_count(); ++k)
    objective += inst.coflows[k].weight * static_cast<double>(completion[k]);
  if (s.completion != completion)
    fail("recorded completion times disagree with the slot assignment");
  if (std::abs(objective - s.objective) > 1e-9 * std::max(1.0, objective))
    fail("recorded objective " + std::to_string(s.objective) +
         " disagrees with recomputed " + std::to_string(objective));
  return report;
}

BoundReport check_finish_bounds(const Hypergraph& h, const Schedule& s,
                                const Instance& inst, bool general_capacity) {
  BoundReport report;
  const double lambda = effective_lambda(inst);
  for (const auto& unit : h.units) {
    const auto release = static_cast<double>(unit.release);
    const double bound =
        general_capacity
            ? release + lambda * unit.deadline *
                            static_cast<double>(capacity_disparity(unit, inst))
            : release + lambda * unit.deadline - (lambda - 1.0);
    const auto slot = static_cast<double>(s.slot_of[unit.unit_id]);
    if (slot > bound + 1e-6) {
      report.ok = false;
      report.violations.push_back(
          "unit " + std::to_string(unit.unit_id) + " (job " +
          std::to_string(unit.job) + ") finishes at slot " +
          std::to_string(s.slot_of[unit.unit_id]) + " past its bound " +
          std::to_string(bound));
    }
  }
  return report;
}

RatioReport evaluate(const Instance& inst, const LpSolution& lp,
                     const DeadlineSet& dl, const Schedule& s,
                     std::optional<double> oracle_objective,
                     bool general_capacity) {
  RatioReport report;
  report.lp_objective = lp.lp_objective;
  report.alg_objective = s.objective;
  report.oracle_objective = oracle_objective;
  report.lambda = effective_lambda(inst);

  report.delta = 1;
  if (general_capacity) {
    // Disparity depends only on a flow's node set, so one check per flow.
    for (const auto& cf : inst.coflows) {
      for (const auto& flow : cf.flows) {
        std::int64_t sum = 0, min_cap = 0, finite = 0;
        for (NodeIndex v : flow.path) {
          const auto& cap = inst.nodes[v].capacity;
          if (!cap.is_finite()) continue;
          sum += cap.value();
          min_cap = min_cap == 0 ? cap.value() : std::min(min_cap, cap.value());
          ++finite;
        }
        if (finite == 0) continue;
        const std::int64_t denom = finite * min_cap;
        report.delta = std::max(report.delta, (sum + denom - 1) / denom);
      }
    }
  }

  report.zero_release = true;
  report.release_below_lambda = true;
  for (const auto& cf : inst.coflows) {
    if (cf.release != 0) report.zero_release = false;
    if (cf.release >= report.lambda) report.release_below_lambda = false;
  }

  const auto n = static_cast<double>(inst.job_count());
  double factor = 2.0 * report.lambda * static_cast<double>(report.delta);
  if (dl.mode == DeadlineMode::Improved) factor *= n / (n + 1.0);
  const bool no_release_term =
      dl.mode == DeadlineMode::Improved && !general_capacity
          ? report.release_below_lambda
          : report.zero_release;
  report.bound_used = no_release_term ? factor : factor + 1.0;

  const double lp_cap = report.bound_used * report.lp_objective + 1e-6;
  report.bound_satisfied = report.alg_objective <= lp_cap;
  if (oracle_objective)
    report.bound_satisfied =
        report.bound_satisfied &&
        report.alg_objective <= report.bound_used * *oracle_objective + 1e-6;

  report.ratio_vs_lp = report.lp_objective > 1e-12
                           ? report.alg_objective / report.lp_objective
                           : 1.0;
  if (oracle_objective && *oracle_objective > 1e-12)
    report.ratio_vs_opt = report.alg_objective / *oracle_objective;
  return report;
}

}  // namespace pcs
