#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "errors.hpp"

namespace pcs {

namespace {

struct SearchUnit {
  std::size_t job = 0;
  std::size_t flow = 0;
  std::int64_t copy = 0;
  std::vector<NodeIndex> finite_nodes;
  std::int64_t release = 0;
};

// Units in canonical (job, flow, copy) order; shared by the oracle, the
// greedy baseline, and schedule assembly so slot vectors line up.
std::vector<SearchUnit> expand_units(const Instance& inst) {
  std::vector<SearchUnit> units;
  for (std::size_t k = 0; k < inst.job_count(); ++k) {
    const auto& cf = inst.coflows[k];
    for (std::size_t j = 0; j < cf.flows.size(); ++j) {
      const auto& flow = cf.flows[j];
      SearchUnit proto;
      proto.job = k;
      proto.flow = j;
      proto.release = cf.release;
      for (NodeIndex v : flow.path)
        if (inst.nodes[v].capacity.is_finite()) proto.finite_nodes.push_back(v);
      for (std::int64_t c = 0; c < flow.demand; ++c) {
        proto.copy = c;
        units.push_back(proto);
      }
    }
  }
  return units;
}

Schedule assemble_schedule(const Instance& inst,
                           const std::vector<SearchUnit>& units,
                           const std::vector<std::int64_t>& slots) {
  Schedule s;
  s.units.resize(units.size());
  s.slot_of = slots;
  s.completion.assign(inst.job_count(), 0);
  for (std::size_t u = 0; u < units.size(); ++u) {
    s.units[u] = {units[u].job, units[u].flow, units[u].copy};
    s.by_slot[slots[u]].push_back(static_cast<std::uint32_t>(u));
    s.completion[units[u].job] = std::max(s.completion[units[u].job], slots[u]);
    s.horizon_used = std::max(s.horizon_used, slots[u]);
  }
  s.horizon_bound = s.horizon_used;
  s.objective = 0.0;
  for (std::size_t k = 0; k < inst.job_count(); ++k)
    s.objective += inst.coflows[k].weight * static_cast<double>(s.completion[k]);
  return s;
}

class ExactSearch {
 public:
  ExactSearch(const Instance& inst, std::vector<SearchUnit> units,
              std::int64_t horizon)
      : inst_(inst), units_(std::move(units)), horizon_(horizon) {
    n_ = units_.size();
    slots_.assign(n_, 0);
    job_last_.assign(inst.job_count(), 0);
    // Remaining load per (job, finite node) drives the lower bound.
    rem_load_.assign(inst.job_count(), {});
    for (const auto& u : units_)
      for (NodeIndex v : u.finite_nodes) rem_load_[u.job][v]++;
    rem_units_.assign(inst.job_count(), 0);
    for (const auto& u : units_) rem_units_[u.job]++;
  }

  std::uint64_t nodes_explored = 0;

  void run(double initial_best, std::vector<std::int64_t> initial_slots) {
    best_obj_ = initial_best;
    best_slots_ = std::move(initial_slots);
    dfs(1);
  }

  double best_objective() const { return best_obj_; }
  const std::vector<std::int64_t>& best_slots() const { return best_slots_; }

 private:
  void dfs(std::int64_t t) {
    ++nodes_explored;
    if (scheduled_ == n_) {
      double obj = 0.0;
      for (std::size_t k = 0; k < inst_.job_count(); ++k)
        obj += inst_.coflows[k].weight * static_cast<double>(job_last_[k]);
      if (obj < best_obj_ - 1e-12) {
        best_obj_ = obj;
        best_slots_ = slots_;
      }
      return;
    }
    if (t > horizon_)
      throw InternalError("oracle search ran past its horizon");
    if (lower_bound(t) >= best_obj_ - 1e-9) return;

    released_.clear();
    std::int64_t next_release = std::numeric_limits<std::int64_t>::max();
    for (std::size_t u = 0; u < n_; ++u) {
      if (slots_[u] != 0) continue;
      if (units_[u].release < t)
        released_.push_back(u);
      else
        next_release = std::min(next_release, units_[u].release + 1);
    }
    if (released_.empty()) {
      dfs(next_release);  // nothing to do before the next release
      return;
    }

    const std::vector<std::size_t> pool = released_;
    std::vector<std::size_t> chosen;
    std::unordered_map<NodeIndex, std::int64_t> used;
    enumerate(pool, 0, chosen, used, t);
  }

  // All maximal feasible subsets of pool, canonicalized so that identical
  // copies of a flow are taken lowest-id first.
  void enumerate(const std::vector<std::size_t>& pool, std::size_t idx,
                 std::vector<std::size_t>& chosen,
                 std::unordered_map<NodeIndex, std::int64_t>& used,
                 std::int64_t t) {
    if (idx == pool.size()) {
      if (chosen.empty()) return;
      for (std::size_t u : pool) {
        if (slots_[u] != 0) continue;  // not scheduled in this branch?
        if (std::find(chosen.begin(), chosen.end(), u) != chosen.end()) continue;
        if (fits(u, used)) return;  // not maximal: u could still be added
      }
      apply(chosen, t);
      dfs(t + 1);
      undo(chosen);
      return;
    }
    const std::size_t u = pool[idx];
    // Skip a higher copy whenever a lower copy of the same flow was skipped.
    const bool canonical = [&] {
      if (units_[u].copy == 0) return true;
      for (std::size_t w : chosen)
        if (units_[w].job == units_[u].job && units_[w].flow == units_[u].flow &&
            units_[w].copy == units_[u].copy - 1)
          return true;
      // The previous copy might already be scheduled in an earlier slot.
      for (std::size_t w = 0; w < n_; ++w)
        if (units_[w].job == units_[u].job && units_[w].flow == units_[u].flow &&
            units_[w].copy == units_[u].copy - 1)
          return slots_[w] != 0;
      return false;
    }();

    if (canonical && fits(u, used)) {
      for (NodeIndex v : units_[u].finite_nodes) used[v]++;
      chosen.push_back(u);
      enumerate(pool, idx + 1, chosen, used, t);
      chosen.pop_back();
      for (NodeIndex v : units_[u].finite_nodes) used[v]--;
    }
    enumerate(pool, idx + 1, chosen, used, t);
  }

  bool fits(std::size_t u, const std::unordered_map<NodeIndex, std::int64_t>& used) const {
    for (NodeIndex v : units_[u].finite_nodes) {
      const auto it = used.find(v);
      const std::int64_t occupied = it == used.end() ? 0 : it->second;
      if (occupied + 1 > inst_.nodes[v].capacity.value()) return false;
    }
    return true;
  }

  void apply(const std::vector<std::size_t>& chosen, std::int64_t t) {
    for (std::size_t u : chosen) {
      slots_[u] = t;
      ++scheduled_;
      const std::size_t k = units_[u].job;
      saved_last_.push_back(job_last_[k]);
      job_last_[k] = std::max(job_last_[k], t);
      --rem_units_[k];
      for (NodeIndex v : units_[u].finite_nodes) rem_load_[k][v]--;
    }
  }

  void undo(const std::vector<std::size_t>& chosen) {
    for (auto it = chosen.rbegin(); it != chosen.rend(); ++it) {
      const std::size_t u = *it;
      slots_[u] = 0;
      --scheduled_;
      const std::size_t k = units_[u].job;
      job_last_[k] = saved_last_.back();
      saved_last_.pop_back();
      ++rem_units_[k];
      for (NodeIndex v : units_[u].finite_nodes) rem_load_[k][v]++;
    }
  }

  // Admissible bound: a finished job contributes its completion; a job with
  // units left needs, on every finite node it still loads, load/u(i) more
  // slots starting no earlier than max(t, r+1).
  double lower_bound(std::int64_t t) const {
    double lb = 0.0;
    for (std::size_t k = 0; k < inst_.job_count(); ++k) {
      double ck = static_cast<double>(job_last_[k]);
      if (rem_units_[k] > 0) {
        const auto start =
            static_cast<double>(std::max(t - 1, inst_.coflows[k].release));
        ck = std::max(ck, start + 1.0);
        for (const auto& [v, load] : rem_load_[k]) {
          if (load <= 0) continue;
          const auto u = static_cast<double>(inst_.nodes[v].capacity.value());
          ck = std::max(ck, start + std::ceil(static_cast<double>(load) / u));
        }
      }
      lb += inst_.coflows[k].weight * ck;
    }
    return lb;
  }

  const Instance& inst_;
  std::vector<SearchUnit> units_;
  std::int64_t horizon_;
  std::size_t n_ = 0;
  std::size_t scheduled_ = 0;
  std::vector<std::int64_t> slots_;
  std::vector<std::int64_t> job_last_;
  std::vector<std::int64_t> saved_last_;
  std::vector<std::unordered_map<NodeIndex, std::int64_t>> rem_load_;
  std::vector<std::int64_t> rem_units_;
  std::vector<std::size_t> released_;
  double best_obj_ = std::numeric_limits<double>::infinity();
  std::vector<std::int64_t> best_slots_;
};

}  // namespace

OracleResult exact_optimum(const Instance& inst, std::int64_t unit_cap,
                           std::int64_t horizon_cap) {
  auto units = expand_units(inst);
  if (static_cast<std::int64_t>(units.size()) > unit_cap)
    throw CapExceededError("instance has " + std::to_string(units.size()) +
                           " demand units; the oracle cap is " +
                           std::to_string(unit_cap));
  std::int64_t max_release = 0;
  for (const auto& cf : inst.coflows)
    max_release = std::max(max_release, cf.release);
  const std::int64_t horizon =
      static_cast<std::int64_t>(units.size()) + max_release;
  if (horizon_cap > 0 && horizon > horizon_cap)
    throw CapExceededError("oracle horizon " + std::to_string(horizon) +
                           " exceeds the cap " + std::to_string(horizon_cap));

  const Schedule greedy = greedy_baseline(inst);

  ExactSearch search(inst, units, horizon);
  search.run(greedy.objective, greedy.slot_of);
  OracleResult result;
  result.objective = search.best_objective();
  result.schedule = assemble_schedule(inst, units, search.best_slots());
  result.nodes_explored = search.nodes_explored;
  result.proven_optimal = true;
  return result;
}

int chromatic_number(const SimpleGraph& g, int vertex_cap) {
  const auto n = static_cast<int>(g.n_vertices);
  if (n > vertex_cap)
    throw CapExceededError("graph has " + std::to_string(n) +
                           " vertices; the coloring cap is " +
                           std::to_string(vertex_cap));
  if (n == 0) return 0;

  std::vector<std::vector<int>> adj(g.n_vertices);
  for (const auto& [a, b] : g.edges) {
    if (a >= g.n_vertices || b >= g.n_vertices)
      throw ValidationError("graph edge endpoint out of range");
    adj[a].push_back(static_cast<int>(b));
    adj[b].push_back(static_cast<int>(a));
  }

  // Highest degree first speeds up the backtracking considerably.
  std::vector<int> order(g.n_vertices);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (adj[a].size() != adj[b].size()) return adj[a].size() > adj[b].size();
    return a < b;
  });

  std::vector<int> color(g.n_vertices, -1);
  auto feasible = [&](auto&& self, int pos, int k, int used) -> bool {
    if (pos == n) return true;
    const int v = order[pos];
    // Colors beyond used+1 are symmetric; trying one fresh color suffices.
    const int limit = std::min(k, used + 1);
    for (int c = 0; c < limit; ++c) {
      bool ok = true;
      for (int w : adj[v])
        if (color[w] == c) { ok = false; break; }
      if (!ok) continue;
      color[v] = c;
      if (self(self, pos + 1, k, std::max(used, c + 1))) return true;
      color[v] = -1;
    }
    return false;
  };

  for (int k = 1; k <= n; ++k) {
    std::fill(color.begin(), color.end(), -1);
    if (feasible(feasible, 0, k, 0)) return k;
  }
  throw InternalError("a graph is always colorable with |V| colors");
}

Schedule greedy_baseline(const Instance& inst) {
  const auto units = expand_units(inst);
  std::vector<std::size_t> order(units.size());
  for (std::size_t u = 0; u < units.size(); ++u) order[u] = u;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ua = units[a];
    const auto& ub = units[b];
    if (ua.release != ub.release) return ua.release < ub.release;
    const double wa = inst.coflows[ua.job].weight;
    const double wb = inst.coflows[ub.job].weight;
    if (wa != wb) return wa > wb;
    return a < b;  // canonical order already sorts by (job, flow, copy)
  });

  std::vector<std::int64_t> slots(units.size(), 0);
  std::vector<std::unordered_map<NodeIndex, std::int64_t>> occupancy;
  for (std::size_t u : order) {
    std::int64_t t = units[u].release + 1;
    for (;; ++t) {
      if (occupancy.size() < static_cast<std::size_t>(t) + 1)
        occupancy.resize(static_cast<std::size_t>(t) + 1);
      bool ok = true;
      for (NodeIndex v : units[u].finite_nodes) {
        const auto it = occupancy[static_cast<std::size_t>(t)].find(v);
        const std::int64_t cnt =
            it == occupancy[static_cast<std::size_t>(t)].end() ? 0 : it->second;
        if (cnt + 1 > inst.nodes[v].capacity.value()) { ok = false; break; }
      }
      if (ok) break;
    }
    slots[u] = t;
    for (NodeIndex v : units[u].finite_nodes)
      occupancy[static_cast<std::size_t>(t)][v]++;
  }
  return assemble_schedule(inst, units, slots);
}

}  // namespace pcs
