#include "relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "errors.hpp"

namespace pcs {

std::vector<BaseConstraint> build_base_constraints(const Instance& inst) {
  const LoadTable table = loads(inst);
  std::vector<BaseConstraint> out;
  for (std::size_t k = 0; k < inst.job_count(); ++k) {
    const double release = static_cast<double>(inst.coflows[k].release);
    out.push_back({k, std::nullopt, release + 1.0});
    for (NodeIndex i = 0; i < inst.node_count(); ++i) {
      const auto& cap = inst.nodes[i].capacity;
      if (!cap.is_finite()) continue;  // unbounded machines never bind
      const std::int64_t load = table.at(i, k);
      if (load == 0) continue;
      out.push_back({k, i, release + static_cast<double>(load) /
                                          static_cast<double>(cap.value())});
    }
  }
  return out;
}

std::vector<CutRecord> separate(const Instance& inst, const LoadTable& table,
                                const std::vector<double>& c, double tol_scale) {
  std::vector<CutRecord> cuts;
  std::vector<std::size_t> jobs;
  for (NodeIndex i = 0; i < inst.node_count(); ++i) {
    const auto& cap = inst.nodes[i].capacity;
    if (!cap.is_finite()) continue;
    const double u = static_cast<double>(cap.value());

    jobs.clear();
    for (std::size_t k = 0; k < inst.job_count(); ++k)
      if (table.at(i, k) > 0) jobs.push_back(k);
    if (jobs.empty()) continue;
    std::sort(jobs.begin(), jobs.end(), [&](std::size_t a, std::size_t b) {
      if (c[a] != c[b]) return c[a] < c[b];
      return a < b;
    });

    // The most violated subset is a prefix of this sort; scan them all.
    double lhs = 0.0, load_sum = 0.0, sq_sum = 0.0;
    double best_violation = 0.0;
    CutRecord best;
    for (std::size_t l = 0; l < jobs.size(); ++l) {
      const std::size_t k = jobs[l];
      const auto load = static_cast<double>(table.at(i, k));
      lhs += load * c[k];
      load_sum += load;
      sq_sum += load * load;
      const double rhs = 0.5 * (sq_sum + load_sum * load_sum) / u;
      const double violation = rhs - lhs;
      if (violation > best_violation) {
        best_violation = violation;
        best.machine = i;
        best.prefix_len = l + 1;
        best.lhs = lhs;
        best.rhs = rhs;
        best.jobs.assign(jobs.begin(), jobs.begin() + static_cast<long>(l) + 1);
      }
    }
    if (best.prefix_len > 0 &&
        best_violation > tol_scale * std::max(1.0, std::abs(best.rhs)))
      cuts.push_back(std::move(best));
  }
  return cuts;
}

namespace {

std::vector<std::size_t> sorted_order(const std::vector<double>& c) {
  std::vector<std::size_t> order(c.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (c[a] != c[b]) return c[a] < c[b];
    return a < b;
  });
  return order;
}

}  // namespace

LpSolution solve_relaxation(const Instance& inst, LpMode mode,
                            const RelaxOptions& opts) {
  if (mode == LpMode::Bipartite) require_bipartite(inst);

  const std::size_t n = inst.job_count();
  const LoadTable table = loads(inst);

  LinearProgram lp;
  lp.n_vars = n;
  lp.objective.resize(n);
  for (std::size_t k = 0; k < n; ++k) lp.objective[k] = inst.coflows[k].weight;
  for (const auto& bc : build_base_constraints(inst)) {
    std::vector<double> row(n, 0.0);
    row[bc.job] = 1.0;
    lp.add_constraint(std::move(row), bc.rhs);
  }

  LpSolution sol;
  for (int round = 1; round <= opts.cut_round_cap; ++round) {
    const LpResult res = solve_lp(lp, opts.lp);
    if (res.status != LpStatus::Optimal)
      throw InternalError("relaxation LP must be feasible and bounded");
    sol.c_star = res.values;
    sol.lp_objective = res.objective_value;
    sol.iterations = round;

    const auto cuts = separate(inst, table, res.values, opts.sep_tol_scale);
    if (cuts.empty()) {
      sol.order = sorted_order(sol.c_star);
      return sol;
    }
    for (const auto& cut : cuts) {
      std::vector<double> row(n, 0.0);
      for (std::size_t k : cut.jobs)
        row[k] = static_cast<double>(table.at(cut.machine, k));
      lp.add_constraint(std::move(row), cut.rhs);
      ++sol.cuts_added;
    }
  }
  throw IterationLimitError(
      "cutting-plane round cap exceeded after " +
      std::to_string(opts.cut_round_cap) + " rounds (objective " +
      std::to_string(sol.lp_objective) + ", " +
      std::to_string(sol.cuts_added) + " cuts)");
}

DeadlineSet deadlines(const LpSolution& sol, DeadlineMode mode) {
  DeadlineSet out;
  out.mode = mode;
  out.d.resize(sol.c_star.size());
  if (mode == DeadlineMode::Standard) {
    for (std::size_t k = 0; k < sol.c_star.size(); ++k)
      out.d[k] = 2.0 * sol.c_star[k];
  } else {
    for (std::size_t pos = 0; pos < sol.order.size(); ++pos) {
      const std::size_t k = sol.order[pos];
      const auto rank = static_cast<double>(pos + 1);
      out.d[k] = (2.0 * rank / (rank + 1.0)) * sol.c_star[k];
    }
  }
  return out;
}

LemmaReport check_lp_lower_bounds(const Instance& inst, const LpSolution& sol,
                                  DeadlineMode mode) {
  LemmaReport report;
  const LoadTable table = loads(inst);
  std::vector<double> prefix(inst.node_count(), 0.0);
  for (std::size_t pos = 0; pos < sol.order.size(); ++pos) {
    const std::size_t k = sol.order[pos];
    const auto rank = static_cast<double>(pos + 1);
    for (NodeIndex i = 0; i < inst.node_count(); ++i) {
      const auto& cap = inst.nodes[i].capacity;
      if (!cap.is_finite()) continue;
      prefix[i] += static_cast<double>(table.at(i, k));
      const double scaled = prefix[i] / static_cast<double>(cap.value());
      double bound = 0.5 * scaled;
      if (mode == DeadlineMode::Improved)
        bound = std::max(bound, (rank + 1.0) / (2.0 * rank) * scaled);
      if (sol.c_star[k] < bound - 1e-6 * std::max(1.0, bound)) {
        report.ok = false;
        report.violations.push_back(
            "job " + std::to_string(k) + " machine '" + inst.nodes[i].id +
            "': C*=" + std::to_string(sol.c_star[k]) + " < prefix bound " +
            std::to_string(bound));
      }
    }
  }
  return report;
}

void require_bipartite(const Instance& inst) {
  std::vector<std::vector<NodeIndex>> adj(inst.node_count());
  for (const auto& cf : inst.coflows) {
    for (const auto& flow : cf.flows) {
      if (flow.path.size() != 2)
        throw ValidationError("bipartite mode requires every path to have "
                              "exactly two nodes");
      adj[flow.path[0]].push_back(flow.path[1]);
      adj[flow.path[1]].push_back(flow.path[0]);
    }
  }
  // Two-color the union of path edges.
  std::vector<int> color(inst.node_count(), -1);
  for (NodeIndex start = 0; start < inst.node_count(); ++start) {
    if (color[start] != -1 || adj[start].empty()) continue;
    color[start] = 0;
    std::deque<NodeIndex> queue{start};
    while (!queue.empty()) {
      const NodeIndex v = queue.front();
      queue.pop_front();
      for (NodeIndex w : adj[v]) {
        if (color[w] == -1) {
          color[w] = 1 - color[v];
          queue.push_back(w);
        } else if (color[w] == color[v]) {
          throw ValidationError("bipartite mode requires a two-sided port "
                                "structure; found an odd cycle");
        }
      }
    }
  }
}

}  // namespace pcs
