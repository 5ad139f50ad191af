#include "hyper.hpp"

#include <algorithm>
#include <ostream>

#include "errors.hpp"

namespace pcs {

Hypergraph build_hypergraph(const Instance& inst, const DeadlineSet& dl,
                            std::int64_t expansion_cap) {
  if (dl.d.size() != inst.job_count())
    throw InternalError("deadline set does not cover all jobs");
  const std::int64_t total = inst.total_demand_units();
  if (total > expansion_cap)
    throw CapExceededError("hypergraph expansion of " + std::to_string(total) +
                           " units exceeds the cap of " +
                           std::to_string(expansion_cap));

  Hypergraph h;
  h.units.reserve(static_cast<std::size_t>(total));
  for (std::size_t k = 0; k < inst.job_count(); ++k) {
    const auto& cf = inst.coflows[k];
    for (std::size_t j = 0; j < cf.flows.size(); ++j) {
      const auto& flow = cf.flows[j];
      EdgeUnit proto;
      proto.job = k;
      proto.flow = j;
      proto.release = cf.release;
      proto.deadline = dl.d[k];
      proto.all_nodes = flow.path;
      std::sort(proto.all_nodes.begin(), proto.all_nodes.end());
      for (NodeIndex v : proto.all_nodes)
        if (inst.nodes[v].capacity.is_finite()) proto.adj_nodes.push_back(v);
      for (std::int64_t c = 0; c < flow.demand; ++c) {
        proto.copy = c;
        h.units.push_back(proto);
      }
    }
  }
  std::stable_sort(h.units.begin(), h.units.end(),
                   [](const EdgeUnit& a, const EdgeUnit& b) {
                     if (a.deadline != b.deadline) return a.deadline < b.deadline;
                     if (a.job != b.job) return a.job < b.job;
                     if (a.flow != b.flow) return a.flow < b.flow;
                     return a.copy < b.copy;
                   });
  for (std::size_t i = 0; i < h.units.size(); ++i)
    h.units[i].unit_id = static_cast<std::uint32_t>(i);
  return h;
}

LineAdjacency build_line_adjacency(const Hypergraph& h) {
  LineAdjacency adj;
  adj.neighbors.resize(h.units.size());

  // Inverted index: units per finite node, in unit order.
  std::map<NodeIndex, std::vector<std::uint32_t>> by_node;
  for (const auto& unit : h.units)
    for (NodeIndex v : unit.adj_nodes) by_node[v].push_back(unit.unit_id);

  for (const auto& [node, members] : by_node) {
    for (std::size_t x = 0; x < members.size(); ++x) {
      for (std::size_t y = x + 1; y < members.size(); ++y) {
        const auto key = std::make_pair(members[x], members[y]);
        auto [it, fresh] = adj.shared_nodes.try_emplace(key);
        it->second.push_back(node);
        if (fresh) {
          adj.neighbors[key.first].push_back(key.second);
          adj.neighbors[key.second].push_back(key.first);
          ++adj.edge_count;
        }
      }
    }
  }
  for (auto& list : adj.neighbors) std::sort(list.begin(), list.end());
  return adj;
}

Orientation orient(const Hypergraph& h, const LineAdjacency& adj) {
  Orientation o;
  o.out_adj.resize(h.units.size());
  o.in_deg.assign(h.units.size(), 0);
  // Hypergraph order is the deadline order, so "later points to earlier"
  // is simply higher unit id -> lower unit id.
  for (std::uint32_t u = 0; u < adj.neighbors.size(); ++u) {
    for (std::uint32_t v : adj.neighbors[u]) {
      if (v < u) {
        o.out_adj[u].push_back(v);
        ++o.in_deg[v];
      }
    }
  }
  return o;
}

bool orientation_is_acyclic(const Orientation& o) {
  // Kahn over the arc set.
  const std::size_t n = o.unit_count();
  std::vector<std::uint32_t> indeg(n, 0);
  for (const auto& succ : o.out_adj)
    for (std::uint32_t v : succ) ++indeg[v];
  std::vector<std::uint32_t> stack;
  for (std::uint32_t u = 0; u < n; ++u)
    if (indeg[u] == 0) stack.push_back(u);
  std::size_t seen = 0;
  while (!stack.empty()) {
    const std::uint32_t u = stack.back();
    stack.pop_back();
    ++seen;
    for (std::uint32_t v : o.out_adj[u])
      if (--indeg[v] == 0) stack.push_back(v);
  }
  return seen == n;
}

std::vector<std::uint32_t> find_kernel(const Orientation& o,
                                       const std::vector<std::uint32_t>& active) {
  const std::size_t n = o.unit_count();
  std::vector<char> alive(n, 0);
  for (std::uint32_t u : active) {
    if (u >= n) throw InternalError("find_kernel: unit id out of range");
    alive[u] = 1;
  }

  // Out-degrees and reverse arcs restricted to the active set.
  std::vector<std::uint32_t> outdeg(n, 0);
  std::vector<std::vector<std::uint32_t>> in_adj(n);
  for (std::uint32_t u : active) {
    for (std::uint32_t v : o.out_adj[u]) {
      if (!alive[v]) continue;
      ++outdeg[u];
      in_adj[v].push_back(u);
    }
  }

  std::vector<std::uint32_t> kernel;
  std::vector<std::uint32_t> remaining = active;  // sorted ascending
  std::vector<std::uint32_t> sinks, dropped;
  while (!remaining.empty()) {
    sinks.clear();
    for (std::uint32_t u : remaining)
      if (outdeg[u] == 0) sinks.push_back(u);
    if (sinks.empty())
      throw InternalError("find_kernel: no sink in a supposedly acyclic graph");

    dropped.clear();
    for (std::uint32_t u : sinks) {
      kernel.push_back(u);
      alive[u] = 0;
      dropped.push_back(u);
      // In-neighbors of the new kernel members leave the graph: they are
      // dominated and must not join the kernel later.
      for (std::uint32_t w : in_adj[u]) {
        if (!alive[w]) continue;
        alive[w] = 0;
        dropped.push_back(w);
      }
    }
    for (std::uint32_t w : dropped)
      for (std::uint32_t x : in_adj[w])
        if (alive[x] && outdeg[x] > 0) --outdeg[x];

    std::vector<std::uint32_t> next;
    next.reserve(remaining.size());
    for (std::uint32_t u : remaining)
      if (alive[u]) next.push_back(u);
    remaining.swap(next);
  }
  std::sort(kernel.begin(), kernel.end());
  return kernel;
}

double avg_capacity(const EdgeUnit& unit, const Instance& inst) {
  if (unit.adj_nodes.empty()) return 1.0;
  double sum = 0.0;
  for (NodeIndex v : unit.adj_nodes)
    sum += static_cast<double>(inst.nodes[v].capacity.value());
  return sum / static_cast<double>(unit.adj_nodes.size());
}

std::int64_t capacity_disparity(const EdgeUnit& unit, const Instance& inst) {
  if (unit.adj_nodes.empty()) return 1;
  std::int64_t sum = 0;
  std::int64_t min_cap = 0;
  for (NodeIndex v : unit.adj_nodes) {
    const std::int64_t u = inst.nodes[v].capacity.value();
    sum += u;
    min_cap = min_cap == 0 ? u : std::min(min_cap, u);
  }
  const auto denom = static_cast<std::int64_t>(unit.adj_nodes.size()) * min_cap;
  return (sum + denom - 1) / denom;  // ceil(avg / min)
}

int effective_lambda(const Instance& inst) {
  return std::max(1, path_lambda(inst).lambda_finite);
}

BoundReport check_outdegree_bound(const Orientation& o, const Hypergraph& h,
                                  const Instance& inst) {
  BoundReport report;
  const double lambda = effective_lambda(inst);
  for (const auto& unit : h.units) {
    const auto outdeg = static_cast<double>(o.out_adj[unit.unit_id].size());
    if (unit.adj_nodes.empty()) {
      if (outdeg > 0) {
        report.ok = false;
        report.violations.push_back("unit " + std::to_string(unit.unit_id) +
                                    " has conflicts but no finite nodes");
      }
      continue;
    }
    const double bound = lambda * (unit.deadline * avg_capacity(unit, inst) - 1.0);
    if (outdeg > bound + 1e-6) {
      report.ok = false;
      report.violations.push_back(
          "unit " + std::to_string(unit.unit_id) + " (job " +
          std::to_string(unit.job) + "): out-degree " + std::to_string(outdeg) +
          " exceeds " + std::to_string(bound));
    }
  }
  return report;
}

void dump_orientation(const Orientation& o, std::ostream& out) {
  for (std::uint32_t u = 0; u < o.unit_count(); ++u)
    for (std::uint32_t v : o.out_adj[u]) out << u << " -> " << v << "\n";
}

}  // namespace pcs
