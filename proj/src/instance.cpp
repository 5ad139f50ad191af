#include "instance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "errors.hpp"
#include "rng.hpp"

namespace pcs {

Capacity Capacity::finite(std::int64_t v) {
  if (v < 1) throw ValidationError("finite capacity must be >= 1");
  return Capacity(v);
}

std::int64_t Capacity::value() const {
  if (!is_finite()) throw InternalError("Capacity::value() on unbounded capacity");
  return v_;
}

std::optional<NodeIndex> Instance::find_node(std::string_view id) const {
  for (NodeIndex i = 0; i < nodes.size(); ++i)
    if (nodes[i].id == id) return i;
  return std::nullopt;
}

std::int64_t Instance::total_demand_units() const {
  std::int64_t total = 0;
  for (const auto& cf : coflows)
    for (const auto& f : cf.flows) total += f.demand;
  return total;
}

ValidationReport validate(const Instance& inst) {
  ValidationReport report;
  auto fail = [&report](std::string msg) {
    report.ok = false;
    report.violations.push_back(std::move(msg));
  };

  {
    std::unordered_set<std::string> seen;
    for (const auto& node : inst.nodes)
      if (!seen.insert(node.id).second)
        fail("duplicate node id '" + node.id + "'");
  }

  if (inst.coflows.empty()) fail("instance has no coflows");

  for (std::size_t k = 0; k < inst.coflows.size(); ++k) {
    const auto& cf = inst.coflows[k];
    const std::string ctx = "coflow " + std::to_string(k);
    if (!(cf.weight >= 0.0) || !std::isfinite(cf.weight))
      fail(ctx + ": weight must be a finite number >= 0");
    if (cf.release < 0) fail(ctx + ": release must be >= 0");
    if (cf.flows.empty()) fail(ctx + ": has no flows");
    for (std::size_t j = 0; j < cf.flows.size(); ++j) {
      const auto& flow = cf.flows[j];
      const std::string fctx = ctx + " flow " + std::to_string(j);
      if (flow.demand < 1) fail(fctx + ": demand >= 1 violated");
      if (flow.path.empty()) fail(fctx + ": path is empty");
      std::set<NodeIndex> distinct;
      for (NodeIndex v : flow.path) {
        if (v >= inst.nodes.size())
          fail(fctx + ": path references nonexistent node #" + std::to_string(v));
        else if (!distinct.insert(v).second)
          fail(fctx + ": path not simple (repeats node '" + inst.nodes[v].id + "')");
      }
    }
  }
  return report;
}

LoadTable loads(const Instance& inst) {
  LoadTable table(inst.node_count(), inst.job_count());
  for (std::size_t k = 0; k < inst.coflows.size(); ++k)
    for (const auto& flow : inst.coflows[k].flows)
      for (NodeIndex v : flow.path) table.at(v, k) += flow.demand;
  return table;
}

LambdaInfo path_lambda(const Instance& inst) {
  LambdaInfo info;
  for (const auto& cf : inst.coflows) {
    for (const auto& flow : cf.flows) {
      int finite = 0;
      for (NodeIndex v : flow.path)
        if (inst.nodes[v].capacity.is_finite()) ++finite;
      info.lambda = std::max(info.lambda, static_cast<int>(flow.path.size()));
      info.lambda_finite = std::max(info.lambda_finite, finite);
    }
  }
  return info;
}

// ---------------------------------------------------------------------------
// Reductions.

namespace {

std::string fresh_id(std::string base, std::unordered_set<std::string>& taken) {
  while (taken.count(base)) base += "'";
  taken.insert(base);
  return base;
}

}  // namespace

Instance reduce_edge_capacities(const EdgeCapInstance& e_inst) {
  Instance out;
  out.name = e_inst.name;

  std::unordered_set<std::string> taken;
  for (const auto& id : e_inst.node_ids) {
    out.nodes.push_back({id, Capacity::unbounded()});
    taken.insert(id);
  }
  // One fresh node per edge, carrying the edge's capacity.
  std::vector<NodeIndex> split_node(e_inst.edges.size());
  for (std::size_t t = 0; t < e_inst.edges.size(); ++t) {
    const auto& e = e_inst.edges[t];
    if (e.a >= e_inst.node_ids.size() || e.b >= e_inst.node_ids.size())
      throw ValidationError("edge " + std::to_string(t) + " has a nonexistent endpoint");
    split_node[t] = static_cast<NodeIndex>(out.nodes.size());
    out.nodes.push_back({fresh_id("ve" + std::to_string(t), taken), e.capacity});
  }

  for (std::size_t k = 0; k < e_inst.coflows.size(); ++k) {
    const auto& src = e_inst.coflows[k];
    Coflow cf;
    cf.weight = src.weight;
    cf.release = src.release;
    for (std::size_t j = 0; j < src.flows.size(); ++j) {
      const auto& ef = src.flows[j];
      const std::string ctx =
          "coflow " + std::to_string(k) + " flow " + std::to_string(j);
      if (ef.edge_path.empty()) throw ValidationError(ctx + ": empty edge path");
      for (std::uint32_t t : ef.edge_path)
        if (t >= e_inst.edges.size())
          throw ValidationError(ctx + ": traverses nonexistent edge #" + std::to_string(t));

      // Walk the edge sequence, threading the split nodes in between.
      const auto& first = e_inst.edges[ef.edge_path.front()];
      NodeIndex cur = first.a;
      if (ef.edge_path.size() > 1) {
        const auto& second = e_inst.edges[ef.edge_path[1]];
        // Start at the endpoint of the first edge not shared with the second.
        if (first.b != second.a && first.b != second.b) cur = first.b;
        if (first.a != second.a && first.a != second.b &&
            first.b != second.a && first.b != second.b)
          throw ValidationError(ctx + ": edge path is not connected");
      }
      Flow flow;
      flow.demand = ef.demand;
      flow.path.push_back(cur);
      for (std::uint32_t t : ef.edge_path) {
        const auto& e = e_inst.edges[t];
        NodeIndex next;
        if (e.a == cur) next = e.b;
        else if (e.b == cur) next = e.a;
        else throw ValidationError(ctx + ": edge path is not connected");
        flow.path.push_back(split_node[t]);
        flow.path.push_back(next);
        cur = next;
      }
      cf.flows.push_back(std::move(flow));
    }
    out.coflows.push_back(std::move(cf));
  }
  return out;
}

EdgeCapInstance reduce_node_to_edge(const Instance& inst) {
  for (const auto& node : inst.nodes)
    if (!node.capacity.is_finite())
      throw ValidationError("node '" + node.id + "' has unbounded capacity; "
                            "the node-to-edge reduction needs finite capacities");

  EdgeCapInstance out;
  out.name = inst.name;
  for (const auto& node : inst.nodes) {
    out.node_ids.push_back(node.id + "_in");
    out.node_ids.push_back(node.id + "_out");
  }
  // Gadget edge i carries node i's capacity between its in/out halves.
  for (NodeIndex i = 0; i < inst.nodes.size(); ++i)
    out.edges.push_back({static_cast<NodeIndex>(2 * i),
                         static_cast<NodeIndex>(2 * i + 1),
                         inst.nodes[i].capacity});

  std::map<std::pair<NodeIndex, NodeIndex>, std::uint32_t> connectors;
  auto connector = [&](NodeIndex from, NodeIndex to) {
    const auto key = std::make_pair(from, to);
    auto it = connectors.find(key);
    if (it != connectors.end()) return it->second;
    const auto idx = static_cast<std::uint32_t>(out.edges.size());
    out.edges.push_back({static_cast<NodeIndex>(2 * from + 1),
                         static_cast<NodeIndex>(2 * to),
                         Capacity::unbounded()});
    connectors.emplace(key, idx);
    return idx;
  };

  for (const auto& cf : inst.coflows) {
    EdgeCoflow ecf;
    ecf.weight = cf.weight;
    ecf.release = cf.release;
    for (const auto& flow : cf.flows) {
      EdgeFlow ef;
      ef.demand = flow.demand;
      for (std::size_t p = 0; p < flow.path.size(); ++p) {
        ef.edge_path.push_back(flow.path[p]);  // gadget edge index == node index
        if (p + 1 < flow.path.size())
          ef.edge_path.push_back(connector(flow.path[p], flow.path[p + 1]));
      }
      ecf.flows.push_back(std::move(ef));
    }
    out.coflows.push_back(std::move(ecf));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generators.

SimpleGraph named_graph(std::string_view name) {
  SimpleGraph g;
  if (name == "k3") {
    g.n_vertices = 3;
    g.edges = {{0, 1}, {1, 2}, {0, 2}};
  } else if (name == "k4") {
    g.n_vertices = 4;
    for (std::uint32_t a = 0; a < 4; ++a)
      for (std::uint32_t b = a + 1; b < 4; ++b) g.edges.push_back({a, b});
  } else if (name == "c5") {
    g.n_vertices = 5;
    for (std::uint32_t i = 0; i < 5; ++i) g.edges.push_back({i, (i + 1) % 5});
  } else if (name == "petersen") {
    g.n_vertices = 10;
    for (std::uint32_t i = 0; i < 5; ++i) {
      g.edges.push_back({i, (i + 1) % 5});          // outer cycle
      g.edges.push_back({i, i + 5});                // spokes
      g.edges.push_back({i + 5, 5 + (i + 2) % 5});  // inner pentagram
    }
  } else {
    throw ValidationError("unknown graph name '" + std::string(name) +
                          "' (expected k3, k4, c5 or petersen)");
  }
  return g;
}

Instance gen_triangle() {
  Instance inst;
  inst.name = "triangle";
  inst.nodes = {{"a", Capacity::finite(1)},
                {"b", Capacity::finite(1)},
                {"c", Capacity::finite(1)}};
  Coflow cf;
  cf.weight = 1.0;
  cf.release = 0;
  cf.flows = {{{0, 1}, 1}, {{1, 2}, 1}, {{2, 0}, 1}};
  inst.coflows.push_back(std::move(cf));
  return inst;
}

Instance gen_quad() {
  Instance inst;
  inst.name = "quad";
  for (const char* id : {"A1", "A2", "B1", "B2", "C1", "C2"})
    inst.nodes.push_back({id, Capacity::finite(1)});
  const NodeIndex A1 = 0, A2 = 1, B1 = 2, B2 = 3, C1 = 4, C2 = 5;
  Coflow cf;
  cf.weight = 1.0;
  cf.release = 0;
  cf.flows = {{{A1, B1, C2}, 1},
              {{A1, B2, C1}, 1},
              {{A1, B1, C1}, 1},
              {{A2, B1, C1}, 1}};
  inst.coflows.push_back(std::move(cf));
  return inst;
}

Instance gen_coloring(const SimpleGraph& g) {
  if (g.edges.empty())
    throw ValidationError("coloring construction needs a graph with at least one edge");
  Instance inst;
  inst.name = "coloring";
  for (std::size_t t = 0; t < g.edges.size(); ++t)
    inst.nodes.push_back({"e" + std::to_string(t), Capacity::finite(1)});

  std::vector<std::vector<NodeIndex>> incident(g.n_vertices);
  for (std::size_t t = 0; t < g.edges.size(); ++t) {
    const auto& [a, b] = g.edges[t];
    if (a >= g.n_vertices || b >= g.n_vertices)
      throw ValidationError("graph edge endpoint out of range");
    if (a == b) throw ValidationError("graph has a self-loop");
    incident[a].push_back(static_cast<NodeIndex>(t));
    incident[b].push_back(static_cast<NodeIndex>(t));
  }

  Coflow cf;
  cf.weight = 1.0;
  cf.release = 0;
  for (std::size_t x = 0; x < g.n_vertices; ++x) {
    if (incident[x].empty()) continue;  // isolated vertices carry no flow
    Flow flow;
    flow.path = incident[x];
    std::sort(flow.path.begin(), flow.path.end());
    flow.demand = 1;
    cf.flows.push_back(std::move(flow));
  }
  inst.coflows.push_back(std::move(cf));
  return inst;
}

Instance gen_random(const RandomSpec& spec) {
  if (spec.n_coflows < 1 || spec.n_nodes < 1 || spec.max_flows < 1 ||
      spec.max_path < 1 || spec.max_demand < 1 || spec.max_capacity < 1 ||
      spec.max_release < 0)
    throw ValidationError("gen_random: all size parameters must be >= 1 "
                          "(max_release >= 0)");

  Rng rng(spec.seed);
  Instance inst;
  inst.name = "random-s" + std::to_string(spec.seed);
  for (std::int64_t i = 0; i < spec.n_nodes; ++i)
    inst.nodes.push_back({"n" + std::to_string(i),
                          Capacity::finite(rng.uniform_int(1, spec.max_capacity))});

  const auto path_cap =
      static_cast<std::uint32_t>(std::min(spec.max_path, spec.n_nodes));
  for (std::int64_t k = 0; k < spec.n_coflows; ++k) {
    Coflow cf;
    cf.weight = static_cast<double>(rng.uniform_int(1, 10));
    cf.release = rng.uniform_int(0, spec.max_release);
    const std::int64_t n_flows = rng.uniform_int(1, spec.max_flows);
    for (std::int64_t j = 0; j < n_flows; ++j) {
      Flow flow;
      const auto len = static_cast<std::uint32_t>(rng.uniform_int(1, path_cap));
      flow.path = rng.simple_sequence(static_cast<std::uint32_t>(spec.n_nodes), len);
      flow.demand = rng.uniform_int(1, spec.max_demand);
      cf.flows.push_back(std::move(flow));
    }
    inst.coflows.push_back(std::move(cf));
  }
  return inst;
}

Instance gen_bipartite(const BipartiteSpec& spec) {
  if (spec.n_ports < 1 || spec.n_coflows < 1 || spec.max_demand < 1 ||
      spec.max_release < 0)
    throw ValidationError("gen_bipartite: bad parameters");

  Rng rng(spec.seed);
  Instance inst;
  inst.name = "bipartite-s" + std::to_string(spec.seed);
  for (std::int64_t i = 0; i < spec.n_ports; ++i)
    inst.nodes.push_back({"in" + std::to_string(i), Capacity::finite(1)});
  for (std::int64_t j = 0; j < spec.n_ports; ++j)
    inst.nodes.push_back({"out" + std::to_string(j), Capacity::finite(1)});

  const auto n = static_cast<NodeIndex>(spec.n_ports);
  for (std::int64_t k = 0; k < spec.n_coflows; ++k) {
    Coflow cf;
    cf.weight = static_cast<double>(rng.uniform_int(1, 10));
    cf.release = rng.uniform_int(0, spec.max_release);
    for (NodeIndex i = 0; i < n; ++i)
      for (NodeIndex j = 0; j < n; ++j)
        if (rng.uniform01() < spec.density)
          cf.flows.push_back({{i, static_cast<NodeIndex>(n + j)},
                              rng.uniform_int(1, spec.max_demand)});
    if (cf.flows.empty()) {
      const auto i = static_cast<NodeIndex>(rng.uniform_int(0, spec.n_ports - 1));
      const auto j = static_cast<NodeIndex>(rng.uniform_int(0, spec.n_ports - 1));
      cf.flows.push_back({{i, static_cast<NodeIndex>(n + j)},
                          rng.uniform_int(1, spec.max_demand)});
    }
    inst.coflows.push_back(std::move(cf));
  }
  return inst;
}

}  // namespace pcs
