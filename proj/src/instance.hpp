#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pcs {

// Capacity of a node (or of an edge in the edge-capacitated variant):
// either a positive integer or unbounded.
class Capacity {
 public:
  static constexpr Capacity unbounded() { return Capacity(kUnbounded); }
  static Capacity finite(std::int64_t v);

  bool is_finite() const { return v_ != kUnbounded; }
  // Precondition: is_finite().
  std::int64_t value() const;

  friend bool operator==(const Capacity&, const Capacity&) = default;

 private:
  static constexpr std::int64_t kUnbounded = 0;
  constexpr explicit Capacity(std::int64_t v) : v_(v) {}
  std::int64_t v_ = kUnbounded;
};

using NodeIndex = std::uint32_t;

struct Node {
  std::string id;
  Capacity capacity = Capacity::unbounded();
  friend bool operator==(const Node&, const Node&) = default;
};

// One flow: a fixed simple node path plus an integer amount of data. Every
// unit occupies all path nodes for the time slot it is scheduled in.
struct Flow {
  std::vector<NodeIndex> path;
  std::int64_t demand = 1;
  friend bool operator==(const Flow&, const Flow&) = default;
};

struct Coflow {
  double weight = 1.0;
  std::int64_t release = 0;  // flows may run from slot release+1 onward
  std::vector<Flow> flows;
  friend bool operator==(const Coflow&, const Coflow&) = default;
};

struct Instance {
  std::string name;
  std::vector<Node> nodes;
  std::vector<Coflow> coflows;

  std::size_t node_count() const { return nodes.size(); }
  std::size_t job_count() const { return coflows.size(); }
  std::optional<NodeIndex> find_node(std::string_view id) const;
  std::int64_t total_demand_units() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Dense per-(node, job) load matrix: total demand of a job's flows whose
// path contains the node.
class LoadTable {
 public:
  LoadTable(std::size_t n_nodes, std::size_t n_jobs)
      : n_jobs_(n_jobs), cells_(n_nodes * n_jobs, 0) {}

  std::int64_t at(NodeIndex node, std::size_t job) const {
    return cells_[node * n_jobs_ + job];
  }
  std::int64_t& at(NodeIndex node, std::size_t job) {
    return cells_[node * n_jobs_ + job];
  }
  std::size_t job_count() const { return n_jobs_; }
  std::size_t node_count() const { return n_jobs_ ? cells_.size() / n_jobs_ : 0; }

 private:
  std::size_t n_jobs_;
  std::vector<std::int64_t> cells_;
};

struct LambdaInfo {
  int lambda = 0;         // max node count over all flow paths
  int lambda_finite = 0;  // max count of finite-capacity nodes over all paths
};

ValidationReport validate(const Instance& inst);
LoadTable loads(const Instance& inst);
LambdaInfo path_lambda(const Instance& inst);

// ---------------------------------------------------------------------------
// Edge-capacitated variant and the reductions between the two models.

struct CapEdge {
  NodeIndex a = 0, b = 0;
  Capacity capacity = Capacity::unbounded();
  friend bool operator==(const CapEdge&, const CapEdge&) = default;
};

struct EdgeFlow {
  std::vector<std::uint32_t> edge_path;  // indices into EdgeCapInstance::edges
  std::int64_t demand = 1;
  friend bool operator==(const EdgeFlow&, const EdgeFlow&) = default;
};

struct EdgeCoflow {
  double weight = 1.0;
  std::int64_t release = 0;
  std::vector<EdgeFlow> flows;
  friend bool operator==(const EdgeCoflow&, const EdgeCoflow&) = default;
};

struct EdgeCapInstance {
  std::string name;
  std::vector<std::string> node_ids;
  std::vector<CapEdge> edges;
  std::vector<EdgeCoflow> coflows;
  friend bool operator==(const EdgeCapInstance&, const EdgeCapInstance&) = default;
};

// Splits every edge in the middle: a fresh node per edge carries the edge's
// capacity, all original nodes become unbounded. Throws ValidationError on
// paths that traverse a nonexistent edge or are not connected.
Instance reduce_edge_capacities(const EdgeCapInstance& e_inst);

// Replaces every node by an in/out gadget joined by an edge that carries the
// node's capacity; connector edges between gadgets are unbounded. Requires
// all node capacities finite.
EdgeCapInstance reduce_node_to_edge(const Instance& inst);

// ---------------------------------------------------------------------------
// Generators.

struct SimpleGraph {
  std::size_t n_vertices = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

// k3 | k4 | c5 | petersen
SimpleGraph named_graph(std::string_view name);

// Three unit flows on the edges of a triangle, unit capacities, one coflow.
Instance gen_triangle();

// Four unit flows on 3-node paths, any two of which share a node; one coflow.
Instance gen_quad();

// Scheduling instance whose single-coflow optimum equals the chromatic
// number of g: one node per edge of g, one unit flow per non-isolated vertex
// covering its incident edges.
Instance gen_coloring(const SimpleGraph& g);

struct RandomSpec {
  std::int64_t n_coflows = 1;
  std::int64_t n_nodes = 3;
  std::int64_t max_flows = 1;
  std::int64_t max_path = 2;
  std::int64_t max_demand = 1;
  std::int64_t max_release = 0;
  std::int64_t max_capacity = 1;
  std::uint64_t seed = 0;
};

Instance gen_random(const RandomSpec& spec);

struct BipartiteSpec {
  std::int64_t n_ports = 2;
  std::int64_t n_coflows = 1;
  double density = 1.0;
  std::int64_t max_demand = 1;
  std::int64_t max_release = 0;
  std::uint64_t seed = 0;
};

// Two layers of n_ports unit-capacity ports; every flow is a 2-node path
// from an input port to an output port.
Instance gen_bipartite(const BipartiteSpec& spec);

}  // namespace pcs
