#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "instance.hpp"
#include "relaxation.hpp"

namespace pcs {

// One unit of one flow's demand, viewed as a hyperedge over its path nodes.
struct EdgeUnit {
  std::uint32_t unit_id = 0;
  std::size_t job = 0;
  std::size_t flow = 0;
  std::int64_t copy = 0;
  std::vector<NodeIndex> adj_nodes;  // finite-capacity path nodes (sorted);
                                     // only these create conflicts
  std::vector<NodeIndex> all_nodes;  // full path node set (sorted), used for
                                     // capacity accounting
  std::int64_t release = 0;
  double deadline = 0.0;
};

struct Hypergraph {
  std::vector<EdgeUnit> units;  // sorted by (deadline, job, flow, copy);
                                // unit_id equals the position in this order
  std::size_t total_units() const { return units.size(); }
};

// Expands every flow into its demand's worth of identical units. Throws
// CapExceededError when the total would exceed expansion_cap (the expansion
// is pseudo-polynomial in the demands).
Hypergraph build_hypergraph(const Instance& inst, const DeadlineSet& dl,
                            std::int64_t expansion_cap = 100000);

// Conflict graph on units: adjacent iff their finite-capacity node sets
// intersect. shared_nodes records, per adjacent pair (a < b), which nodes
// they have in common.
struct LineAdjacency {
  std::vector<std::vector<std::uint32_t>> neighbors;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<NodeIndex>>
      shared_nodes;
  std::size_t edge_count = 0;
};

LineAdjacency build_line_adjacency(const Hypergraph& h);

// Every conflict edge directed from the unit later in the hypergraph order
// to the earlier one. Acyclic by construction.
struct Orientation {
  std::vector<std::vector<std::uint32_t>> out_adj;
  std::vector<std::uint32_t> in_deg;
  std::size_t unit_count() const { return out_adj.size(); }
};

Orientation orient(const Hypergraph& h, const LineAdjacency& adj);

bool orientation_is_acyclic(const Orientation& o);

// Kernel of the orientation restricted to `active` (sorted unit ids):
// repeatedly take the units with no outgoing arc inside the active set,
// then drop them and their in-neighbors. The result is independent and
// every active unit outside it has an arc into it.
std::vector<std::uint32_t> find_kernel(const Orientation& o,
                                       const std::vector<std::uint32_t>& active);

struct BoundReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Out-degree bound for orientations built from load-dominating deadlines:
// |d+(e)| <= lambda * (D_e * avg(e) - 1), with avg(e) the mean capacity of
// the unit's finite nodes (1 under unit capacities).
BoundReport check_outdegree_bound(const Orientation& o, const Hypergraph& h,
                                  const Instance& inst);

// Mean capacity over the unit's finite nodes; 1.0 when it has none.
double avg_capacity(const EdgeUnit& unit, const Instance& inst);

// Capacity disparity: ceil(avg(e) / min capacity of e), computed exactly in
// integer arithmetic; 1 when the unit has no finite nodes.
std::int64_t capacity_disparity(const EdgeUnit& unit, const Instance& inst);

// Effective path length for the bound formulas: the largest number of
// finite-capacity nodes on any flow path, floored at 1.
int effective_lambda(const Instance& inst);

// One arc per line, "from -> to".
void dump_orientation(const Orientation& o, std::ostream& out);

}  // namespace pcs
