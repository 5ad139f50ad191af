#pragma once

#include <iosfwd>
#include <string>

#include "instance.hpp"

namespace pcs {

// Document format, node-capacitated:
//   { "name": string?,
//     "nodes": [ { "id": string, "capacity": positive-int | "unbounded" } ],
//     "coflows": [ { "weight": number, "release": non-negative-int,
//                    "flows": [ { "path": [node-id...],
//                                 "demand": positive-int } ] } ] }
// Edge-capacitated documents add "edges": [ { "a": id, "b": id,
// "capacity": positive-int | "unbounded" } ] and give flow paths as
// edge-index lists under "edge_path". Unknown keys are rejected.

// True if the document declares edge capacities ("edges" key present).
bool is_edge_capacitated(const std::string& text);

// Throws ParseError on malformed documents. With run_validation (default),
// also throws ValidationError when the parsed instance breaks an invariant.
Instance parse_instance(const std::string& text, bool run_validation = true);
Instance load_instance(std::istream& in, bool run_validation = true);
Instance load_instance_file(const std::string& path, bool run_validation = true);

std::string instance_to_json(const Instance& inst);
void save_instance(const Instance& inst, std::ostream& out);
void save_instance_file(const Instance& inst, const std::string& path);

EdgeCapInstance parse_edge_instance(const std::string& text);
EdgeCapInstance load_edge_instance(std::istream& in);
EdgeCapInstance load_edge_instance_file(const std::string& path);

std::string edge_instance_to_json(const EdgeCapInstance& inst);
void save_edge_instance(const EdgeCapInstance& inst, std::ostream& out);
void save_edge_instance_file(const EdgeCapInstance& inst, const std::string& path);

}  // namespace pcs
