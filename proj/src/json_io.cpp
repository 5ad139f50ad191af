#include "json_io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "errors.hpp"

namespace pcs {

namespace {

using json = nlohmann::ordered_json;

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& ctx) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) { ok = true; break; }
    if (!ok) throw ParseError("unknown key '" + key + "' in " + ctx);
  }
}

const json& require(const json& obj, const char* key, const std::string& ctx) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw ParseError("missing field '" + std::string(key) + "' in " + ctx);
  return *it;
}

std::int64_t require_int(const json& v, const char* key, const std::string& ctx) {
  if (!v.is_number_integer())
    throw ParseError("field '" + std::string(key) + "' in " + ctx +
                     " must be an integer");
  return v.get<std::int64_t>();
}

Capacity parse_capacity(const json& v, const std::string& ctx) {
  if (v.is_string()) {
    if (v.get<std::string>() == "unbounded") return Capacity::unbounded();
    throw ParseError("capacity in " + ctx +
                     " must be a positive integer or \"unbounded\"");
  }
  const std::int64_t c = require_int(v, "capacity", ctx);
  if (c < 1)
    throw ParseError("capacity in " + ctx + " must be >= 1");
  return Capacity::finite(c);
}

json capacity_to_json(const Capacity& c) {
  if (c.is_finite()) return c.value();
  return "unbounded";
}

struct ParsedNodes {
  std::vector<std::string> ids;
  std::vector<Capacity> capacities;
  std::unordered_map<std::string, NodeIndex> index;
};

ParsedNodes parse_nodes(const json& doc, bool with_capacity) {
  ParsedNodes out;
  const json& nodes = require(doc, "nodes", "document");
  if (!nodes.is_array()) throw ParseError("'nodes' must be an array");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string ctx = "nodes[" + std::to_string(i) + "]";
    const json& n = nodes[i];
    if (!n.is_object()) throw ParseError(ctx + " must be an object");
    if (with_capacity)
      check_keys(n, {"id", "capacity"}, ctx);
    else
      check_keys(n, {"id"}, ctx);
    const json& id = require(n, "id", ctx);
    if (!id.is_string()) throw ParseError("'id' in " + ctx + " must be a string");
    out.ids.push_back(id.get<std::string>());
    if (with_capacity)
      out.capacities.push_back(parse_capacity(require(n, "capacity", ctx), ctx));
    if (!out.index.emplace(out.ids.back(), static_cast<NodeIndex>(i)).second)
      throw ParseError("duplicate node id '" + out.ids.back() + "'");
  }
  return out;
}

template <typename FlowParser>
void parse_coflow_common(const json& doc, const char* flow_key,
                         FlowParser&& parse_flow,
                         std::vector<double>& weights,
                         std::vector<std::int64_t>& releases) {
  const json& coflows = require(doc, "coflows", "document");
  if (!coflows.is_array()) throw ParseError("'coflows' must be an array");
  for (std::size_t k = 0; k < coflows.size(); ++k) {
    const std::string ctx = "coflows[" + std::to_string(k) + "]";
    const json& cf = coflows[k];
    if (!cf.is_object()) throw ParseError(ctx + " must be an object");
    check_keys(cf, {"weight", "release", "flows"}, ctx);
    const json& w = require(cf, "weight", ctx);
    if (!w.is_number()) throw ParseError("'weight' in " + ctx + " must be a number");
    weights.push_back(w.get<double>());
    releases.push_back(require_int(require(cf, "release", ctx), "release", ctx));

    const json& flows = require(cf, "flows", ctx);
    if (!flows.is_array()) throw ParseError("'flows' in " + ctx + " must be an array");
    for (std::size_t j = 0; j < flows.size(); ++j) {
      const std::string fctx = ctx + ".flows[" + std::to_string(j) + "]";
      const json& f = flows[j];
      if (!f.is_object()) throw ParseError(fctx + " must be an object");
      check_keys(f, {flow_key, "demand"}, fctx);
      parse_flow(k, f, fctx);
    }
  }
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

bool is_edge_capacitated(const std::string& text) {
  const json doc = parse_text(text);
  return doc.is_object() && doc.contains("edges");
}

Instance parse_instance(const std::string& text, bool run_validation) {
  const json doc = parse_text(text);
  if (!doc.is_object()) throw ParseError("document must be a JSON object");
  check_keys(doc, {"name", "nodes", "coflows"}, "document");

  Instance inst;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw ParseError("'name' must be a string");
    inst.name = doc["name"].get<std::string>();
  }

  ParsedNodes nodes = parse_nodes(doc, /*with_capacity=*/true);
  for (std::size_t i = 0; i < nodes.ids.size(); ++i)
    inst.nodes.push_back({nodes.ids[i], nodes.capacities[i]});

  std::vector<double> weights;
  std::vector<std::int64_t> releases;
  std::vector<std::vector<Flow>> flows_by_coflow;
  parse_coflow_common(
      doc, "path",
      [&](std::size_t k, const json& f, const std::string& fctx) {
        if (flows_by_coflow.size() <= k) flows_by_coflow.resize(k + 1);
        Flow flow;
        const json& path = require(f, "path", fctx);
        if (!path.is_array()) throw ParseError("'path' in " + fctx + " must be an array");
        for (const json& step : path) {
          if (!step.is_string())
            throw ParseError("'path' entries in " + fctx + " must be node ids");
          auto it = nodes.index.find(step.get<std::string>());
          if (it == nodes.index.end())
            throw ParseError("'path' in " + fctx + " references undeclared node '" +
                             step.get<std::string>() + "'");
          flow.path.push_back(it->second);
        }
        flow.demand = require_int(require(f, "demand", fctx), "demand", fctx);
        flows_by_coflow[k].push_back(std::move(flow));
      },
      weights, releases);

  for (std::size_t k = 0; k < weights.size(); ++k) {
    Coflow cf;
    cf.weight = weights[k];
    cf.release = releases[k];
    if (k < flows_by_coflow.size()) cf.flows = std::move(flows_by_coflow[k]);
    inst.coflows.push_back(std::move(cf));
  }

  if (run_validation) {
    const ValidationReport report = validate(inst);
    if (!report.ok) {
      std::string msg = "instance fails validation:";
      for (const auto& v : report.violations) msg += "\n  - " + v;
      throw ValidationError(msg);
    }
  }
  return inst;
}

Instance load_instance(std::istream& in, bool run_validation) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str(), run_validation);
}

Instance load_instance_file(const std::string& path, bool run_validation) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return load_instance(in, run_validation);
}

std::string instance_to_json(const Instance& inst) {
  json doc = json::object();
  if (!inst.name.empty()) doc["name"] = inst.name;
  doc["nodes"] = json::array();
  for (const auto& node : inst.nodes)
    doc["nodes"].push_back({{"id", node.id},
                            {"capacity", capacity_to_json(node.capacity)}});
  doc["coflows"] = json::array();
  for (const auto& cf : inst.coflows) {
    json flows = json::array();
    for (const auto& flow : cf.flows) {
      json path = json::array();
      for (NodeIndex v : flow.path) path.push_back(inst.nodes[v].id);
      flows.push_back({{"path", std::move(path)}, {"demand", flow.demand}});
    }
    doc["coflows"].push_back({{"weight", cf.weight},
                              {"release", cf.release},
                              {"flows", std::move(flows)}});
  }
  return dump(doc);
}

void save_instance(const Instance& inst, std::ostream& out) {
  out << instance_to_json(inst);
}

void save_instance_file(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  save_instance(inst, out);
}

EdgeCapInstance parse_edge_instance(const std::string& text) {
  const json doc = parse_text(text);
  if (!doc.is_object()) throw ParseError("document must be a JSON object");
  check_keys(doc, {"name", "nodes", "edges", "coflows"}, "document");

  EdgeCapInstance inst;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw ParseError("'name' must be a string");
    inst.name = doc["name"].get<std::string>();
  }

  ParsedNodes nodes = parse_nodes(doc, /*with_capacity=*/false);
  inst.node_ids = nodes.ids;

  const json& edges = require(doc, "edges", "document");
  if (!edges.is_array()) throw ParseError("'edges' must be an array");
  for (std::size_t t = 0; t < edges.size(); ++t) {
    const std::string ctx = "edges[" + std::to_string(t) + "]";
    const json& e = edges[t];
    if (!e.is_object()) throw ParseError(ctx + " must be an object");
    check_keys(e, {"a", "b", "capacity"}, ctx);
    CapEdge edge;
    for (auto [key, field] : {std::pair{"a", &edge.a}, std::pair{"b", &edge.b}}) {
      const json& v = require(e, key, ctx);
      if (!v.is_string())
        throw ParseError(std::string("'") + key + "' in " + ctx + " must be a node id");
      auto it = nodes.index.find(v.get<std::string>());
      if (it == nodes.index.end())
        throw ParseError("edge endpoint '" + v.get<std::string>() + "' in " + ctx +
                         " is not a declared node");
      *field = it->second;
    }
    edge.capacity = parse_capacity(require(e, "capacity", ctx), ctx);
    inst.edges.push_back(edge);
  }

  std::vector<double> weights;
  std::vector<std::int64_t> releases;
  std::vector<std::vector<EdgeFlow>> flows_by_coflow;
  parse_coflow_common(
      doc, "edge_path",
      [&](std::size_t k, const json& f, const std::string& fctx) {
        if (flows_by_coflow.size() <= k) flows_by_coflow.resize(k + 1);
        EdgeFlow flow;
        const json& path = require(f, "edge_path", fctx);
        if (!path.is_array())
          throw ParseError("'edge_path' in " + fctx + " must be an array");
        for (const json& step : path) {
          if (!step.is_number_integer() || step.get<std::int64_t>() < 0)
            throw ParseError("'edge_path' entries in " + fctx +
                             " must be non-negative edge indices");
          flow.edge_path.push_back(step.get<std::uint32_t>());
        }
        flow.demand = require_int(require(f, "demand", fctx), "demand", fctx);
        flows_by_coflow[k].push_back(std::move(flow));
      },
      weights, releases);

  for (std::size_t k = 0; k < weights.size(); ++k) {
    EdgeCoflow cf;
    cf.weight = weights[k];
    cf.release = releases[k];
    if (k < flows_by_coflow.size()) cf.flows = std::move(flows_by_coflow[k]);
    inst.coflows.push_back(std::move(cf));
  }
  return inst;
}

EdgeCapInstance load_edge_instance(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_edge_instance(buf.str());
}

EdgeCapInstance load_edge_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return load_edge_instance(in);
}

std::string edge_instance_to_json(const EdgeCapInstance& inst) {
  json doc = json::object();
  if (!inst.name.empty()) doc["name"] = inst.name;
  doc["nodes"] = json::array();
  for (const auto& id : inst.node_ids) doc["nodes"].push_back({{"id", id}});
  doc["edges"] = json::array();
  for (const auto& e : inst.edges)
    doc["edges"].push_back({{"a", inst.node_ids[e.a]},
                            {"b", inst.node_ids[e.b]},
                            {"capacity", capacity_to_json(e.capacity)}});
  doc["coflows"] = json::array();
  for (const auto& cf : inst.coflows) {
    json flows = json::array();
    for (const auto& flow : cf.flows)
      flows.push_back({{"edge_path", flow.edge_path}, {"demand", flow.demand}});
    doc["coflows"].push_back({{"weight", cf.weight},
                              {"release", cf.release},
                              {"flows", std::move(flows)}});
  }
  return dump(doc);
}

void save_edge_instance(const EdgeCapInstance& inst, std::ostream& out) {
  out << edge_instance_to_json(inst);
}

void save_edge_instance_file(const EdgeCapInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  save_edge_instance(inst, out);
}

}  // namespace pcs
