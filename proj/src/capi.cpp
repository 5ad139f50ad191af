#include "pcs.h"

#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "certify.hpp"
#include "errors.hpp"
#include "instance.hpp"
#include "json_io.hpp"
#include "oracle.hpp"
#include "pipeline.hpp"

using namespace pcs;

struct pcs_instance {
  Instance inst;
};

struct pcs_result {
  Instance inst;  // snapshot the run was produced from
  SolveRun run;
};

namespace {

thread_local std::string g_last_error;

pcs_status fail(pcs_status code, const char* what) {
  g_last_error = what ? what : "";
  return code;
}

template <typename Fn>
pcs_status guard(Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    return fail(PCS_EPARSE, e.what());
  } catch (const ValidationError& e) {
    return fail(PCS_EVALIDATION, e.what());
  } catch (const CapExceededError& e) {
    return fail(PCS_ECAP, e.what());
  } catch (const IterationLimitError& e) {
    return fail(PCS_EITER, e.what());
  } catch (const IoError& e) {
    return fail(PCS_EIO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(PCS_EINTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PCS_EINTERNAL, e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

pcs_status make_instance(Instance inst, pcs_instance** out) {
  *out = new pcs_instance{std::move(inst)};
  return PCS_OK;
}

SolveOptions convert(const pcs_solve_options* o) {
  SolveOptions opts;
  if (!o) return opts;
  opts.lp_mode = o->lp_mode == 1 ? LpMode::Bipartite : LpMode::General;
  opts.deadline_mode =
      o->deadline_mode == 1 ? DeadlineMode::Improved : DeadlineMode::Standard;
  opts.force_general_route = o->force_general != 0;
  opts.with_oracle = o->with_oracle != 0;
  opts.oracle_required = o->oracle_required != 0;
  if (o->oracle_unit_cap > 0) opts.oracle_unit_cap = o->oracle_unit_cap;
  if (o->expansion_cap > 0) opts.expansion_cap = o->expansion_cap;
  if (o->cut_round_cap > 0) opts.cut_round_cap = o->cut_round_cap;
  if (o->tolerance > 0) opts.tolerance = o->tolerance;
  return opts;
}

}  // namespace

extern "C" {

const char* pcs_status_name(pcs_status s) {
  switch (s) {
    case PCS_OK: return "ok";
    case PCS_EINVAL: return "invalid argument";
    case PCS_EPARSE: return "parse error";
    case PCS_EVALIDATION: return "validation error";
    case PCS_ECAP: return "cap exceeded";
    case PCS_EITER: return "iteration limit";
    case PCS_EIO: return "i/o error";
    case PCS_EINTERNAL: return "internal error";
  }
  return "unknown";
}

const char* pcs_last_error(void) { return g_last_error.c_str(); }

void pcs_string_free(char* s) { delete[] s; }

void pcs_instance_free(pcs_instance* inst) { delete inst; }

void pcs_result_free(pcs_result* res) { delete res; }

pcs_status pcs_instance_from_json(const char* text, pcs_instance** out) {
  if (!text || !out) return fail(PCS_EINVAL, "null argument");
  return guard([&] {
    if (is_edge_capacitated(text))
      return make_instance(reduce_edge_capacities(parse_edge_instance(text)), out);
    return make_instance(parse_instance(text), out);
  });
}

pcs_status pcs_instance_load(const char* path, pcs_instance** out) {
  if (!path || !out) return fail(PCS_EINVAL, "null argument");
  return guard([&] {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + std::string(path) + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (is_edge_capacitated(text))
      return make_instance(reduce_edge_capacities(parse_edge_instance(text)), out);
    return make_instance(parse_instance(text), out);
  });
}

pcs_status pcs_instance_to_json(const pcs_instance* inst, char** out) {
  if (!inst || !out) return fail(PCS_EINVAL, "null argument");
  return guard([&] {
    *out = copy_string(instance_to_json(inst->inst));
    return PCS_OK;
  });
}

pcs_status pcs_instance_save(const pcs_instance* inst, const char* path) {
  if (!inst || !path) return fail(PCS_EINVAL, "null argument");
  return guard([&] {
    save_instance_file(inst->inst, path);
    return PCS_OK;
  });
}

pcs_status pcs_instance_validate(const pcs_instance* inst, int* ok,
                                 char** report) {
  if (!inst || !ok) return fail(PCS_EINVAL, "null argument");
  return guard([&] {
    const ValidationReport vr = validate(inst->inst);
    *ok = vr.ok ? 1 : 0;
    if (report) {
      std::string text;
      for (const auto& v : vr.violations) text += v + "\n";
      *report = copy_string(text);
    }
    return PCS_OK;
  });
}

pcs_status pcs_validate_file(const char* path, int as_json, char** report,
                             int* ok) {
  if (!path || !ok) return fail(PCS_EINVAL, "null argument");
  return guard([&] {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + std::string(path) + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    Instance inst = is_edge_capacitated(text)
                        ? reduce_edge_capacities(parse_edge_instance(text))
                        : parse_instance(text, /*run_validation=*/false);
    const ValidationReport vr = validate(inst);
    *ok = vr.ok ? 1 : 0;
    if (report) {
      if (as_json) {
        std::string doc = "{\n  \"ok\": ";
        doc += vr.ok ? "true" : "false";
        doc += ",\n  \"violations\": [";
        for (std::size_t i = 0; i < vr.violations.size(); ++i) {
          if (i) doc += ", ";
          std::string escaped;
          for (char c : vr.violations[i]) {
            if (c == '"' || c == '\\') escaped += '\\';
            escaped += c;
          }
          doc += "\"" + escaped + "\"";
        }
        doc += "]\n}\n";
        *report = copy_string(doc);
      } else {
        std::string doc = vr.ok ? "ok\n" : "invalid\n";
        for (const auto& v : vr.violations) doc += "  - " + v + "\n";
        *report = copy_string(doc);
      }
    }
    return PCS_OK;
  });
}

pcs_status pcs_instance_stats(const pcs_instance* inst, int32_t* lambda,
                              int32_t* lambda_finite, int64_t* total_units,
                              int32_t* n_coflows, int32_t* n_nodes) {
  if (!inst) return fail(PCS_EINVAL, "null argument");
  return guard([&] {
    const LambdaInfo info = path_lambda(inst->inst);
    if (lambda) *lambda = info.lambda;
    if (lambda_finite) *lambda_finite = info.lambda_finite;
    if (total_units) *total_units = inst->inst.total_demand_units();
    if (n_coflows) *n_coflows = static_cast<int32_t>(inst->inst.job_count());
    if (n_nodes) *n_nodes = static_cast<int32_t>(inst->inst.node_count());
    return PCS_OK;
  });
}

pcs_status pcs_gen_triangle(pcs_instance** out) {
  if (!out) return fail(PCS_EINVAL, "null argument");
  return guard([&] { return make_instance(gen_triangle(), out); });
}

pcs_status pcs_gen_quad(pcs_instance** out) {
  if (!out) return fail(PCS_EINVAL, "null argument");
  return guard([&] { return make_instance(gen_quad(), out); });
}

pcs_status pcs_gen_coloring(const char* graph, pcs_instance** out) {
  if (!graph || !out) return fail(PCS_EINVAL, "null argument");
  return guard([&] {
    return make_instance(gen_coloring(named_graph(graph)), out);
  });
}

pcs_status pcs_gen_random(int64_t n_coflows, int64_t n_nodes, int64_t max_flows,
                          int64_t max_path, int64_t max_demand,
                          int64_t max_release, int64_t max_capacity,
                          uint64_t seed, pcs_instance** out) {
  if (!out) return fail(PCS_EINVAL, "null argument");
  return guard([&] {
    RandomSpec spec;
    spec.n_coflows = n_coflows;
    spec.n_nodes = n_nodes;
    spec.max_flows = max_flows;
    spec.max_path = max_path;
    spec.max_demand = max_demand;
    spec.max_release = max_release;
    spec.max_capacity = max_capacity;
    spec.seed = seed;
    return make_instance(gen_random(spec), out);
  });
}

pcs_status pcs_gen_bipartite(int64_t n_ports, int64_t n_coflows, double density,
                             int64_t max_demand, int64_t max_release,
                             uint64_t seed, pcs_instance** out) {
  if (!out) return fail(PCS_EINVAL, "null argument");
  return guard([&] {
    BipartiteSpec spec;
    spec.n_ports = n_ports;
    spec.n_coflows = n_coflows;
    spec.density = density;
    spec.max_demand = max_demand;
    spec.max_release = max_release;
    spec.seed = seed;
    return make_instance(gen_bipartite(spec), out);
  });
}

void pcs_solve_options_init(pcs_solve_options* opts) {
  if (!opts) return;
  std::memset(opts, 0, sizeof(*opts));
}

pcs_status pcs_solve(const pcs_instance* inst, const pcs_solve_options* opts,
                     pcs_result** out) {
  if (!inst || !out) return fail(PCS_EINVAL, "null argument");
  return guard([&] {
    auto res = std::make_unique<pcs_result>();
    res->inst = inst->inst;
    res->run = run_pipeline(inst->inst, convert(opts));
    *out = res.release();
    return PCS_OK;
  });
}

pcs_status pcs_result_report(const pcs_result* res, int as_json, char** out) {
  if (!res || !out) return fail(PCS_EINVAL, "null argument");
  return guard([&] {
    *out = copy_string(as_json ? solve_report_json(res->inst, res->run)
                               : solve_report_text(res->inst, res->run));
    return PCS_OK;
  });
}

pcs_status pcs_result_schedule_json(const pcs_result* res, char** out) {
  if (!res || !out) return fail(PCS_EINVAL, "null argument");
  return guard([&] {
    *out = copy_string(schedule_json(res->run.schedule));
    return PCS_OK;
  });
}

double pcs_result_lp_objective(const pcs_result* res) {
  return res ? res->run.lp.lp_objective : 0.0;
}

double pcs_result_objective(const pcs_result* res) {
  return res ? res->run.schedule.objective : 0.0;
}

double pcs_result_bound(const pcs_result* res) {
  return res ? res->run.ratio.bound_used : 0.0;
}

int pcs_result_checks_ok(const pcs_result* res) {
  return res && res->run.all_checks_ok ? 1 : 0;
}

pcs_status pcs_oracle(const pcs_instance* inst, int64_t unit_cap,
                      double* objective, char** schedule) {
  if (!inst || !objective) return fail(PCS_EINVAL, "null argument");
  return guard([&] {
    const OracleResult res =
        exact_optimum(inst->inst, unit_cap > 0 ? unit_cap : 12);
    *objective = res.objective;
    if (schedule) *schedule = copy_string(schedule_json(res.schedule));
    return PCS_OK;
  });
}

void pcs_certify_options_init(pcs_certify_options* opts) {
  if (!opts) return;
  std::memset(opts, 0, sizeof(*opts));
  opts->profile = "small";
  opts->seed_lo = 1;
  opts->seed_hi = 50;
  opts->deadline_modes = 2;
}

pcs_status pcs_certify(const pcs_certify_options* opts, int as_json,
                       char** report, int* all_passed) {
  if (!opts || !all_passed) return fail(PCS_EINVAL, "null argument");
  return guard([&] {
    CertifyOptions copts;
    copts.profile = profile_from_name(opts->profile ? opts->profile : "small");
    copts.seed_lo = opts->seed_lo ? opts->seed_lo : 1;
    copts.seed_hi = opts->seed_hi ? opts->seed_hi : copts.seed_lo + 49;
    copts.deadline_modes = opts->deadline_modes;
    if (opts->oracle_unit_cap > 0) copts.oracle_unit_cap = opts->oracle_unit_cap;
    const CertifyReport result = certify(copts);
    *all_passed = result.all_pass ? 1 : 0;
    if (report)
      *report = copy_string(as_json ? certify_report_json(result)
                                    : certify_report_text(result));
    return PCS_OK;
  });
}

}  // extern "C"
