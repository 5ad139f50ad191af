#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "instance.hpp"
#include "lp_core.hpp"

namespace pcs {

enum class LpMode { General, Bipartite };
enum class DeadlineMode { Standard, Improved };

// Relaxed completion times, plus the job order they induce.
struct LpSolution {
  std::vector<double> c_star;       // per-job optimal relaxed completion time
  std::vector<std::size_t> order;   // job indices, c_star non-decreasing,
                                    // ties broken by ascending job index
  double lp_objective = 0.0;
  int cuts_added = 0;
  int iterations = 0;               // cutting-plane rounds (LP solves)
};

struct DeadlineSet {
  DeadlineMode mode = DeadlineMode::Standard;
  std::vector<double> d;  // per-job deadline
};

// One lower-bound constraint C_k >= rhs. machine is empty for the
// release-floor constraint C_k >= r_k + 1.
struct BaseConstraint {
  std::size_t job = 0;
  std::optional<NodeIndex> machine;
  double rhs = 0.0;
};

// A violated subset constraint found by the separation routine: for the
// prefix S of the machine's job sort, sum_{k in S} L_i(k) C_k >= f_i(S)/u(i)
// with f_i(S) = (sum L^2 + (sum L)^2) / 2.
struct CutRecord {
  NodeIndex machine = 0;
  std::size_t prefix_len = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  std::vector<std::size_t> jobs;  // prefix members in the machine's sort order
};

struct RelaxOptions {
  int cut_round_cap = 1000;
  double sep_tol_scale = 1e-7;  // violation threshold: scale * max(1, |rhs|)
  LpOptions lp;
};

// Per-job lower bounds: C_k >= r_k + 1 always, plus C_k >= r_k + L_i(k)/u(i)
// for every finite-capacity machine the job touches.
std::vector<BaseConstraint> build_base_constraints(const Instance& inst);

// For each finite-capacity machine, sorts the jobs it carries by ascending
// candidate value and scans all prefixes; returns the most violated
// constraint per machine (empty when the candidate satisfies them all).
std::vector<CutRecord> separate(const Instance& inst, const LoadTable& table,
                                const std::vector<double>& c,
                                double tol_scale = 1e-7);

// Cutting-plane loop over the base constraints and separated cuts. Bipartite
// mode first checks that the instance is a two-layer port structure (every
// path has two nodes, one per side); the solved system is the same.
// Throws IterationLimitError if the round cap is hit.
LpSolution solve_relaxation(const Instance& inst, LpMode mode = LpMode::General,
                            const RelaxOptions& opts = {});

// Standard: D_k = 2 C*_k. Improved: D_k = (2p/(p+1)) C*_k with p the job's
// 1-based rank in the solution order.
DeadlineSet deadlines(const LpSolution& sol, DeadlineMode mode);

struct LemmaReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Checks that the solution dominates the per-machine prefix loads:
// C*_(k) >= (1/(2 u(i))) sum_{l<=k} L_i(l) along the solution order, and in
// Improved mode also the sharpened factor (k+1)/(2k u(i)).
LemmaReport check_lp_lower_bounds(const Instance& inst, const LpSolution& sol,
                                  DeadlineMode mode);

// Throws ValidationError unless every path has exactly two nodes and the
// union of path edges is two-colorable.
void require_bipartite(const Instance& inst);

}  // namespace pcs
