#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace pcs {

// A small dense linear program: minimize objective . x subject to
// rows[i] . x >= rhs[i] and x >= 0.
struct LinearProgram {
  std::size_t n_vars = 0;
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;

  void add_constraint(std::vector<double> coeffs, double b);
  std::size_t n_constraints() const { return rows.size(); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Optimal;
  std::vector<double> values;  // primal solution (when Optimal)
  std::vector<double> duals;   // one multiplier per constraint (when Optimal)
  double objective_value = 0.0;
  int iterations = 0;
};

struct LpOptions {
  double feas_tol = 1e-9;
  double opt_tol = 1e-9;
  int max_iterations = 50000;
  std::ostream* trace = nullptr;  // per-pivot log when set
};

// Two-phase tableau simplex with Bland's anti-cycling rule. Infeasible and
// unbounded problems come back as statuses; only the iteration cap throws
// (IterationLimitError), since hitting it means numerical trouble.
// Optimal results carry a feasible dual vector certifying optimality.
LpResult solve_lp(const LinearProgram& lp, const LpOptions& opts = {});

}  // namespace pcs
