#include "lp_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "errors.hpp"

namespace pcs {

void LinearProgram::add_constraint(std::vector<double> coeffs, double b) {
  if (coeffs.size() != n_vars)
    throw InternalError("LinearProgram: coefficient vector length mismatch");
  rows.push_back(std::move(coeffs));
  rhs.push_back(b);
}

namespace {

constexpr double kPivotTol = 1e-11;

// Dense tableau over columns [structural | slack]. Rows with positive
// right-hand side get a temporary artificial column for phase 1; artificials
// are driven out (or their rows dropped as redundant) before phase 2.
class Simplex {
 public:
  Simplex(const LinearProgram& lp, const LpOptions& opts)
      : lp_(lp), opts_(opts), n_(lp.n_vars), m_(lp.rows.size()) {
    if (lp.objective.size() != n_)
      throw InternalError("LinearProgram: objective length mismatch");
    rows_.resize(m_);
    rhs_.resize(m_);
    basis_.resize(m_);
    slack_col_.resize(m_);
    row_of_constraint_.resize(m_);

    std::size_t n_art = 0;
    for (std::size_t i = 0; i < m_; ++i)
      if (lp.rhs[i] > 0) ++n_art;
    n_cols_ = n_ + m_ + n_art;
    first_art_ = n_ + m_;

    std::size_t next_art = first_art_;
    for (std::size_t i = 0; i < m_; ++i) {
      auto& row = rows_[i];
      row.assign(n_cols_, 0.0);
      const bool negate = lp.rhs[i] <= 0;
      const double sign = negate ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_; ++j) row[j] = sign * lp.rows[i][j];
      slack_col_[i] = n_ + i;
      row[n_ + i] = negate ? 1.0 : -1.0;
      rhs_[i] = sign * lp.rhs[i];
      if (negate) {
        basis_[i] = n_ + i;
      } else {
        row[next_art] = 1.0;
        basis_[i] = next_art++;
      }
      row_of_constraint_[i] = i;
      row_alive_.push_back(true);
    }
  }

  LpResult run() {
    LpResult res;
    if (first_art_ < n_cols_) {
      if (!phase1()) {
        res.status = LpStatus::Infeasible;
        res.iterations = iterations_;
        return res;
      }
    }
    const LpStatus st = phase2();
    res.status = st;
    res.iterations = iterations_;
    if (st != LpStatus::Optimal) return res;

    res.values.assign(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i)
      if (row_alive_[i] && basis_[i] < n_) res.values[basis_[i]] = rhs_[i];
    res.objective_value = 0.0;
    for (std::size_t j = 0; j < n_; ++j)
      res.objective_value += lp_.objective[j] * res.values[j];
    // The multiplier of constraint i is the reduced cost of its slack column.
    res.duals.assign(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i)
      if (row_alive_[i]) res.duals[i] = std::max(0.0, reduced_[slack_col_[i]]);
    return res;
  }

 private:
  // Rebuild the reduced-cost row for the given per-column costs.
  void price(const std::vector<double>& cost) {
    reduced_ = cost;
    obj_ = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (!row_alive_[i]) continue;
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      obj_ += cb * rhs_[i];
      for (std::size_t j = 0; j < n_cols_; ++j) reduced_[j] -= cb * rows_[i][j];
    }
  }

  void pivot(std::size_t pr, std::size_t pc) {
    auto& prow = rows_[pr];
    const double inv = 1.0 / prow[pc];
    for (double& v : prow) v *= inv;
    rhs_[pr] *= inv;
    prow[pc] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == pr || !row_alive_[i]) continue;
      const double f = rows_[i][pc];
      if (f == 0.0) continue;
      auto& row = rows_[i];
      for (std::size_t j = 0; j < n_cols_; ++j) row[j] -= f * prow[j];
      row[pc] = 0.0;
      rhs_[i] -= f * rhs_[pr];
      if (rhs_[i] < 0.0 && rhs_[i] > -1e-9) rhs_[i] = 0.0;
    }
    const double f = reduced_[pc];
    if (f != 0.0) {
      for (std::size_t j = 0; j < n_cols_; ++j) reduced_[j] -= f * prow[j];
      reduced_[pc] = 0.0;
      obj_ -= f * rhs_[pr];
    }
    basis_[pr] = pc;
  }

  // One simplex loop with Bland's rule: entering column is the lowest-index
  // column with negative reduced cost; the leaving row breaks ratio ties by
  // the lowest basis variable index. Guarantees termination.
  LpStatus iterate(int phase, bool allow_art) {
    for (;;) {
      std::size_t enter = n_cols_;
      const std::size_t limit = allow_art ? n_cols_ : first_art_;
      for (std::size_t j = 0; j < limit; ++j) {
        if (reduced_[j] < -opts_.opt_tol) { enter = j; break; }
      }
      if (enter == n_cols_) return LpStatus::Optimal;

      std::size_t leave = m_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        if (!row_alive_[i]) continue;
        const double a = rows_[i][enter];
        if (a <= kPivotTol) continue;
        const double ratio = rhs_[i] / a;
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 && (leave == m_ || basis_[i] < basis_[leave]))) {
          best_ratio = ratio;
          leave = i;
        }
      }
      if (leave == m_) return LpStatus::Unbounded;

      if (opts_.trace)
        *opts_.trace << "phase " << phase << " it " << iterations_
                     << ": col " << enter << " enters, var " << basis_[leave]
                     << " leaves, obj " << obj_ << "\n";
      pivot(leave, enter);
      if (++iterations_ > opts_.max_iterations)
        throw IterationLimitError("simplex iteration cap exceeded");
    }
  }

  bool phase1() {
    std::vector<double> cost(n_cols_, 0.0);
    for (std::size_t j = first_art_; j < n_cols_; ++j) cost[j] = 1.0;
    price(cost);
    const LpStatus st = iterate(1, /*allow_art=*/true);
    if (st == LpStatus::Unbounded)
      throw InternalError("phase-1 objective cannot be unbounded");
    double scale = 1.0;
    for (std::size_t i = 0; i < m_; ++i) scale = std::max(scale, std::abs(rhs_[i]));
    if (obj_ > 1e-7 * scale) return false;

    // Drive leftover artificials out of the basis; rows where no structural
    // or slack column can pivot are redundant and get dropped.
    for (std::size_t i = 0; i < m_; ++i) {
      if (!row_alive_[i] || basis_[i] < first_art_) continue;
      std::size_t pc = n_cols_;
      for (std::size_t j = 0; j < first_art_; ++j)
        if (std::abs(rows_[i][j]) > 1e-7) { pc = j; break; }
      if (pc == n_cols_) {
        row_alive_[i] = false;
        continue;
      }
      pivot(i, pc);
    }
    return true;
  }

  LpStatus phase2() {
    std::vector<double> cost(n_cols_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) cost[j] = lp_.objective[j];
    price(cost);
    return iterate(2, /*allow_art=*/false);
  }

  const LinearProgram& lp_;
  const LpOptions& opts_;
  std::size_t n_, m_, n_cols_ = 0, first_art_ = 0;
  std::vector<std::vector<double>> rows_;
  std::vector<double> rhs_;
  std::vector<double> reduced_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> slack_col_;
  std::vector<std::size_t> row_of_constraint_;
  std::vector<bool> row_alive_;
  double obj_ = 0.0;
  int iterations_ = 0;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp, const LpOptions& opts) {
  Simplex solver(lp, opts);
  return solver.run();
}

}  // namespace pcs
