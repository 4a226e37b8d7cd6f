#pragma once

// Exact rational linear programming: two-phase primal simplex with Bland's
// rule. Strict-positivity tests on optima (the SPI existence criteria) are
// exact by construction. Instances are desk-scale, so a dense tableau is fine.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <utility>
#include <vector>

#include "spikit/rational.hpp"

namespace spikit {

enum class Cmp { LE, EQ, GE };

struct LinConstraint {
  std::vector<std::pair<int, Rational>> terms;  // (variable, coefficient)
  Cmp cmp = Cmp::LE;
  Rational rhs = 0;
};

struct LinearProgram {
  int num_vars = 0;
  std::vector<std::optional<Rational>> lower_bound;  // nullopt = free variable
  std::vector<LinConstraint> constraints;
  std::vector<Rational> objective;                    // maximized
  std::optional<std::vector<Rational>> objective2;    // lexicographic second stage

  /// Adds a variable; default lower bound 0, pass std::nullopt for free.
  int add_var(std::optional<Rational> lb = Rational(0)) {
    lower_bound.push_back(std::move(lb));
    return num_vars++;
  }

  void set_objective_coeff(int var, Rational c) {
    if (static_cast<int>(objective.size()) < num_vars) objective.resize(num_vars, Rational(0));
    objective[var] = std::move(c);
  }

  void add_constraint(LinConstraint c) { constraints.push_back(std::move(c)); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational value = 0;                    // primary objective at optimum
  Rational value2 = 0;                   // secondary objective (solve_lex only)
  std::vector<Rational> assignment;      // one value per program variable

  bool optimal() const { return status == LpStatus::Optimal; }
};

namespace detail {

inline bool lp_debug_enabled() {
  static bool on = std::getenv("SPIKIT_LP_DEBUG") != nullptr;
  return on;
}

class Simplex {
 public:
  explicit Simplex(const LinearProgram& p) : prog_(p) {
    if (static_cast<int>(p.lower_bound.size()) != p.num_vars)
      throw std::invalid_argument("lp: lower_bound size mismatch");
    build();
  }

  LpSolution run(const std::vector<Rational>& objective) {
    LpSolution sol;
    if (!phase1()) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    if (!phase2(objective)) {
      sol.status = LpStatus::Unbounded;
      return sol;
    }
    sol.status = LpStatus::Optimal;
    sol.assignment = extract();
    for (int j = 0; j < prog_.num_vars && j < static_cast<int>(objective.size()); ++j)
      sol.value += objective[j] * sol.assignment[j];
    return sol;
  }

 private:
  const LinearProgram& prog_;
  // internal column structure: per program variable either one shifted column
  // (x = lb + y, y >= 0) or a split pair (x = u - w)
  struct VarCols {
    int pos = -1;
    int neg = -1;  // -1 when bounded below
    Rational shift = 0;
  };
  std::vector<VarCols> var_cols_;
  int n_structural_ = 0;  // structural + slack columns
  int n_total_ = 0;       // including artificials
  std::vector<std::vector<Rational>> rows_;  // each size n_total_ + 1 (rhs last)
  std::vector<int> basis_;
  std::vector<bool> artificial_;

  void build() {
    int col = 0;
    var_cols_.resize(prog_.num_vars);
    for (int j = 0; j < prog_.num_vars; ++j) {
      if (prog_.lower_bound[j]) {
        var_cols_[j].pos = col++;
        var_cols_[j].shift = *prog_.lower_bound[j];
      } else {
        var_cols_[j].pos = col++;
        var_cols_[j].neg = col++;
      }
    }
    int m = static_cast<int>(prog_.constraints.size());
    int n_slack = 0;
    for (const auto& c : prog_.constraints)
      if (c.cmp != Cmp::EQ) ++n_slack;
    n_structural_ = col + n_slack;
    // rows with rhs' < 0 get negated; artificials are added where no slack
    // can serve as the initial basis
    std::vector<std::vector<Rational>> dense(m, std::vector<Rational>(n_structural_ + 1, Rational(0)));
    int slack_col = col;
    std::vector<int> slack_of(m, -1);
    std::vector<int> slack_sign(m, 0);
    for (int i = 0; i < m; ++i) {
      const auto& c = prog_.constraints[i];
      Rational rhs = c.rhs;
      for (const auto& [var, coef] : c.terms) {
        if (var < 0 || var >= prog_.num_vars) throw std::invalid_argument("lp: variable index out of range");
        dense[i][var_cols_[var].pos] += coef;
        if (var_cols_[var].neg >= 0) dense[i][var_cols_[var].neg] -= coef;
        rhs -= coef * var_cols_[var].shift;
      }
      if (c.cmp != Cmp::EQ) {
        slack_of[i] = slack_col++;
        slack_sign[i] = c.cmp == Cmp::LE ? 1 : -1;
        dense[i][slack_of[i]] = slack_sign[i];
      }
      dense[i][n_structural_] = rhs;
    }
    for (int i = 0; i < m; ++i) {
      if (dense[i][n_structural_] < 0) {
        for (auto& x : dense[i]) x = -x;
        slack_sign[i] = -slack_sign[i];
      }
    }
    int n_art = 0;
    std::vector<int> art_of(m, -1);
    for (int i = 0; i < m; ++i)
      if (slack_sign[i] != 1) art_of[i] = n_structural_ + n_art++;
    n_total_ = n_structural_ + n_art;
    rows_.assign(m, std::vector<Rational>(n_total_ + 1, Rational(0)));
    basis_.resize(m);
    artificial_.assign(n_total_, false);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n_structural_; ++j) rows_[i][j] = dense[i][j];
      rows_[i][n_total_] = dense[i][n_structural_];
      if (art_of[i] >= 0) {
        rows_[i][art_of[i]] = 1;
        artificial_[art_of[i]] = true;
        basis_[i] = art_of[i];
      } else {
        basis_[i] = slack_of[i];
      }
    }
  }

  // Bland: entering = lowest-index improving column, leaving = lowest ratio
  // then lowest basis index. Returns false on unboundedness.
  bool iterate(std::vector<Rational>& cost) {
    const int m = static_cast<int>(rows_.size());
    for (std::size_t iter = 0;; ++iter) {
      int enter = -1;
      for (int j = 0; j < n_total_; ++j) {
        if (cost[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (int i = 0; i < m; ++i) {
        if (rows_[i][enter] > 0) {
          Rational ratio = rows_[i][n_total_] / rows_[i][enter];
          if (leave < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
            leave = i;
            best = ratio;
          }
        }
      }
      if (leave < 0) return false;
      if (lp_debug_enabled())
        std::cerr << "lp pivot " << iter << ": enter col " << enter << ", leave row " << leave
                  << " (basis " << basis_[leave] << ")\n";
      pivot(leave, enter, cost);
    }
  }

  void pivot(int pr, int pc, std::vector<Rational>& cost) {
    auto& prow = rows_[pr];
    Rational inv = prow[pc];
    for (auto& x : prow) x /= inv;
    for (int i = 0; i < static_cast<int>(rows_.size()); ++i) {
      if (i == pr || rows_[i][pc] == 0) continue;
      Rational f = rows_[i][pc];
      for (int j = 0; j <= n_total_; ++j)
        if (prow[j] != 0) rows_[i][j] -= f * prow[j];
    }
    if (cost[pc] != 0) {
      Rational f = cost[pc];
      for (int j = 0; j <= n_total_; ++j)
        if (prow[j] != 0) cost[j] -= f * prow[j];
    }
    basis_[pr] = pc;
  }

  // reduced-cost row z_j - c_j for the current basis
  std::vector<Rational> price_out(const std::vector<Rational>& c_full) {
    std::vector<Rational> cost(n_total_ + 1, Rational(0));
    for (int j = 0; j < n_total_; ++j) cost[j] = -c_full[j];
    for (int i = 0; i < static_cast<int>(rows_.size()); ++i) {
      const Rational& cb = c_full[basis_[i]];
      if (cb == 0) continue;
      for (int j = 0; j <= n_total_; ++j)
        if (rows_[i][j] != 0) cost[j] += cb * rows_[i][j];
    }
    return cost;
  }

  bool phase1() {
    bool any_art = false;
    for (bool a : artificial_) any_art = any_art || a;
    if (any_art) {
      std::vector<Rational> c_full(n_total_ + 1, Rational(0));
      for (int j = 0; j < n_total_; ++j)
        if (artificial_[j]) c_full[j] = -1;
      auto cost = price_out(c_full);
      iterate(cost);  // bounded: objective <= 0
      Rational z = 0;
      for (int i = 0; i < static_cast<int>(rows_.size()); ++i)
        if (artificial_[basis_[i]]) z -= rows_[i][n_total_];
      if (z != 0) return false;
      drive_out_artificials();
    }
    return true;
  }

  void drive_out_artificials() {
    std::vector<Rational> dummy(n_total_ + 1, Rational(0));
    for (int i = static_cast<int>(rows_.size()) - 1; i >= 0; --i) {
      if (!artificial_[basis_[i]]) continue;
      int j = 0;
      for (; j < n_total_; ++j)
        if (!artificial_[j] && rows_[i][j] != 0) break;
      if (j < n_total_) {
        pivot(i, j, dummy);
      } else {
        rows_.erase(rows_.begin() + i);  // redundant 0 = 0 row
        basis_.erase(basis_.begin() + i);
      }
    }
  }

  bool phase2(const std::vector<Rational>& objective) {
    std::vector<Rational> c_full(n_total_ + 1, Rational(0));
    for (int j = 0; j < prog_.num_vars && j < static_cast<int>(objective.size()); ++j) {
      if (objective[j] == 0) continue;
      c_full[var_cols_[j].pos] += objective[j];
      if (var_cols_[j].neg >= 0) c_full[var_cols_[j].neg] -= objective[j];
    }
    auto cost = price_out(c_full);
    // artificial columns must never re-enter
    for (int j = 0; j < n_total_; ++j)
      if (artificial_[j] && cost[j] < 0) cost[j] = 0;
    const int m = static_cast<int>(rows_.size());
    for (std::size_t iter = 0;; ++iter) {
      int enter = -1;
      for (int j = 0; j < n_total_; ++j) {
        if (!artificial_[j] && cost[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (int i = 0; i < m; ++i) {
        if (rows_[i][enter] > 0) {
          Rational ratio = rows_[i][n_total_] / rows_[i][enter];
          if (leave < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
            leave = i;
            best = ratio;
          }
        }
      }
      if (leave < 0) return false;
      if (lp_debug_enabled())
        std::cerr << "lp pivot " << iter << ": enter col " << enter << ", leave row " << leave << "\n";
      pivot(leave, enter, cost);
    }
  }

  std::vector<Rational> extract() const {
    std::vector<Rational> col_val(n_total_, Rational(0));
    for (int i = 0; i < static_cast<int>(rows_.size()); ++i) col_val[basis_[i]] = rows_[i][n_total_];
    std::vector<Rational> x(prog_.num_vars, Rational(0));
    for (int j = 0; j < prog_.num_vars; ++j) {
      x[j] = col_val[var_cols_[j].pos] + var_cols_[j].shift;
      if (var_cols_[j].neg >= 0) x[j] -= col_val[var_cols_[j].neg];
    }
    return x;
  }
};

}  // namespace detail

inline LpSolution solve(const LinearProgram& p) {
  std::vector<Rational> obj = p.objective;
  obj.resize(p.num_vars, Rational(0));
  detail::Simplex s(p);
  return s.run(obj);
}

/// Lexicographic max: solve the primary, pin it at its optimum with an
/// equality constraint, then maximize the secondary.
inline LpSolution solve_lex(const LinearProgram& p) {
  if (!p.objective2) throw std::invalid_argument("solve_lex: program has no secondary objective");
  LpSolution first = solve(p);
  if (!first.optimal()) return first;
  LinearProgram stage2 = p;
  LinConstraint pin;
  for (int j = 0; j < p.num_vars && j < static_cast<int>(p.objective.size()); ++j)
    if (p.objective[j] != 0) pin.terms.emplace_back(j, p.objective[j]);
  pin.cmp = Cmp::EQ;
  pin.rhs = first.value;
  stage2.constraints.push_back(std::move(pin));
  stage2.objective = *p.objective2;
  LpSolution second = solve(stage2);
  if (!second.optimal()) return second;  // Unbounded secondary
  second.value2 = second.value;
  second.value = first.value;
  return second;
}

/// Exact feasibility re-check of an assignment against a program.
inline bool satisfies(const LinearProgram& p, const std::vector<Rational>& x) {
  if (static_cast<int>(x.size()) != p.num_vars) return false;
  for (int j = 0; j < p.num_vars; ++j)
    if (p.lower_bound[j] && x[j] < *p.lower_bound[j]) return false;
  for (const auto& c : p.constraints) {
    Rational lhs = 0;
    for (const auto& [var, coef] : c.terms) lhs += coef * x[var];
    if (c.cmp == Cmp::LE && lhs > c.rhs) return false;
    if (c.cmp == Cmp::GE && lhs < c.rhs) return false;
    if (c.cmp == Cmp::EQ && lhs != c.rhs) return false;
  }
  return true;
}

}  // namespace spikit
