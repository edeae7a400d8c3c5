#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace tangle::sat {

enum class Result { Sat, Unsat, Unknown };

/// Small CDCL solver: two watched literals, first-UIP learning, VSIDS
/// branching with phase saving, Luby restarts and solving under
/// assumptions.  Literals use the DIMACS convention (±var, var ≥ 1).
class Solver {
 public:
  int new_var();
  int num_vars() const { return static_cast<int>(assigns_.size()); }
  // False once the clause set is known to be unsatisfiable at level 0.
  bool add_clause(std::vector<int> lits);
  // conflict_budget < 0 means unlimited; Unknown when it runs out.
  Result solve(const std::vector<int>& assumptions = {}, std::int64_t conflict_budget = -1);
  // Value of `var` in the last satisfying assignment.
  bool model_value(int var) const { return model_.at(static_cast<std::size_t>(var - 1)); }
  std::int64_t conflicts() const { return total_conflicts_; }

 private:
  using Lit = int;  // 2*v + sign, v 0-based
  static Lit to_lit(int d) { return d > 0 ? 2 * (d - 1) : 2 * (-d - 1) + 1; }
  static int var_of(Lit l) { return l >> 1; }
  static Lit negate(Lit l) { return l ^ 1; }
  // 1 true, 0 false, -1 unassigned
  int value(Lit l) const {
    int a = assigns_[static_cast<std::size_t>(var_of(l))];
    return a < 0 ? -1 : (a ^ (l & 1));
  }

  struct Clause {
    std::vector<Lit> lits;
  };

  void enqueue(Lit l, int reason);
  int propagate();  // conflicting clause index or -1
  void analyze(int confl, std::vector<Lit>& learnt, int& back_level);
  void cancel_until(int level);
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }
  Lit pick_branch();
  void bump(int v);
  void heap_insert(int v);
  void heap_up(std::size_t i);
  void heap_down(std::size_t i);
  int heap_pop();
  bool heap_less(int a, int b) const { return activity_[a] > activity_[b]; }
  int attach(std::vector<Lit> lits);

  std::vector<Clause> clauses_;
  std::vector<std::vector<int>> watches_;  // by literal: clauses watching it
  std::vector<int> assigns_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<bool> phase_;
  std::vector<char> seen_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<double> activity_;
  double var_inc_ = 1.0;
  std::vector<int> heap_;
  std::vector<int> heap_pos_;  // -1 when absent
  std::vector<bool> model_;
  bool ok_ = true;
  std::int64_t total_conflicts_ = 0;
};

/// Tseitin gate builder over a Solver with structural hashing.
class Circuit {
 public:
  explicit Circuit(Solver& s);
  int true_lit() const { return true_; }
  int false_lit() const { return -true_; }
  int constant(bool b) const { return b ? true_ : -true_; }
  int var() { return solver_.new_var(); }
  int all(std::vector<int> lits);
  int any(std::vector<int> lits);
  int both(int a, int b) { return all({a, b}); }
  int either(int a, int b) { return any({a, b}); }
  int implies(int a, int b) { return any({-a, b}); }
  int equal(int a, int b) { return both(implies(a, b), implies(b, a)); }
  void require(int lit) { solver_.add_clause({lit}); }
  Solver& solver() { return solver_; }

 private:
  Solver& solver_;
  int true_;
  std::map<std::vector<int>, int> and_gates_;
};

}  // namespace tangle::sat
