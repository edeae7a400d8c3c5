#include "tangle/sat.hpp"

#include <algorithm>
#include <cstdlib>

namespace tangle::sat {

namespace {

double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  double r = 1;
  for (int i = 0; i < seq; ++i) r *= y;
  return r;
}

}  // namespace

int Solver::new_var() {
  int v = num_vars();
  assigns_.push_back(-1);
  level_.push_back(0);
  reason_.push_back(-1);
  phase_.push_back(false);
  seen_.push_back(0);
  activity_.push_back(0.0);
  heap_pos_.push_back(-1);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_insert(v);
  return v + 1;
}

int Solver::attach(std::vector<Lit> lits) {
  int idx = static_cast<int>(clauses_.size());
  watches_[static_cast<std::size_t>(lits[0])].push_back(idx);
  watches_[static_cast<std::size_t>(lits[1])].push_back(idx);
  clauses_.push_back({std::move(lits)});
  return idx;
}

bool Solver::add_clause(std::vector<int> dimacs) {
  if (!ok_) return false;
  cancel_until(0);
  std::vector<Lit> lits;
  for (int d : dimacs) lits.push_back(to_lit(d));
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  std::vector<Lit> kept;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i + 1 < lits.size() && lits[i + 1] == negate(lits[i])) return true;  // tautology
    int v = value(lits[i]);
    if (v == 1) return true;
    if (v == -1) kept.push_back(lits[i]);
  }
  if (kept.empty()) return ok_ = false;
  if (kept.size() == 1) {
    enqueue(kept[0], -1);
    if (propagate() >= 0) ok_ = false;
    return ok_;
  }
  attach(std::move(kept));
  return true;
}

void Solver::enqueue(Lit l, int reason) {
  auto v = static_cast<std::size_t>(var_of(l));
  assigns_[v] = (l & 1) ? 0 : 1;
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(l);
}

int Solver::propagate() {
  while (qhead_ < trail_.size()) {
    Lit p = trail_[qhead_++];
    Lit falsified = negate(p);
    auto& ws = watches_[static_cast<std::size_t>(falsified)];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      int ci = ws[i++];
      auto& c = clauses_[static_cast<std::size_t>(ci)].lits;
      if (c[0] == falsified) std::swap(c[0], c[1]);
      if (value(c[0]) == 1) {
        ws[j++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (value(c[k]) != 0) {
          std::swap(c[1], c[k]);
          watches_[static_cast<std::size_t>(c[1])].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = ci;
      if (value(c[0]) == 0) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        return ci;
      }
      enqueue(c[0], ci);
    }
    ws.resize(j);
  }
  return -1;
}

void Solver::analyze(int confl, std::vector<Lit>& learnt, int& back_level) {
  learnt.assign(1, 0);
  int path = 0;
  Lit p = -1;
  std::size_t index = trail_.size();
  do {
    const auto& c = clauses_[static_cast<std::size_t>(confl)].lits;
    for (std::size_t k = (p == -1 ? 0 : 1); k < c.size(); ++k) {
      Lit q = c[k];
      auto v = static_cast<std::size_t>(var_of(q));
      if (!seen_[v] && level_[v] > 0) {
        bump(var_of(q));
        seen_[v] = 1;
        if (level_[v] >= decision_level())
          ++path;
        else
          learnt.push_back(q);
      }
    }
    while (!seen_[static_cast<std::size_t>(var_of(trail_[--index]))]) {
    }
    p = trail_[index];
    confl = reason_[static_cast<std::size_t>(var_of(p))];
    seen_[static_cast<std::size_t>(var_of(p))] = 0;
    --path;
  } while (path > 0);
  learnt[0] = negate(p);

  back_level = 0;
  std::size_t max_i = 1;
  for (std::size_t k = 1; k < learnt.size(); ++k) {
    int l = level_[static_cast<std::size_t>(var_of(learnt[k]))];
    if (l > back_level) {
      back_level = l;
      max_i = k;
    }
  }
  if (learnt.size() > 1) std::swap(learnt[1], learnt[max_i]);
  for (Lit l : learnt) seen_[static_cast<std::size_t>(var_of(l))] = 0;
}

void Solver::cancel_until(int level) {
  if (decision_level() <= level) return;
  for (std::size_t k = trail_.size(); k > trail_lim_[static_cast<std::size_t>(level)]; --k) {
    auto v = static_cast<std::size_t>(var_of(trail_[k - 1]));
    phase_[v] = assigns_[v] == 1;
    assigns_[v] = -1;
    reason_[v] = -1;
    if (heap_pos_[v] < 0) heap_insert(static_cast<int>(v));
  }
  trail_.resize(trail_lim_[static_cast<std::size_t>(level)]);
  trail_lim_.resize(static_cast<std::size_t>(level));
  qhead_ = trail_.size();
}

void Solver::bump(int v) {
  auto i = static_cast<std::size_t>(v);
  activity_[i] += var_inc_;
  if (activity_[i] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[i] >= 0) heap_up(static_cast<std::size_t>(heap_pos_[i]));
}

void Solver::heap_insert(int v) {
  heap_pos_[static_cast<std::size_t>(v)] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

void Solver::heap_up(std::size_t i) {
  int v = heap_[i];
  while (i > 0) {
    std::size_t parent = (i - 1) / 2;
    if (!heap_less(v, heap_[parent])) break;
    heap_[i] = heap_[parent];
    heap_pos_[static_cast<std::size_t>(heap_[i])] = static_cast<int>(i);
    i = parent;
  }
  heap_[i] = v;
  heap_pos_[static_cast<std::size_t>(v)] = static_cast<int>(i);
}

void Solver::heap_down(std::size_t i) {
  int v = heap_[i];
  for (;;) {
    std::size_t child = 2 * i + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size() && heap_less(heap_[child + 1], heap_[child])) ++child;
    if (!heap_less(heap_[child], v)) break;
    heap_[i] = heap_[child];
    heap_pos_[static_cast<std::size_t>(heap_[i])] = static_cast<int>(i);
    i = child;
  }
  heap_[i] = v;
  heap_pos_[static_cast<std::size_t>(v)] = static_cast<int>(i);
}

int Solver::heap_pop() {
  int top = heap_.front();
  heap_pos_[static_cast<std::size_t>(top)] = -1;
  int last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_pos_[static_cast<std::size_t>(last)] = 0;
    heap_down(0);
  }
  return top;
}

Solver::Lit Solver::pick_branch() {
  while (!heap_.empty()) {
    int v = heap_pop();
    if (assigns_[static_cast<std::size_t>(v)] < 0) return 2 * v + (phase_[static_cast<std::size_t>(v)] ? 0 : 1);
  }
  return -1;
}

Result Solver::solve(const std::vector<int>& assumptions, std::int64_t conflict_budget) {
  if (!ok_) return Result::Unsat;
  cancel_until(0);
  if (propagate() >= 0) {
    ok_ = false;
    return Result::Unsat;
  }
  std::vector<Lit> assume;
  for (int d : assumptions) assume.push_back(to_lit(d));

  std::int64_t conflicts = 0;
  int restart_round = 0;
  std::int64_t restart_limit = static_cast<std::int64_t>(luby(2, restart_round) * 64);
  std::int64_t since_restart = 0;
  std::vector<Lit> learnt;
  for (;;) {
    int confl = propagate();
    if (confl >= 0) {
      ++conflicts;
      ++total_conflicts_;
      ++since_restart;
      if (decision_level() == 0) {
        ok_ = false;
        return Result::Unsat;
      }
      int back = 0;
      analyze(confl, learnt, back);
      cancel_until(back);
      if (learnt.size() == 1) {
        enqueue(learnt[0], -1);
      } else {
        int ci = attach(learnt);
        enqueue(learnt[0], ci);
      }
      var_inc_ /= 0.95;
      continue;
    }
    if (conflict_budget >= 0 && conflicts > conflict_budget) {
      cancel_until(0);
      return Result::Unknown;
    }
    if (since_restart >= restart_limit) {
      since_restart = 0;
      ++restart_round;
      restart_limit = static_cast<std::int64_t>(luby(2, restart_round) * 64);
      cancel_until(0);
      continue;
    }
    Lit next = -1;
    while (static_cast<std::size_t>(decision_level()) < assume.size()) {
      Lit a = assume[static_cast<std::size_t>(decision_level())];
      int v = value(a);
      if (v == 1) {
        trail_lim_.push_back(trail_.size());  // dummy level
      } else if (v == 0) {
        cancel_until(0);
        return Result::Unsat;
      } else {
        next = a;
        break;
      }
    }
    if (next == -1) {
      next = pick_branch();
      if (next == -1) {
        model_.assign(assigns_.size(), false);
        for (std::size_t v = 0; v < assigns_.size(); ++v) model_[v] = assigns_[v] == 1;
        cancel_until(0);
        return Result::Sat;
      }
    }
    trail_lim_.push_back(trail_.size());
    enqueue(next, -1);
  }
}

Circuit::Circuit(Solver& s) : solver_(s) {
  true_ = solver_.new_var();
  solver_.add_clause({true_});
}

int Circuit::all(std::vector<int> lits) {
  std::vector<int> kept;
  for (int l : lits) {
    if (l == true_) continue;
    if (l == -true_) return -true_;
    kept.push_back(l);
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  for (std::size_t i = 0; i + 1 < kept.size(); ++i)
    if (std::binary_search(kept.begin(), kept.end(), -kept[i])) return -true_;
  if (kept.empty()) return true_;
  if (kept.size() == 1) return kept[0];
  auto it = and_gates_.find(kept);
  if (it != and_gates_.end()) return it->second;
  int g = solver_.new_var();
  std::vector<int> big{g};
  for (int l : kept) {
    solver_.add_clause({-g, l});
    big.push_back(-l);
  }
  solver_.add_clause(big);
  and_gates_.emplace(std::move(kept), g);
  return g;
}

int Circuit::any(std::vector<int> lits) {
  for (auto& l : lits) l = -l;
  return -all(std::move(lits));
}

}  // namespace tangle::sat
