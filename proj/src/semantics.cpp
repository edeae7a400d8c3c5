#include "tangle/semantics.hpp"

#include <algorithm>
#include <utility>

namespace tangle {

namespace {

class Evaluator {
 public:
  Evaluator(const Semantics& sem, const Valuation& val, EvalStats* stats)
      : sem_(sem), val_(val), stats_(stats), n_(sem.size()) {}

  WorldSet eval(const Formula& f) {
    switch (f.op()) {
      case Op::Atom: return lookup(f.name());
      case Op::Top: return full_set(n_);
      case Op::Bot: return empty_set(n_);
      case Op::Not: return ~eval(f.child());
      case Op::And: return eval(f.child(0)) & eval(f.child(1));
      case Op::Or: return eval(f.child(0)) | eval(f.child(1));
      case Op::Implies: return ~eval(f.child(0)) | eval(f.child(1));
      case Op::Iff: {
        WorldSet a = eval(f.child(0));
        WorldSet b = eval(f.child(1));
        return ~(a ^ b);
      }
      case Op::Box: return sem_.box(eval(f.child()));
      case Op::Dia: return sem_.dia(eval(f.child()));
      case Op::BoxD: return sem_.box_d(eval(f.child()));
      case Op::DiaD: return sem_.dia_d(eval(f.child()));
      case Op::Forall: {
        WorldSet s = eval(f.child());
        return s.all() ? full_set(n_) : empty_set(n_);
      }
      case Op::Exists: {
        WorldSet s = eval(f.child());
        return s.any() ? full_set(n_) : empty_set(n_);
      }
      case Op::Tangle:
      case Op::TangleD: {
        std::vector<WorldSet> ms;
        ms.reserve(f.children().size());
        for (const auto& m : f.children()) ms.push_back(eval(m));
        return f.is(Op::Tangle) ? sem_.tangle(ms) : sem_.tangle_d(ms);
      }
      case Op::Mu: return fixpoint(f, empty_set(n_));
      case Op::Nu: return fixpoint(f, full_set(n_));
    }
    return empty_set(n_);
  }

 private:
  WorldSet lookup(const std::string& name) const {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it)
      if (it->first == name) return it->second;
    auto it = val_.find(name);
    if (it == val_.end()) return empty_set(n_);
    return it->second;
  }

  // Monotone iteration from the bottom (μ) or top (ν) element; on a
  // finite carrier it stabilises after at most n+1 steps.
  WorldSet fixpoint(const Formula& f, WorldSet start) {
    env_.emplace_back(f.name(), std::move(start));
    std::size_t steps = 0;
    for (;;) {
      WorldSet next = eval(f.child());
      ++steps;
      if (next == env_.back().second) break;
      env_.back().second = std::move(next);
    }
    WorldSet out = std::move(env_.back().second);
    env_.pop_back();
    if (stats_) stats_->max_fixpoint_iterations = std::max(stats_->max_fixpoint_iterations, steps);
    return out;
  }

  const Semantics& sem_;
  const Valuation& val_;
  EvalStats* stats_;
  std::size_t n_;
  std::vector<std::pair<std::string, WorldSet>> env_;
};

}  // namespace

WorldSet evaluate(const Semantics& sem, const Valuation& val, const Formula& f, EvalStats* stats) {
  return Evaluator(sem, val, stats).eval(f);
}

}  // namespace tangle
