#include "tangle/translate.hpp"

#include <functional>
#include <string>
#include <vector>

namespace tangle {

namespace {

// Rebuild f with children mapped by `rec`, keeping the connective.
Formula map_children(const Formula& f, const std::function<Formula(const Formula&)>& rec) {
  std::vector<Formula> kids;
  kids.reserve(f.children().size());
  for (const auto& k : f.children()) kids.push_back(rec(k));
  switch (f.op()) {
    case Op::Tangle: return tangle_of(std::move(kids));
    case Op::TangleD: return tangle_d_of(std::move(kids));
    case Op::Mu: return mu(f.name(), std::move(kids[0]));
    case Op::Nu: return nu(f.name(), std::move(kids[0]));
    default: return Formula::make(f.op(), f.name(), std::move(kids));
  }
}

class MuTranslation {
 public:
  explicit MuTranslation(const Formula& root) : fresh_(all_names(root)) {}

  Formula run(const Formula& f) {
    if (!f.is_tangle()) return map_children(f, [this](const Formula& k) { return run(k); });
    std::string q = fresh_.next();
    Formula qa = atom(q);
    std::vector<Formula> conjuncts;
    for (const auto& d : f.children()) {
      Formula inner = conj(run(d), qa);
      conjuncts.push_back(f.is(Op::Tangle) ? dia(inner) : dia_d(inner));
    }
    return nu(q, conj_all(conjuncts));
  }

 private:
  FreshNames fresh_;
};

Formula d_rec(const Formula& f) {
  switch (f.op()) {
    case Op::Box: {
      Formula a = d_rec(f.child());
      return conj(a, box_d(a));
    }
    case Op::Dia: {
      Formula a = d_rec(f.child());
      return disj(a, dia_d(a));
    }
    case Op::Tangle: {
      std::vector<Formula> ms;
      for (const auto& d : f.children()) ms.push_back(d_rec(d));
      Formula all = conj_all(ms);
      return disj(disj(all, dia_d(all)), tangle_d_of(ms));
    }
    default:
      return map_children(f, d_rec);
  }
}

class StarTranslation {
 public:
  explicit StarTranslation(const Formula& root) : fresh_(all_names(root)) {}

  Formula run(const Formula& f) {
    switch (f.op()) {
      case Op::Box: {
        std::string q = fresh_.next();
        Formula body = run(f.child());
        return nu(q, conj(body, box(atom(q))));
      }
      case Op::Dia: {
        std::string q = fresh_.next();
        Formula body = run(f.child());
        return neg(nu(q, conj(neg(body), box(atom(q)))));
      }
      case Op::BoxD:
      case Op::DiaD:
      case Op::Forall:
      case Op::Exists:
      case Op::Tangle:
      case Op::TangleD:
        throw FragmentError(std::string("star translation does not accept ") + op_name(f.op()) +
                            " in " + to_string(f));
      default:
        return map_children(f, [this](const Formula& k) { return run(k); });
    }
  }

 private:
  FreshNames fresh_;
};

}  // namespace

Formula to_mu(const Formula& f) { return MuTranslation(f).run(f); }

Formula to_d(const Formula& f) { return d_rec(f); }

Formula star(const Formula& f) { return StarTranslation(f).run(f); }

}  // namespace tangle
