#include "tangle/formula.hpp"

#include <algorithm>
#include <utility>

namespace tangle {

const char* op_name(Op op) {
  switch (op) {
    case Op::Atom: return "atom";
    case Op::Top: return "top";
    case Op::Bot: return "bot";
    case Op::Not: return "not";
    case Op::And: return "and";
    case Op::Or: return "or";
    case Op::Implies: return "implies";
    case Op::Iff: return "iff";
    case Op::Box: return "box";
    case Op::Dia: return "dia";
    case Op::BoxD: return "box_d";
    case Op::DiaD: return "dia_d";
    case Op::Forall: return "forall";
    case Op::Exists: return "exists";
    case Op::Tangle: return "tangle";
    case Op::TangleD: return "tangle_d";
    case Op::Mu: return "mu";
    case Op::Nu: return "nu";
  }
  return "?";
}

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Formula Formula::make(Op op, std::string name, std::vector<Formula> kids) {
  std::size_t h = mix(static_cast<std::size_t>(op) + 1, std::hash<std::string>{}(name));
  for (const auto& k : kids) h = mix(h, k.hash());
  return Formula(std::make_shared<const Node>(Node{op, std::move(name), std::move(kids), h}));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.op() != b.op() || a.name() != b.name()) return false;
  const auto& ka = a.children();
  const auto& kb = b.children();
  if (ka.size() != kb.size()) return false;
  for (std::size_t i = 0; i < ka.size(); ++i)
    if (ka[i] != kb[i]) return false;
  return true;
}

std::string Formula::str() const { return to_string(*this); }

Formula atom(std::string name) { return Formula::make(Op::Atom, std::move(name), {}); }
Formula top() { return Formula::make(Op::Top, "", {}); }
Formula bot() { return Formula::make(Op::Bot, "", {}); }
Formula neg(Formula f) { return Formula::make(Op::Not, "", {std::move(f)}); }
Formula conj(Formula a, Formula b) { return Formula::make(Op::And, "", {std::move(a), std::move(b)}); }
Formula disj(Formula a, Formula b) { return Formula::make(Op::Or, "", {std::move(a), std::move(b)}); }
Formula implies(Formula a, Formula b) {
  return Formula::make(Op::Implies, "", {std::move(a), std::move(b)});
}
Formula iff(Formula a, Formula b) { return Formula::make(Op::Iff, "", {std::move(a), std::move(b)}); }
Formula box(Formula f) { return Formula::make(Op::Box, "", {std::move(f)}); }
Formula dia(Formula f) { return Formula::make(Op::Dia, "", {std::move(f)}); }
Formula box_d(Formula f) { return Formula::make(Op::BoxD, "", {std::move(f)}); }
Formula dia_d(Formula f) { return Formula::make(Op::DiaD, "", {std::move(f)}); }
Formula forall(Formula f) { return Formula::make(Op::Forall, "", {std::move(f)}); }
Formula exists(Formula f) { return Formula::make(Op::Exists, "", {std::move(f)}); }

namespace {

Formula make_tangle(Op op, std::vector<Formula> members) {
  if (members.empty()) throw FormulaError("tangle set must be non-empty");
  std::vector<std::pair<std::string, Formula>> keyed;
  keyed.reserve(members.size());
  for (auto& m : members) keyed.emplace_back(to_string(m), std::move(m));
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Formula> out;
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    if (i > 0 && keyed[i].first == keyed[i - 1].first) continue;
    out.push_back(std::move(keyed[i].second));
  }
  return Formula::make(op, "", std::move(out));
}

Formula make_binder(Op op, std::string var, Formula body) {
  if (!positive_in(body, var))
    throw PositivityError(var + " not positive in " + to_string(body));
  return Formula::make(op, std::move(var), {std::move(body)});
}

}  // namespace

Formula tangle_of(std::vector<Formula> members) { return make_tangle(Op::Tangle, std::move(members)); }
Formula tangle_d_of(std::vector<Formula> members) {
  return make_tangle(Op::TangleD, std::move(members));
}
Formula mu(std::string var, Formula body) { return make_binder(Op::Mu, std::move(var), std::move(body)); }
Formula nu(std::string var, Formula body) { return make_binder(Op::Nu, std::move(var), std::move(body)); }

Formula box_star(const Formula& f) { return conj(f, box(f)); }
Formula dia_star(const Formula& f) { return disj(f, dia(f)); }

Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return top();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}

Formula disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return bot();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
  return acc;
}

namespace {

// True when every free occurrence of var has polarity `positive`
// relative to the current position.
bool polarity_ok(const Formula& f, std::string_view var, bool positive) {
  switch (f.op()) {
    case Op::Atom:
      return f.name() != var || positive;
    case Op::Top:
    case Op::Bot:
      return true;
    case Op::Not:
      return polarity_ok(f.child(), var, !positive);
    case Op::Implies:
      return polarity_ok(f.child(0), var, !positive) && polarity_ok(f.child(1), var, positive);
    case Op::Iff:
      // each side occurs both positively and negatively in the expansion
      for (const auto& k : f.children())
        if (!polarity_ok(k, var, positive) || !polarity_ok(k, var, !positive)) return false;
      return true;
    case Op::Mu:
    case Op::Nu:
      if (f.name() == var) return true;
      return polarity_ok(f.child(), var, positive);
    default:
      for (const auto& k : f.children())
        if (!polarity_ok(k, var, positive)) return false;
      return true;
  }
}

bool occurs_free(const Formula& f, std::string_view var) {
  if (f.is(Op::Atom)) return f.name() == var;
  if (f.is_binder() && f.name() == var) return false;
  for (const auto& k : f.children())
    if (occurs_free(k, var)) return true;
  return false;
}

Formula rebuild(const Formula& f, std::vector<Formula> kids) {
  switch (f.op()) {
    case Op::Tangle: return tangle_of(std::move(kids));
    case Op::TangleD: return tangle_d_of(std::move(kids));
    case Op::Mu: return mu(f.name(), std::move(kids[0]));
    case Op::Nu: return nu(f.name(), std::move(kids[0]));
    default: return Formula::make(f.op(), f.name(), std::move(kids));
  }
}

Formula subst_rec(const Formula& f, const Formula& psi, std::string_view var,
                  const std::set<std::string>& psi_free) {
  if (f.is(Op::Atom)) return f.name() == var ? psi : f;
  if (f.is_binder()) {
    if (f.name() == var || !occurs_free(f.child(), var)) return f;
    if (psi_free.count(f.name()))
      throw CaptureError(std::string("substitution for ") + std::string(var) + " would capture " +
                             f.name() + " under " + (f.is(Op::Mu) ? "mu " : "nu ") + f.name(),
                         f.name());
  }
  std::vector<Formula> kids;
  kids.reserve(f.children().size());
  for (const auto& k : f.children()) kids.push_back(subst_rec(k, psi, var, psi_free));
  return rebuild(f, std::move(kids));
}

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  if (f.is(Op::Atom)) {
    if (std::find(bound.begin(), bound.end(), f.name()) == bound.end()) out.insert(f.name());
    return;
  }
  if (f.is_binder()) {
    bound.push_back(f.name());
    collect_free(f.child(), bound, out);
    bound.pop_back();
    return;
  }
  for (const auto& k : f.children()) collect_free(k, bound, out);
}

void collect_all(const Formula& f, std::set<std::string>& out) {
  if (f.is(Op::Atom) || f.is_binder()) out.insert(f.name());
  for (const auto& k : f.children()) collect_all(k, out);
}

}  // namespace

bool positive_in(const Formula& f, std::string_view var) { return polarity_ok(f, var, true); }

Formula substitute(const Formula& phi, const Formula& psi, std::string_view var) {
  return subst_rec(phi, psi, var, free_atoms(psi));
}

std::set<std::string> free_atoms(const Formula& f) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> all_names(const Formula& f) {
  std::set<std::string> out;
  collect_all(f, out);
  return out;
}

std::size_t modal_depth(const Formula& f) {
  std::size_t d = 0;
  for (const auto& k : f.children()) d = std::max(d, modal_depth(k));
  switch (f.op()) {
    case Op::Box:
    case Op::Dia:
    case Op::BoxD:
    case Op::DiaD:
    case Op::Forall:
    case Op::Exists:
    case Op::Tangle:
    case Op::TangleD:
      return d + 1;
    default:
      return d;
  }
}

std::size_t tangle_depth(const Formula& f) {
  std::size_t d = 0;
  for (const auto& k : f.children()) d = std::max(d, tangle_depth(k));
  return f.is_tangle() ? d + 1 : d;
}

std::size_t formula_size(const Formula& f) {
  std::size_t n = 1;
  for (const auto& k : f.children()) n += formula_size(k);
  return n;
}

std::string FreshNames::next() {
  for (;;) {
    std::string cand = "_g" + std::to_string(counter_++);
    if (reserved_.insert(cand).second) return cand;
  }
}

std::vector<Formula> ClosureSet::tangle_members() const {
  std::vector<Formula> out;
  for (const auto& f : formulas_)
    if (f.is_tangle()) out.push_back(f);
  return out;
}

const Formula* diamond_argument(const Formula& f) {
  if (f.is(Op::Dia) || f.is(Op::DiaD)) return &f.child();
  if (f.is(Op::Not) && (f.child().is(Op::Box) || f.child().is(Op::BoxD)) &&
      f.child().child().is(Op::Not))
    return &f.child().child().child();
  return nullptr;
}

std::vector<Formula> ClosureSet::diamond_members() const {
  std::vector<Formula> out;
  for (const auto& f : formulas_)
    if (diamond_argument(f)) out.push_back(f);
  return out;
}

std::vector<Formula> ClosureSet::box_members() const {
  std::vector<Formula> out;
  for (const auto& f : formulas_)
    if (f.is(Op::Box) || f.is(Op::BoxD)) out.push_back(f);
  return out;
}

std::set<std::string> ClosureSet::atoms() const {
  std::set<std::string> out;
  for (const auto& f : formulas_) {
    auto a = free_atoms(f);
    out.insert(a.begin(), a.end());
  }
  return out;
}

ClosureSet subformula_closure(const std::vector<Formula>& roots) {
  std::unordered_map<Formula, std::size_t> seen;
  std::vector<Formula> stack(roots.begin(), roots.end());
  std::vector<Formula> all;
  while (!stack.empty()) {
    Formula f = std::move(stack.back());
    stack.pop_back();
    if (!seen.emplace(f, 0).second) continue;
    all.push_back(f);
    for (const auto& k : f.children()) stack.push_back(k);
  }
  std::vector<std::pair<std::string, Formula>> keyed;
  for (auto& f : all) keyed.emplace_back(to_string(f), std::move(f));
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  ClosureSet cs;
  for (auto& [key, f] : keyed) {
    cs.index_.emplace(f, cs.formulas_.size());
    cs.formulas_.push_back(std::move(f));
  }
  return cs;
}

}  // namespace tangle
