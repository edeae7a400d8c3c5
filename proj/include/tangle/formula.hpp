#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tangle/errors.hpp"

namespace tangle {

// Connectives of the full language with □, [d], ∀, ⟨t⟩, ⟨dt⟩ and μ.
// Derived connectives that have concrete syntax are kept as nodes;
// semantics gives them their abbreviated meaning.
enum class Op : std::uint8_t {
  Atom,
  Top,
  Bot,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Box,
  Dia,
  BoxD,
  DiaD,
  Forall,
  Exists,
  Tangle,
  TangleD,
  Mu,
  Nu,
};

const char* op_name(Op op);

/// Immutable formula handle.  Copies share structure; equality is
/// structural.  Tangle argument sets are deduplicated and sorted by
/// printed form, so equal sets compare equal regardless of input order.
class Formula {
 public:
  Op op() const noexcept { return node_->op; }
  // Atom name, or the variable bound by Mu / Nu.
  const std::string& name() const noexcept { return node_->name; }
  const std::vector<Formula>& children() const noexcept { return node_->kids; }
  const Formula& child(std::size_t i = 0) const { return node_->kids.at(i); }
  std::size_t hash() const noexcept { return node_->hash; }

  bool is(Op op) const noexcept { return node_->op == op; }
  bool is_binder() const noexcept { return op() == Op::Mu || op() == Op::Nu; }
  bool is_tangle() const noexcept { return op() == Op::Tangle || op() == Op::TangleD; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

  std::string str() const;

  static Formula make(Op op, std::string name, std::vector<Formula> kids);

 private:
  struct Node {
    Op op;
    std::string name;
    std::vector<Formula> kids;
    std::size_t hash;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Constructors.  mu/nu throw PositivityError when the body is not
// positive in the bound variable; tangle sets must be non-empty.
Formula atom(std::string name);
Formula top();
Formula bot();
Formula neg(Formula f);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula box(Formula f);
Formula dia(Formula f);
Formula box_d(Formula f);
Formula dia_d(Formula f);
Formula forall(Formula f);
Formula exists(Formula f);
Formula tangle_of(std::vector<Formula> members);
Formula tangle_d_of(std::vector<Formula> members);
Formula mu(std::string var, Formula body);
Formula nu(std::string var, Formula body);

// □*φ = φ ∧ □φ and ◇*φ = φ ∨ ◇φ.
Formula box_star(const Formula& f);
Formula dia_star(const Formula& f);

// Left-folded; the empty conjunction is ⊤, the empty disjunction ⊥.
Formula conj_all(const std::vector<Formula>& fs);
Formula disj_all(const std::vector<Formula>& fs);

bool positive_in(const Formula& f, std::string_view var);

// φ(ψ/q).  Throws CaptureError if a free atom of ψ would be bound at a
// replaced occurrence, PositivityError if a rebuilt binder is ill-formed.
Formula substitute(const Formula& phi, const Formula& psi, std::string_view var);

std::set<std::string> free_atoms(const Formula& f);
// Free atoms plus every name bound by a binder.
std::set<std::string> all_names(const Formula& f);

std::size_t modal_depth(const Formula& f);
std::size_t tangle_depth(const Formula& f);
std::size_t formula_size(const Formula& f);

// Generates `_g0, _g1, ...`, skipping names in the reserved set.
class FreshNames {
 public:
  explicit FreshNames(std::set<std::string> reserved) : reserved_(std::move(reserved)) {}
  std::string next();

 private:
  std::set<std::string> reserved_;
  std::size_t counter_ = 0;
};

Formula parse(std::string_view text);
std::string to_string(const Formula& f);

}  // namespace tangle

template <>
struct std::hash<tangle::Formula> {
  std::size_t operator()(const tangle::Formula& f) const noexcept { return f.hash(); }
};

namespace tangle {

/// Finite subformula-closed formula set, ordered by printed form.
class ClosureSet {
 public:
  ClosureSet() = default;

  const std::vector<Formula>& formulas() const noexcept { return formulas_; }
  std::size_t size() const noexcept { return formulas_.size(); }
  bool contains(const Formula& f) const { return index_.count(f) != 0; }
  // Position of f in formulas(); throws std::out_of_range if absent.
  std::size_t index_of(const Formula& f) const { return index_.at(f); }

  // Φ^t: members of the form ⟨t⟩Γ or ⟨dt⟩Γ.
  std::vector<Formula> tangle_members() const;
  // Φ^◇: members of the form ◇φ, ⟨d⟩φ, or ¬□¬φ / ¬[d]¬φ.
  std::vector<Formula> diamond_members() const;
  // Members of the form □φ or [d]φ.
  std::vector<Formula> box_members() const;
  std::set<std::string> atoms() const;

  friend ClosureSet subformula_closure(const std::vector<Formula>& roots);

 private:
  std::vector<Formula> formulas_;
  std::unordered_map<Formula, std::size_t> index_;
};

ClosureSet subformula_closure(const std::vector<Formula>& roots);

// The argument of a diamond-shaped formula (◇φ, ⟨d⟩φ, ¬□¬φ, ¬[d]¬φ), if any.
const Formula* diamond_argument(const Formula& f);

}  // namespace tangle
