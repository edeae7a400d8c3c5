#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tangle/formula.hpp"
#include "tangle/kripke.hpp"

namespace tangle {

// Schema ids: K, 4, T, D, Fix, Ind, 4t, Tt, U, C, and G1, G2, ... .
// Argument conventions:
//   K [φ, ψ]; 4, T, U, C [φ]; D [];
//   Fix [γ, Γ...] with γ ∈ Γ (Γ = {γ} when only γ is given);
//   Ind [φ, Γ...]; 4t, Tt [Γ...]; Gn [φ_0, ..., φ_n].
struct SchemaInstance {
  std::string schema;
  std::vector<Formula> args;
  Formula formula;
};

// Throws ArityError on an argument-count mismatch and FormatError on an
// unknown schema id.
SchemaInstance instantiate(std::string_view schema, const std::vector<Formula>& args);

// Instance over fresh-looking atoms p, q, ... (p0..pn for Gn).
SchemaInstance default_instance(std::string_view schema);

// Human-readable argument list, e.g. "γ Γ..." for Fix.
std::string schema_usage(std::string_view schema);

// "K", "4", ..., "C" followed by "G1", "G2".
std::vector<std::string> schema_ids();

// Q_i for the Gn schema.
Formula q_formula(const std::vector<Formula>& phis, std::size_t i);

struct FrameConditions {
  bool transitive = true;
  bool serial = false;
  bool reflexive = false;
  bool connected = false;
  std::size_t locally_connected = 0;  // n of G_n, 0 for none
};

/// A Hilbert system described by the frame conditions its axioms
/// correspond to and the language it is stated in.
struct LogicProfile {
  std::string name;
  FrameConditions conditions;
  bool tangle = false;
  bool mu = false;
  bool universal = false;
  // Schema ids of the system, e.g. {K, 4, D, G1, Fix, Ind, U, C}.
  std::vector<std::string> schemas() const;
};

// Accepts K4, KD4, S4 optionally followed by G_n or Gn, then t, mu or μ,
// then .U or .UC.  Throws FormatError otherwise.
LogicProfile parse_profile(std::string_view name);

// Names of the conditions r fails, empty when it meets them all.
std::vector<std::string> condition_violations(const Relation& r, const FrameConditions& c);
inline bool frame_satisfies(const Relation& r, const FrameConditions& c) {
  return condition_violations(r, c).empty();
}

// Throws FragmentError if f uses ∀/∃ without U, tangles without t, or
// fixpoints without mu.
void require_fragment(const Formula& f, const LogicProfile& p);

struct Validity {
  bool valid = true;
  std::optional<Valuation> witness;  // first falsifying valuation
  std::optional<std::size_t> failing_world;
  std::uint64_t valuations_checked = 0;
};

// Exhaustive over valuations of the free atoms of f, in increasing order
// of the mask whose bit a·|W| + w says atom a (sorted) holds at w.
// Throws BudgetExceeded when there are more than `budget` valuations.
Validity frame_validates(const Frame& frame, const Formula& f, std::uint64_t budget = 1u << 20);

// One representative per isomorphism class of relations on n ≤ 5
// worlds passing `keep`: the one whose adjacency mask (pair (i,j) at bit
// i·n+j) is least among all its relabellings.
std::vector<Relation> enumerate_frames(std::size_t n,
                                       const std::function<bool(const Relation&)>& keep);
std::vector<Relation> enumerate_frames(std::size_t n, const FrameConditions& c);

struct SatOutcome {
  std::optional<KripkeModel> model;
  std::optional<std::size_t> world;  // least world where the formula holds
  std::size_t largest_size_tried = 0;
};

// Smallest frame size first; among models of that size the witness with
// the least mask, where relation bits (pair (i,j) at i·n+j) come below
// valuation bits (atom-major over sorted free atoms, world-minor).
// Throws BudgetExceeded if the solver gives up on some size.
SatOutcome bounded_sat(const Formula& f, const LogicProfile& profile, std::size_t max_worlds,
                       std::int64_t conflict_budget = 200000);

// Worlds a0..am, b0..b(m+1), interleaved; R is the reflexive closure of
// a_n → b_n and a_n → b_{n+1}.
KripkeModel figure3_model(std::size_t m);

struct LabelledFormula {
  std::string label;
  Formula formula;
};

// Σ1(i), Σ2(i,j) for i<j, Σ3, Σ4(i) with indices ≤ max_index.
std::vector<LabelledFormula> sigma_formulas(std::size_t max_index);

/// A small frame on which an axiom fails once its frame condition is
/// dropped, together with the instance that fails there.
struct FailingFrame {
  std::string schema;
  std::string name;
  Frame frame;
  Formula instance;
};

std::vector<FailingFrame> failing_frames();

}  // namespace tangle
