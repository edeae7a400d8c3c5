#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tangle/formula.hpp"
#include "tangle/kripke.hpp"

namespace tangle {

enum class FiltrationMode { Standard, Refined };

const char* mode_name(FiltrationMode m);

/// Quotient of a finite transitive model by agreement on Φ (standard) or
/// agreement on Φ plus equal M(x) (refined).
struct FiltrationResult {
  FiltrationMode mode = FiltrationMode::Standard;
  std::vector<std::string> quotient_worlds;  // "|w|" named after the first member
  std::vector<WorldSet> classes;             // preimages, over source worlds
  std::vector<std::size_t> quotient_map;     // source world -> quotient world
  Relation r_lambda;
  Relation r_phi;
  Valuation quotient_val;  // atoms occurring free in Φ
  // truth[i] = extension in the source model of Φ's i-th formula
  std::vector<WorldSet> truth;

  std::size_t size() const { return quotient_worlds.size(); }
  KripkeModel phi_model() const;
  KripkeModel model_on(const Relation& r) const;
};

// Throws FrameError on a non-transitive model.
FiltrationResult filtrate(const KripkeModel& m, const ClosureSet& phi, FiltrationMode mode);

struct UntangleResult {
  bool reflexive_mode = false;
  Relation r_t;
  std::vector<WorldSet> phi_clusters;         // r_phi clusters over quotient worlds
  std::vector<bool> degenerate;               // per r_phi cluster
  std::vector<std::size_t> critical_point;    // source world per cluster
  std::vector<WorldSet> nucleus;              // per cluster, ⊆ cluster
  std::vector<std::size_t> cluster_of;        // quotient world -> cluster
};

// Throws FrameError if some cluster has no critical point.
UntangleResult untangle(const FiltrationResult& fr, const KripkeModel& m, const ClosureSet& phi,
                        bool reflexive_mode);

struct ReductionReport {
  bool holds = true;
  std::size_t checked = 0;
  std::optional<Formula> failing_formula;
  std::optional<std::size_t> failing_world;  // source world
  bool truth_at_source = false;
  std::string message;
};

// Every φ ∈ Φ is true on (W_Φ, r_t, h_Φ) at f(x) iff true at x in m.
ReductionReport verify_reduction(const FiltrationResult& fr, const UntangleResult& ut,
                                 const KripkeModel& m, const ClosureSet& phi);

struct ConditionReport {
  bool r1 = true, r2 = true, r3 = true, r4 = true;
  std::vector<std::string> violations;
  bool ok() const { return r1 && r2 && r3 && r4; }
};

// (r1)-(r4) for the given relation on W_Φ (normally r_phi).  (r4) covers
// Φ^t, diamond-shaped members, and the box dual: □ψ true at x and
// f(x) R f(y) imply ψ and □ψ true at y.
ConditionReport check_reduction_conditions(const FiltrationResult& fr, const Relation& r,
                                           const KripkeModel& m, const ClosureSet& phi);

/// Atomic types, maximal-cluster descriptions and class-defining formulas.
struct CharacteristicData {
  std::vector<Formula> at;                  // free atoms of Φ, then ◇⊤
  std::vector<std::uint64_t> type_of;       // τ(x) as a bitmask over `at`
  ClusterDecomposition clusters;
  std::vector<std::size_t> maximal;         // cluster ids of rank 1 (M)
  std::vector<std::vector<std::uint64_t>> delta;  // δC per maximal cluster, sorted
  std::vector<Formula> alpha;               // α(C) per maximal cluster
  std::vector<std::vector<std::size_t>> m_of;     // M(x): positions into `maximal`
  std::vector<Formula> gamma;               // γ_x per world
  std::vector<Formula> mu;                  // μ_x per world
  std::vector<Formula> phi_x;               // φ_x = γ_x ∧ μ_x per world

  bool chi_defines_types = true;        // χ(s) true at x iff s = τ(x)
  bool alpha_defines_maximal = true;    // on maximal worlds, x ∈ C iff α(C)
  bool cone_defines_inclusion = true;   // C ⊆ R(x) iff ◇□*α(C)
  bool alpha_p_defines_components = true;  // α(P) defines P within R(x)
  bool phi_x_defines_classes = true;    // φ_x true at y iff x ≈ y
  std::vector<std::string> failures;

  Formula chi(std::uint64_t s) const;
  // ◇□*α(C) for the k-th maximal cluster.
  Formula cone(std::size_t k) const;
};

CharacteristicData characteristic_formulas(const KripkeModel& m, const ClosureSet& phi);

// α(P) for a component P of R(x), given as source worlds.
Formula alpha_of_component(const CharacteristicData& cd, const WorldSet& component);

// ⋁ φ_x over representatives of the given quotient worlds; ⊥ for ∅.
Formula defining_formula(const CharacteristicData& cd, const FiltrationResult& fr,
                         const WorldSet& quotient_subset);

struct FrameSummary {
  bool serial = false;
  bool reflexive = false;
  bool sees_reflexive = false;  // every world sees a reflexive world
  std::size_t components = 0;
  std::size_t local_bound = 0;  // max components of any R(x)
};

struct PreservationReport {
  FrameSummary source, phi, untangled;
  bool path_components_equal = false;  // (W_Φ, r_phi) vs (W_Φ, r_t)
  // n ≤ 4 for which source, r_phi and r_t frames are all locally n-connected
  std::vector<std::size_t> locally_n_connected_for;
  std::vector<std::string> notes;
};

PreservationReport preservation_report(const FiltrationResult& fr, const UntangleResult& ut,
                                       const KripkeModel& m, const ClosureSet& phi);

FrameSummary summarize(const Relation& r);

}  // namespace tangle
