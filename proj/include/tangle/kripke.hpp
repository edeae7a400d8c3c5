#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tangle/formula.hpp"
#include "tangle/semantics.hpp"
#include "tangle/world_set.hpp"

namespace tangle {

/// Finite Kripke frame.  Worlds are opaque ids kept in construction
/// order; the relation is indexed by that order.
class Frame {
 public:
  Frame(std::vector<std::string> worlds, Relation rel);
  static Frame from_pairs(std::vector<std::string> worlds,
                          const std::vector<std::pair<std::string, std::string>>& pairs);
  // Worlds named "w0".."w{n-1}".
  static Frame anonymous(Relation rel);

  std::size_t size() const noexcept { return worlds_.size(); }
  const std::vector<std::string>& worlds() const noexcept { return worlds_; }
  const std::string& world(std::size_t i) const { return worlds_.at(i); }
  std::size_t index_of(const std::string& id) const;
  const Relation& rel() const noexcept { return rel_; }
  const WorldSet& successors(std::size_t i) const { return rel_.at(i); }
  bool related(std::size_t i, std::size_t j) const { return rel_[i].test(j); }

 private:
  std::vector<std::string> worlds_;
  Relation rel_;
};

struct KripkeModel {
  Frame frame;
  Valuation val;

  // Extension of an atom, empty if it has no entry.
  WorldSet value(const std::string& atom) const;
};

struct RelationProperties {
  bool reflexive;
  bool transitive;
  bool serial;
};

bool is_reflexive(const Relation& r);
bool is_transitive(const Relation& r);
bool is_serial(const Relation& r);
RelationProperties relation_properties(const Frame& f);

Relation transitive_closure(const Relation& r);
Relation reflexive_closure(const Relation& r);
Relation converse(const Relation& r);

struct FrameClosures {
  Frame transitive_closure;
  Frame refl_trans_closure;
};
FrameClosures closures(const Frame& f);

/// Clusters of a transitive frame, numbered by least member.
struct ClusterDecomposition {
  std::vector<WorldSet> clusters;
  std::vector<std::size_t> cluster_of;
  std::vector<bool> degenerate;
  // strictly_above[c] = clusters d != c with some (all) x in c seeing d.
  std::vector<std::vector<std::size_t>> strictly_above;
  std::vector<std::size_t> rank;

  std::vector<std::size_t> maximal() const;
};

// Throws FrameError for a non-transitive relation.
ClusterDecomposition cluster_decomposition(const Relation& r);
inline ClusterDecomposition cluster_decomposition(const Frame& f) { return cluster_decomposition(f.rel()); }

// Path components of the subframe on `within` (paths stay inside it),
// each as a set, ordered by least member.
std::vector<WorldSet> path_components(const Relation& r, const WorldSet& within);
std::vector<WorldSet> path_components(const Relation& r);
inline std::vector<WorldSet> path_components(const Frame& f) { return path_components(f.rel()); }
bool is_connected(const Relation& r);
bool locally_n_connected(const Relation& r, std::size_t n);
inline bool locally_n_connected(const Frame& f, std::size_t n) { return locally_n_connected(f.rel(), n); }
// Largest number of path components of any R(x).
std::size_t local_component_bound(const Relation& r);

/// □/[d] as "all successors", ◇/⟨d⟩ as "some successor", tangles by
/// the cluster criterion.  Tangles require a transitive relation.
class KripkeSemantics : public Semantics {
 public:
  explicit KripkeSemantics(const Relation& r);
  std::size_t size() const override { return rel_.size(); }
  WorldSet box(const WorldSet& s) const override;
  WorldSet dia(const WorldSet& s) const override;
  WorldSet box_d(const WorldSet& s) const override { return box(s); }
  WorldSet dia_d(const WorldSet& s) const override { return dia(s); }
  WorldSet tangle(const std::vector<WorldSet>& members) const override;
  WorldSet tangle_d(const std::vector<WorldSet>& members) const override { return tangle(members); }

 private:
  const Relation& rel_;
  bool transitive_;
};

WorldSet model_check(const KripkeModel& m, const Formula& f, EvalStats* stats = nullptr);
// Evaluates over an arbitrary relation on the model's worlds.
WorldSet model_check(const Relation& r, const Valuation& val, const Formula& f,
                     EvalStats* stats = nullptr);

// Independent check of ⟨t⟩Δ at x by searching lassos (a simple path
// from x closing into a cycle).  Transitive frames only.
bool tangle_oracle(const KripkeModel& m, std::size_t x, const std::vector<Formula>& delta);

// Restriction to R*(w), worlds in original order.
KripkeModel generated_submodel(const KripkeModel& m, std::size_t w);

std::string to_dot(const Frame& f, const std::string& graph_name = "frame");
std::string to_dot(const KripkeModel& m, const std::string& graph_name = "model");

}  // namespace tangle
