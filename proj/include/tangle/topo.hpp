#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tangle/kripke.hpp"
#include "tangle/semantics.hpp"
#include "tangle/world_set.hpp"

namespace tangle {

/// Finite topological space with an explicit family of opens.  The
/// family is validated on construction and stored sorted and deduplicated.
class FiniteSpace {
 public:
  FiniteSpace(std::vector<std::string> points, std::vector<WorldSet> opens);
  static FiniteSpace from_ids(std::vector<std::string> points,
                              const std::vector<std::vector<std::string>>& opens);

  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<std::string>& points() const noexcept { return points_; }
  const std::string& point(std::size_t i) const { return points_.at(i); }
  std::size_t index_of(const std::string& id) const;
  const std::vector<WorldSet>& opens() const noexcept { return opens_; }
  bool is_open(const WorldSet& s) const;
  // Smallest open containing x.
  const WorldSet& neighbourhood(std::size_t x) const { return nbhd_.at(x); }

  WorldSet interior(const WorldSet& s) const;
  WorldSet closure(const WorldSet& s) const;
  WorldSet derivative(const WorldSet& s) const;
  // [d]S = X ∖ ⟨d⟩(X ∖ S)
  WorldSet co_derivative(const WorldSet& s) const;

 private:
  std::vector<std::string> points_;
  std::vector<WorldSet> opens_;
  std::vector<WorldSet> nbhd_;
};

struct SpaceOperators {
  WorldSet interior;
  WorldSet closure;
  WorldSet derivative;
};
SpaceOperators operators(const FiniteSpace& s, const WorldSet& subset);

struct SpacePredicates {
  bool is_td;
  bool dense_in_itself;
  bool connected;
};
SpacePredicates space_predicates(const FiniteSpace& s);

struct TopoModel {
  FiniteSpace space;
  Valuation val;
};

class TopoSemantics : public Semantics {
 public:
  explicit TopoSemantics(const FiniteSpace& s) : space_(s) {}
  std::size_t size() const override { return space_.size(); }
  WorldSet box(const WorldSet& s) const override { return space_.interior(s); }
  WorldSet dia(const WorldSet& s) const override { return space_.closure(s); }
  WorldSet box_d(const WorldSet& s) const override { return space_.co_derivative(s); }
  WorldSet dia_d(const WorldSet& s) const override { return space_.derivative(s); }
  WorldSet tangle(const std::vector<WorldSet>& members) const override;
  WorldSet tangle_d(const std::vector<WorldSet>& members) const override;

 private:
  const FiniteSpace& space_;
};

WorldSet topo_model_check(const TopoModel& m, const Formula& f, EvalStats* stats = nullptr);

// Opens are the R-up-closed sets.  Throws FrameError unless transitive.
FiniteSpace alexandrov(const Frame& f);

// Every topology on n anonymous points "w0".."w{n-1}" (n ≤ 5), via
// their specialisation preorders.
std::vector<FiniteSpace> all_topologies(std::size_t n);

}  // namespace tangle
