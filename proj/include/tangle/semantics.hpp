#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "tangle/formula.hpp"
#include "tangle/world_set.hpp"

namespace tangle {

using Valuation = std::map<std::string, WorldSet>;

/// The modal operators of a concrete semantics over a finite carrier.
/// Booleans, ∀/∃ and fixpoints are shared by every semantics and live in
/// evaluate().
class Semantics {
 public:
  virtual ~Semantics() = default;
  virtual std::size_t size() const = 0;
  virtual WorldSet box(const WorldSet& s) const = 0;
  virtual WorldSet dia(const WorldSet& s) const = 0;
  virtual WorldSet box_d(const WorldSet& s) const = 0;
  virtual WorldSet dia_d(const WorldSet& s) const = 0;
  virtual WorldSet tangle(const std::vector<WorldSet>& members) const = 0;
  virtual WorldSet tangle_d(const std::vector<WorldSet>& members) const = 0;
};

struct EvalStats {
  // Largest number of approximants computed by any single μ/ν iteration,
  // counting the one that confirmed stabilisation.
  std::size_t max_fixpoint_iterations = 0;
};

// Atoms missing from the valuation are false everywhere.
WorldSet evaluate(const Semantics& sem, const Valuation& val, const Formula& f,
                  EvalStats* stats = nullptr);

}  // namespace tangle
