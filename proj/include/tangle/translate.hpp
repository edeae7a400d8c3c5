#pragma once

#include "tangle/formula.hpp"

namespace tangle {

// ⟨t⟩Δ ↦ νq.⋀◇(δ^μ ∧ q), ⟨dt⟩Δ ↦ νq.⋀⟨d⟩(δ^μ ∧ q); every other
// connective is kept.  Result is tangle-free.
Formula to_mu(const Formula& f);

// □φ ↦ φ^d ∧ [d]φ^d, ◇φ ↦ φ^d ∨ ⟨d⟩φ^d,
// ⟨t⟩Δ ↦ ⋀Δ^d ∨ ⟨d⟩⋀Δ^d ∨ ⟨dt⟩Δ^d.  Result is free of □, ◇ and ⟨t⟩.
Formula to_d(const Formula& f);

// □φ ↦ νq.(φ* ∧ □q), ◇φ ↦ ¬νq.(¬φ* ∧ □q).  Accepts booleans, □, ◇, μ
// and ν only; anything else raises FragmentError.
Formula star(const Formula& f);

// Fresh atoms are drawn in pre-order from `_g0, _g1, ...`, skipping
// every name that occurs in the input.

}  // namespace tangle
