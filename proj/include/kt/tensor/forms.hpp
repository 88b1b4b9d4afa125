#pragma once

#include "kt/numerics/matrix.hpp"

#include <vector>

namespace kt {

// Λ^p ⊗ F in block coordinates: one copy of F per increasing p-subset of {0..n-1}.
struct FormBlocks {
  int n = 0;
  int p = 0;
  std::vector<std::vector<int>> subsets;

  FormBlocks(int n, int p);
  int count() const { return int(subsets.size()); }
  int index(const std::vector<int>& s) const;
};

// ∂∧ : Λ^p ⊗ V → Λ^{p+1} ⊗ U, (∂∧ψ)_{a_0…a_p} = Σ_i (−1)^i ∂_{a_i} ψ_{a_0…â_i…a_p}, for ∂_a : V → U.
SpMat wedge_partial(int n, int p, const std::vector<SpMat>& d);

// Λ¹ ⊗ V coordinates from per-form maps: stacks X → Λ¹⊗V given X → V for each a.
SpMat stack_forms(const std::vector<SpMat>& per_form);

}  // namespace kt
