#pragma once

#include "kt/tensor/fiber.hpp"

namespace kt {

// θ_abc = θ_[ab]c  ↦  μ_abc = θ_acb + θ_bca − θ_abc.
SparseTensor partial_inverse(const SparseTensor& theta);
// μ ↦ μ_[ba]c, the inverse of partial_inverse.
SparseTensor partial_inverse_back(const SparseTensor& mu);

// Y = X − 2X_[bc]ade − 2X_[de]abc on Λ¹⊗Window, and its inverse
// X = −(1/3)(Y + 2Y_[bc]ade + 2Y_[de]abc).
SparseTensor fun_automorphism(const SparseTensor& x);
SparseTensor fun_automorphism_inverse(const SparseTensor& y);

// For φ_abcde = φ_a[bcde] with φ_[abcde] = 0: (8/3)θ_a[bcde] with θ = φ_[ab]cde.
SparseTensor mindless_recover(const SparseTensor& phi);

// HookAlt → HookSym: ν_bcd = μ_cdb + μ_dcb. The inverse is the exact inverse
// of its matrix and is cached per n.
SparseTensor hook_alt_to_sym(const SparseTensor& mu);
SparseTensor hook_sym_to_alt(const SparseTensor& nu);

// Throws std::domain_error unless t lies in the fiber of the given kind.
void require_kind(const SparseTensor& t, const std::string& kind);

}  // namespace kt
