#pragma once

#include "kt/liealg/liealg.hpp"
#include "kt/tensor/fiber.hpp"

#include <vector>

namespace kt {

// Isotropy action of k on m: ad(Y_k) restricted to m, M_k[e][c] = c[n+k][c][e].
struct Isotropy {
  int n = 0;
  int kdim = 0;
  // rows[k][e]: (c, M_k[e][c]); cols[k][c]: (e, M_k[e][c]).
  std::vector<std::vector<std::vector<std::pair<int, Q>>>> rows, cols;
};

Isotropy isotropy(const SymmetricPair& p);

// dρ(Y_k) on a tensor with the given slot variances.
SparseTensor rho_apply(const Isotropy& iso, int k, const SparseTensor& t, const std::vector<Variance>& var);

std::vector<SpMat> rho_matrices(const Isotropy& iso, const Fiber& f, bool check = false);

// Maps F: X → Y commute with the isotropy action: F ρ_X = ρ_Y F for all k.
bool is_equivariant(const SpMat& f, const std::vector<SpMat>& rho_src, const std::vector<SpMat>& rho_dst);

}  // namespace kt
