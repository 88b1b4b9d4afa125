#pragma once

#include "kt/curvature/curvature.hpp"
#include "kt/tensor/isotropy.hpp"

#include <string>
#include <vector>

namespace kt {

// ∇_a = (canonical) + α_a on a homogeneous bundle with fiber `fiber`.
struct InvariantConnection {
  std::string label;
  FiberSum fiber;
  std::vector<SpMat> rho;
  std::vector<SpMat> alpha;

  int dim() const { return fiber.dim(); }
};

// Λ_ab = [α_a, α_b] − Σ_k c_ab^k ρ_k for a < b. This is 2∇_[a∇_b].
struct ConnectionCurvature {
  int n = 0;
  std::vector<SpMat> lambda;

  const SpMat& at(int a, int b) const;
};

int pair_index(int n, int a, int b);

ConnectionCurvature connection_curvature(const SymmetricPair& p, const InvariantConnection& c);

// ρ is a representation of k and α is equivariant.
Report check_connection(const SymmetricPair& p, const InvariantConnection& c);
// ρ_dst F_a − F_a ρ_src = Σ_b c[k][a][b] F_b for a family F_a of maps src → dst.
bool equivariant_family(const SymmetricPair& p, const std::vector<SpMat>& family, const std::vector<SpMat>& rho_src,
                        const std::vector<SpMat>& rho_dst);

// Bundle with α = 0 and the isotropy action on each summand.
InvariantConnection tensor_bundle(const SymmetricPair& p, const std::vector<std::string>& kinds,
                                  const std::string& label = {});

// Rows (or columns) of a block of a matrix on a FiberSum.
SpMat block(const SpMat& m, const FiberSum& rows, int i, const FiberSum& cols, int j);

struct LiftError : std::domain_error {
  using std::domain_error::domain_error;
};

// (∇φ − ∂ψ, ∇ψ + κ̃φ) on U ⊕ V with ∂_a : V → U and κ̃_a : U → V per form index.
// Throws LiftError unless ∂∧κ̃ equals the curvature of U; throws ConventionError
// unless ∂ is equivariant and ∇∧∂ = 0. With verify set, also asserts that the
// result has no U-curvature and its V-curvature lies in ker ∂∧.
InvariantConnection generic_prolong(const SymmetricPair& p, const InvariantConnection& u, const InvariantConnection& v,
                                    const std::vector<SpMat>& partial, const std::vector<SpMat>& kappa,
                                    const std::string& label, bool verify = true);

// The unique κ̃ with ∂∧κ̃ = curvature of U, when ∂∧ is injective on Λ¹⊗V.
std::vector<SpMat> solve_lift(const SymmetricPair& p, const InvariantConnection& u, const std::vector<SpMat>& partial,
                              int vdim);

// Tensor formulas. Form index first throughout.
enum class TriangleOption { One, Two };

// (R◁σ)_abcd ∈ Λ¹⊗HookAlt.
SparseTensor r_triangle(const CurvatureData& c, const SparseTensor& sigma, TriangleOption opt);
// (R◇μ)_abcde ∈ Λ¹⊗Window; line in {1, 2, 3} or 0 for the sum.
SparseTensor r_diamond(const CurvatureData& c, const SparseTensor& mu, int line = 0);
// ∇_[a∇_b] of the stage-one connection on μ ∈ HookAlt, as a tensor in abcde.
SparseTensor first_stage_curvature_formula(const CurvatureData& c, const SparseTensor& mu);
// ∇_[a∇_b] μ of the Killing 1-form connection: R_ab^e_[c μ_d]e + R_cd^e_[a μ_b]e.
SparseTensor killing1_curvature_formula(const CurvatureData& c, const SparseTensor& mu);
// Induced curvature on the L1xL2 and S2L2 parts of ⊙²(Λ¹⊕Λ²).
SparseTensor symmetric_curvature_mu(const CurvatureData& c, const SparseTensor& mu);
SparseTensor symmetric_curvature_rho(const CurvatureData& c, const SparseTensor& rho);
// X_abcde for μ ∈ L1xL2, and R⬠μ = ⅓(X − 2X_[bc]ade − 2X_[de]abc).
SparseTensor pentagon_x(const CurvatureData& c, const SparseTensor& mu);
SparseTensor r_pentagon(const CurvatureData& c, const SparseTensor& mu);
// Right side of the key-piece identity for μ ∈ L1xL2.
SparseTensor key_piece_rhs(const CurvatureData& c, const SparseTensor& mu);
// 4R_a[b^f_c μ_de]f for μ ∈ Λ³.
SparseTensor ky_term(const CurvatureData& c, const SparseTensor& mu);
// ½(R_ab^d_e φ_c^e − R_ab^e_c φ_e^d + R_ae^d_c φ_b^e − R_be^d_c φ_a^e), indices abcd.
SparseTensor affine_curvature_formula(const CurvatureData& c, const SparseTensor& phi);

// Named connections.
InvariantConnection killing1_connection(const SymmetricPair& p, const CurvatureData& c);
InvariantConnection killing2_stage1(const SymmetricPair& p, const CurvatureData& c,
                                    TriangleOption opt = TriangleOption::One);
InvariantConnection killing2_connection(const SymmetricPair& p, const CurvatureData& c,
                                        TriangleOption opt = TriangleOption::One, bool verify = true);
InvariantConnection symmetric_power_connection(const SymmetricPair& p, const CurvatureData& c);
InvariantConnection pentagon_modification(const SymmetricPair& p, const CurvatureData& c);
InvariantConnection ky_connection(const SymmetricPair& p, const CurvatureData& c);
InvariantConnection affine_connection(const SymmetricPair& p, const CurvatureData& c);

// ⊙²(Λ¹⊕Λ²) = S2 ⊕ L1xL2 ⊕ S2L2 → S2 ⊕ HookAlt ⊕ Window.
SpMat phi_matrix(int n);
// (σ, μ) ⊙ (σ', μ') in S2 ⊕ L1xL2 ⊕ S2L2 coordinates.
std::vector<Q> symmetric_product(int n, const std::vector<Q>& x, const std::vector<Q>& y);
// (σ, μ, ρ) ↦ (σ, μ, ρ + (R◁¹ − R◁²)σ) on S2 ⊕ HookAlt ⊕ Window.
SpMat gauge_matrix(const CurvatureData& c);
// The section (g, 0, R) of S2 ⊕ HookAlt ⊕ Window.
std::vector<Q> metric_section(const CurvatureData& c);

// Verification suites.
Report verify_generic_examples(const SymmetricPair& p, const CurvatureData& c);
Report verify_killing1(const SymmetricPair& p, const CurvatureData& c);
Report verify_r_triangle(const CurvatureData& c);
Report verify_r_diamond(const CurvatureData& c);
Report verify_killing2(const SymmetricPair& p, const CurvatureData& c);
Report verify_first_stage_curvature(const SymmetricPair& p, const CurvatureData& c);
Report verify_symmetric_power(const SymmetricPair& p, const CurvatureData& c);
Report verify_key_piece(const CurvatureData& c, const SparseTensor& mu);
Report verify_phi(const SymmetricPair& p, const CurvatureData& c);
Report verify_affine(const SymmetricPair& p, const CurvatureData& c);
// Kernel of X ↦ 5X_cde − 2X_[de]c on Λ¹⊗Λ² (expected zero).
int very_simple_algebra_kernel(int n);
SparseTensor very_simple_map(const SparseTensor& x);

// Pointwise forms of the checks above, for one input tensor.
bool r_triangle_lift_holds(const CurvatureData& c, const SparseTensor& sigma);
// The skew part of R◇μ in ab is the first-stage curvature formula.
bool r_diamond_skew_part_holds(const CurvatureData& c, const SparseTensor& mu);

}  // namespace kt
