#pragma once

#include "kt/numerics/fixpoint.hpp"
#include "kt/prolong/prolong.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kt {

struct HolonomyOptions {
  FixpointOptions fix;
  // Include the ρ-operators in the invariance closure. Without them the result
  // is still the answer whenever the α-closure is taken inside ∩ ker Λ, since
  // the largest α-invariant subspace there is automatically ρ-invariant.
  bool include_rho = true;
};

// Maximal parallel flat subspace of an invariant connection at the base point.
struct FlatSubspace {
  std::string label;
  int ambient = 0;
  int dim = 0;
  std::vector<int> trace;
  std::optional<CanonicalBasis> basis;
  bool certified = false;
  std::string method;

  SubspaceBasis vectors() const;
};

FlatSubspace parallel_subspace(const SymmetricPair& p, const InvariantConnection& conn,
                               const HolonomyOptions& opt = {});
FlatSubspace parallel_subspace(const SymmetricPair& p, const InvariantConnection& conn,
                               const ConnectionCurvature& curv, const HolonomyOptions& opt);

// Exact invariance and flatness of span(vs) (no maximality claim).
Report check_parallel_flat(const SymmetricPair& p, const InvariantConnection& conn, const SubspaceBasis& vs,
                           const std::string& name);

// Δ = Φ(⊙²(Λ¹ ⊕ K)) built from Killing 1-form sections.
struct Decomposable {
  int sym_dim = 0;        // dim ⊙²K¹
  int kernel_dim = 0;     // dim ker Φ on ⊙²K¹
  int dim = 0;            // dim Δ
  SubspaceBasis delta;    // spanning set reduced to a basis (exact only)
  bool certified = false; // Δ parallel and flat, checked exactly
  std::string method;
  Report report;
};

// k1: exact basis of the Killing 1-form parallel space; k2: the Killing 2-tensor
// connection. With exact = false the rank is taken mod p (a lower bound) and the
// parallel check uses the derivation identity instead of the vectors of Δ.
Decomposable decomposable_subspace(const SymmetricPair& p, const InvariantConnection& k1, const SubspaceBasis& p1,
                                   const InvariantConnection& k2, bool exact = true);

struct HiddenReport {
  int killing2 = 0;
  int decomposable = 0;
  int hidden = 0;
  int p_rank = 0;  // rank of HookAlt / Φ(Λ¹⊗K)
  int q_rank = 0;  // rank of Window / Φ(K⊙K)
};

HiddenReport quotient_ranks(const CurvatureData& c);

struct DamperBound {
  int s2 = 0, mu = 0, rho = 0;
  int bound() const { return s2 + mu + rho; }
  // Whether lines one and three of R◇ vanish after the curvature block on every
  // HookAlt basis element. Reported, not asserted: the engine finds non-zero
  // contributions on cp:2 and slso:3.
  bool lines_one_three_vanish = false;
  Report report;
};

// Upper bound for the Killing 2-tensor parallel space from the curvature kernels.
DamperBound first_damper_bound(const SymmetricPair& p, const CurvatureData& c, const InvariantConnection& k2);
// The same kernels mod p with the curvature rows sketched. Every modular kernel
// contains the reduction of the rational one, so the result is still an upper
// bound for the parallel space. Skips the R◇ line check.
DamperBound first_damper_bound_modular(const SymmetricPair& p, const InvariantConnection& k2, bool parallel = true);

// (σ^a μ̃_ab − σ̃^a μ_ab, 2μ^a_[b μ̃_c]a − R_bc^ad σ_a σ̃_d) on Λ¹ ⊕ Λ².
std::vector<Q> prolonged_bracket(const CurvatureData& c, const std::vector<Q>& x, const std::vector<Q>& y);

// Structure constants of the bracket on the Killing 1-form parallel space.
struct KillingAlgebra {
  LieAlgebra algebra;
  SubspaceBasis basis;
  Report report;
};
KillingAlgebra killing_algebra(const SymmetricPair& p, const CurvatureData& c, const InvariantConnection& k1,
                               const FlatSubspace& par);

// Sign pattern (positive, negative, zero) of a symmetric rational form.
struct Signature {
  int pos = 0, neg = 0, zero = 0;
  bool operator==(const Signature&) const = default;
};
Signature signature(const QMat& q);

// Invariant symmetric 3-tensors and the Killing 2-tensors φ_bcd X^d built from them.
struct Sym3Report {
  SubspaceBasis invariants;
  Report report;
};
// Sections are compared through their 2-jets: the S2 parts of s, α_a s and α_a α_b s.
Sym3Report invariant_sym3(const SymmetricPair& p, const CurvatureData& c, const InvariantConnection& k1,
                          const SubspaceBasis& p1, const InvariantConnection& k2, const SubspaceBasis& k2_sections);

struct SplittingReport {
  int plus = 0, minus = 0;
  Report report;
};
SplittingReport group_splitting(const SymmetricPair& p, const CurvatureData& c, const InvariantConnection& k1,
                                const KillingAlgebra& alg);

}  // namespace kt
