#pragma once

#include "kt/liealg/liealg.hpp"
#include "kt/numerics/linalg.hpp"
#include "kt/tensor/fiber.hpp"

#include <optional>
#include <stdexcept>

namespace kt {

struct MetricNormalization {
  Q scale = 1;
};

// R[a][b][c][d] = R_ab^c_d on m with R(X,Y)Z = −[[X,Y],Z]; Rl[a][b][c][d] = R_abcd = g_ce R_ab^e_d.
struct CurvatureData {
  int n = 0;
  std::string label;
  SparseTensor R, Rl;
  // Normalized metric and inverse, as matrices and rank-2 tensors.
  QMat g, ginv;
  SparseTensor gt, ginvt;
  // Ric_bd = R_ab^a_d.
  QMat ric;
  Q scale = 1;
  bool flat = false;
};

struct ConventionError : std::logic_error {
  using std::logic_error::logic_error;
};

// Builds R from the brackets, asserts the Riemann symmetries (throws
// ConventionError) and normalizes unless relax_ricci is set.
CurvatureData curvature_tensor(const SymmetricPair& p, bool relax_ricci = false);

// Scale s with Ric = s·g_raw; throws std::domain_error for reducible pairs.
MetricNormalization normalize_metric(const SymmetricPair& p, const CurvatureData& c);

// Matrix with one row per flat index of ⊗^rank for the map src → ⊗^rank.
SpMat full_matrix(const Fiber& src, int rank, const std::function<SparseTensor(const SparseTensor&)>& f);

// K ⊆ Λ² and K̂ ⊆ End(Λ¹), in the coordinates of fiber(n, "L2") and fiber(n, "End").
SubspaceBasis k_subspace(const CurvatureData& c);
SubspaceBasis khat_subspace(const CurvatureData& c);
SparseTensor k_condition(const CurvatureData& c, const SparseTensor& mu);
SparseTensor khat_condition(const CurvatureData& c, const SparseTensor& phi);

Report verify_lts(const CurvatureData& c, const SubspaceBasis& k, const SubspaceBasis& khat);

// σ_ab ↦ R_a^c_b^d σ_cd on fiber "S2".
SpMat second_kind_operator(const CurvatureData& c);
// μ_ab ↦ R_ab^cd μ_cd on fiber "L2".
SpMat lambda2_operator(const CurvatureData& c);

struct EigenCount {
  Q lambda;
  int multiplicity = 0;
};
// Exact eigenvalues of a diagonalizable rational operator whose characteristic
// polynomial splits over Q; nullopt otherwise.
std::optional<std::vector<EigenCount>> rational_spectrum(const QMat& a);

Report su6_identities(const CurvatureData& c);

struct CartanForm {
  SparseTensor phi;
  // φ_a^cd φ_bcd = λ g_ab before rescaling.
  Q raw_lambda;
};

// Throws std::domain_error on non-group pairs or when the normalization is irrational.
CartanForm cartan_form(const SymmetricPair& p, const CurvatureData& c);
Report verify_cartan(const CurvatureData& c, const CartanForm& f);

// (σ, μ) ↦ (φ_b^cd μ_cd, φ_bc^d σ_d) on Λ¹ ⊕ Λ².
SpMat cartan_endomorphism(const CurvatureData& c, const CartanForm& f);

// Index helpers.
SparseTensor raise(const CurvatureData& c, const SparseTensor& t, int slot);
SparseTensor lower(const CurvatureData& c, const SparseTensor& t, int slot);
SparseTensor matrix_tensor(const QMat& m);

}  // namespace kt
