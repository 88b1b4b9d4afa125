#pragma once

#include "kt/numerics/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kt {

enum class Backend { Exact, Float };

Backend parse_backend(const std::string& s);
std::string to_string(Backend b);

// Linearly independent column vectors in a common ambient space.
struct SubspaceBasis {
  int ambient_dim = 0;
  std::vector<std::vector<Q>> vectors;

  int dim() const { return int(vectors.size()); }
  QMat matrix() const { return from_columns(ambient_dim, vectors); }
  static SubspaceBasis full(int n);
  static SubspaceBasis zero(int n) { return SubspaceBasis{n, {}}; }
};

// Incremental row echelon form over Q with dense rows. Rows are kept with a
// unit pivot and zeros in the pivot columns of earlier rows.
class QEchelon {
 public:
  explicit QEchelon(int n) : n_(n), where_(n, -1) {}

  int ambient() const { return n_; }
  int rank() const { return int(rows_.size()); }
  // Subtracts multiples of the stored rows; returns the residual.
  void reduce(std::vector<Q>& r) const;
  // Returns true if r was independent of the stored rows.
  bool insert(std::vector<Q> r);
  bool insert(const SparseVec& r);
  // Brings the stored rows to reduced row echelon form.
  void make_reduced();
  const std::vector<std::vector<Q>>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return piv_; }
  // Canonical kernel basis (identity on free columns); requires a reduced form.
  SubspaceBasis kernel_basis();

 private:
  int n_;
  std::vector<std::vector<Q>> rows_;
  std::vector<int> piv_;
  std::vector<int> where_;
  bool reduced_ = false;
};

SubspaceBasis kernel(const QMat& a);
SubspaceBasis kernel(const SpMat& a);
// Kernel of the vertically stacked matrices.
SubspaceBasis kernel_stacked(const std::vector<SpMat>& mats);
int rank(const QMat& a);
int rank(const SpMat& a);
int rank_of_vectors(const std::vector<std::vector<Q>>& vs, int ambient);

// Independent subset basis of the span.
SubspaceBasis span(int ambient, const std::vector<std::vector<Q>>& vs);
SubspaceBasis intersect(const SubspaceBasis& s1, const SubspaceBasis& s2);
SubspaceBasis sum(const SubspaceBasis& s1, const SubspaceBasis& s2);
bool contains(const SubspaceBasis& s, const std::vector<Q>& v);
bool contains(const SubspaceBasis& s, const SubspaceBasis& t);
bool same_subspace(const SubspaceBasis& s, const SubspaceBasis& t);
// Annihilator as a basis of row functionals.
SubspaceBasis annihilator(const SubspaceBasis& s);

// dim ker(A - lambda I), exact.
int rank_at_eigenvalue(const QMat& a, const Q& lambda);

// Solves A x = b exactly; empty when inconsistent.
std::optional<std::vector<Q>> solve(const QMat& a, const std::vector<Q>& b);

// Solves A X = B for all columns of B with one elimination; empty when some
// column is inconsistent. rank_a receives rank(A) when given.
std::optional<QMat> solve_columns(const QMat& a, const QMat& b, int* rank_a = nullptr);

// Exact inverse; throws on singular input.
QMat inverse(const QMat& a);

// Direct rational fixpoint: largest W ⊆ V0 with op·W ⊆ W for all ops.
// Reference implementation used to cross-check the modular path.
struct FixpointTrace {
  SubspaceBasis basis;
  std::vector<int> trace;
};
FixpointTrace invariant_subspace_reference(const SubspaceBasis& v0, const std::vector<SpMat>& ops);

}  // namespace kt
