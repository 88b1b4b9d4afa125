#pragma once

#include "kt/numerics/linalg.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kt {

// Structure constants c[i][j][k]: [e_i, e_j] = Σ_k c[i][j][k] e_k.
struct LieAlgebra {
  int dim = 0;
  // Sparse brackets: br[i * dim + j] holds the nonzero (k, c[i][j][k]).
  std::vector<std::vector<std::pair<int, Q>>> br;

  explicit LieAlgebra(int d = 0) : dim(d), br(std::size_t(d) * d) {}
  const std::vector<std::pair<int, Q>>& bracket(int i, int j) const { return br[std::size_t(i) * dim + j]; }
  Q c(int i, int j, int k) const;
  void set(int i, int j, int k, const Q& v);
  std::vector<Q> bracket(const std::vector<Q>& x, const std::vector<Q>& y) const;
  // Matrix of ad(e_i) acting on coordinate columns.
  QMat ad(int i) const;
  QMat killing_form() const;
};

// Structure constants of the linear span of independent matrices closed under
// the commutator.
LieAlgebra from_matrices(const std::vector<QMat>& basis);

// Coordinates of matrices in a fixed basis; throws for matrices outside the span.
class MatrixCoordinates {
 public:
  explicit MatrixCoordinates(const std::vector<QMat>& basis);
  std::vector<Q> operator()(const QMat& x) const;
  int dim() const { return dim_; }

 private:
  int dim_;
  int entries_;
  QEchelon ech_;
};

// Change of basis: the new basis vectors are the columns of p (old coordinates).
LieAlgebra change_basis(const LieAlgebra& g, const QMat& p);

struct GroupData {
  // Dimension of h; m_i = (−X_i, X_i) and k_i = (X_i, X_i) in h ⊕ h.
  int hdim = 0;
  LieAlgebra h;
  // psi[i]: coordinates in h of the first-factor projection of m basis vector i.
  QMat psi;
};

// Symmetric pair in a θ-adapted basis: indices 0..n-1 span m, n..n+kdim-1 span k.
struct SymmetricPair {
  std::string label;
  LieAlgebra g;
  QMat theta;
  int n = 0;
  int kdim = 0;
  // Raw metric on m: −B restricted to m, or the identity for abelian m.
  QMat metric;
  bool flat = false;
  std::optional<GroupData> group;

  // c[a][b][k] for a, b in m and k in k (k counted from 0).
  Q cmm(int a, int b, int k) const { return g.c(a, b, n + k); }
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::vector<CheckResult> checks;
  bool ok() const;
  void add(std::string name, bool pass, std::string detail = {});
};

struct PairSpec {
  std::string family;
  std::vector<int> params;
  std::string subfamily;  // group:<h>
};

PairSpec parse_space(const std::string& id);
std::vector<std::string> catalog_families();

SymmetricPair build_catalog(const std::string& id);
SymmetricPair build_catalog(const PairSpec& spec);
// From an abstract algebra and involution matrix; forms the adapted basis.
SymmetricPair make_pair(const std::string& label, const LieAlgebra& g, const QMat& theta);
SymmetricPair load_custom(const std::string& json_text);

Report validate(const SymmetricPair& p);
Report validate_algebra(const LieAlgebra& g);

// Classical matrix algebras as real matrices.
std::vector<QMat> so_basis(int n);
std::vector<QMat> su_basis(int n);
std::vector<QMat> sp_basis(int n);

}  // namespace kt
