#pragma once

#include "kt/numerics/linalg.hpp"
#include "kt/numerics/modp.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace kt {

struct FixpointOptions {
  Backend backend = Backend::Exact;
  double tol = 1e-9;
  // OpenMP kernels when true, serial reference loop otherwise.
  bool parallel = true;
  int block = 64;
  int max_primes = 4;
  // Rational lift and exact certification of the modular kernel.
  bool lift = true;
  // When positive, the seed rows are replaced by this many random combinations
  // (fixed pseudo-random coefficients). The kernel can only grow, so a modular
  // result is an upper bound for the true dimension.
  int sketch_rows = 0;
};

// Kernel basis in canonical form: identity on the free columns.
struct CanonicalBasis {
  int n = 0;
  std::vector<int> free_cols;
  std::vector<int> pivot_cols;
  // pivot_rows[k]: sparse entries (index into free_cols, value) of coordinate pivot_cols[k].
  std::vector<std::vector<std::pair<int, Q>>> pivot_rows;

  int dim() const { return int(free_cols.size()); }
  SubspaceBasis basis() const;
  // Coordinates of y, or nullopt when y is outside the span.
  std::optional<std::vector<Q>> coords(const std::vector<Q>& y) const;
};

struct ModClosure {
  ModEchelon ech;
  std::vector<int> trace;
};

struct FloatClosure {
  int rank = 0;
  std::vector<int> trace;
  // Orthonormal rows spanning the annihilator.
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows;
};

// Rows of the seed matrices are functionals; the closure is the smallest row
// space containing them and stable under right multiplication by every op.
// Its kernel is the largest op-invariant subspace of the common seed kernel.
ModClosure kernel_closure_mod(int n, const std::vector<SpMat>& seeds, const std::vector<SpMat>& ops,
                              const Field& f, bool parallel, int block = 64, int sketch = 0);
FloatClosure kernel_closure_float(int n, const std::vector<SpMat>& seeds, const std::vector<SpMat>& ops,
                                  double tol, bool parallel, int block = 64, int sketch = 0);

// Inserts dense rows (consumed) into e; returns the indices of the new rows.
std::vector<int> absorb_rows(ModEchelon& e, std::vector<std::vector<u64>>& rows, bool parallel);

// Rational reconstruction (with CRT across the given reduced echelon forms).
std::optional<CanonicalBasis> lift_kernel(const std::vector<const ModEchelon*>& echs);

struct ClosureResult {
  int ambient = 0;
  int dim = 0;
  std::vector<int> trace;
  std::optional<CanonicalBasis> basis;
  bool certified = false;
  std::string method;
};

// Exact closure with modular elimination, lifting and exact certification.
// The certificate is: seeds annihilate the lifted space and every op maps it
// into itself; the modular dimension bounds the true one from above.
ClosureResult kernel_closure(int n, const std::vector<SpMat>& seeds, const std::vector<SpMat>& ops,
                             const FixpointOptions& opt = {});

// Largest W ⊆ V0 with op·W ⊆ W for every op.
FixpointTrace largest_invariant_subspace(const SubspaceBasis& v0, const std::vector<SpMat>& ops,
                                         const FixpointOptions& opt = {});

// Matrix of A restricted to W in the canonical coordinates; nullopt if A·W ⊄ W.
std::optional<QMat> restrict_to(const CanonicalBasis& w, const SpMat& a);

// Functionals as matrix rows, from a list of vectors.
SpMat rows_matrix(int n, const std::vector<std::vector<Q>>& rows);

}  // namespace kt
