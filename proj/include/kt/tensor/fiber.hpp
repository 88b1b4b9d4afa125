#pragma once

#include "kt/numerics/matrix.hpp"
#include "kt/tensor/sparse_tensor.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace kt {

enum class Variance { Co, Contra };

// Slot permutation with sign: T(i_{perm[0]}, …, i_{perm[r-1]}) = sign · T(i_0, …, i_{r-1}).
struct SlotPerm {
  std::vector<int> perm;
  int sign = 1;
};

struct Constraint {
  enum class Kind { AltZero, SymZero, Custom };
  Kind kind = Kind::AltZero;
  std::vector<int> slots;
  std::function<SparseTensor(const SparseTensor&)> map;
};

struct FiberSpec {
  std::string name;
  int rank = 0;
  std::vector<SlotPerm> gens;
  std::vector<Constraint> constraints;
  std::vector<Variance> variance;
};

// Generators and constraints for the standard kinds.
SlotPerm swap_gen(int rank, int i, int j, int sign);
FiberSpec spec_full(int rank);
FiberSpec spec_alt(int k);
FiberSpec spec_sym(int k);
FiberSpec spec_hook_alt();
FiberSpec spec_hook_sym();
FiberSpec spec_l1_l2();
FiberSpec spec_s2_l2();
FiberSpec spec_window();
FiberSpec spec_vector();
FiberSpec spec_end();
// Λ^p ⊗ F, with the form slots first.
FiberSpec spec_forms_times(int p, const FiberSpec& f);
FiberSpec spec_bay_window();
FiberSpec spec_kind(const std::string& kind);

// Symmetry-typed subspace of ⊗^r, coordinatized by free orbit representatives.
class Fiber {
 public:
  Fiber(int n, FiberSpec spec);

  int n() const { return n_; }
  int rank() const { return spec_.rank; }
  int dim() const { return int(free_.size()); }
  const std::string& name() const { return spec_.name; }
  const std::vector<Variance>& variance() const { return spec_.variance; }
  const FiberSpec& spec() const { return spec_; }

  const SparseTensor& basis_tensor(int j) const { return basis_[j]; }
  // Flat index of the representative carrying coordinate j.
  SparseTensor::Index coordinate_index(int j) const { return coord_index_[j]; }
  // Coordinate carried by a flat index, or -1.
  int coordinate_of(SparseTensor::Index f) const;

  SparseTensor embed(const std::vector<Q>& x) const;
  // Reads the coordinates; assumes t lies in the fiber.
  std::vector<Q> project(const SparseTensor& t) const;
  SparseVec project_sparse(const SparseTensor& t) const;
  bool contains(const SparseTensor& t) const;
  // Throws std::domain_error when t is outside the fiber.
  std::vector<Q> project_checked(const SparseTensor& t) const;

 private:
  int n_;
  FiberSpec spec_;
  std::vector<SparseTensor> basis_;
  std::vector<int> free_;
  std::vector<SparseTensor::Index> coord_index_;
  std::unordered_map<SparseTensor::Index, int> coord_lookup_;
};

using FiberPtr = std::shared_ptr<const Fiber>;

// Cached fibers by (n, kind). Thread-safe.
FiberPtr fiber(int n, const std::string& kind);

// Matrix of a linear map between fibers, given on tensors.
SpMat tensor_matrix(const Fiber& src, const Fiber& dst, const std::function<SparseTensor(const SparseTensor&)>& f,
                    bool check = false);
// For maps into Λ¹ ⊗ dst with the form slot first: one matrix per value of that slot.
std::vector<SpMat> sliced_matrices(const Fiber& src, const Fiber& dst,
                                   const std::function<SparseTensor(const SparseTensor&)>& f, bool check = false);

// Slice t_{a …} at fixed a of the first slot.
SparseTensor slice0(const SparseTensor& t, int a);
// Inverse of slicing: e^a ⊗ t.
SparseTensor with_form(int a, const SparseTensor& t);

// Direct sum of fibers with coordinate offsets.
struct FiberSum {
  std::vector<FiberPtr> parts;
  std::vector<std::string> labels;
  std::vector<int> offset;

  void add(std::string label, FiberPtr f);
  int dim() const;
  int index_of(const std::string& label) const;
  std::vector<Q> component(const std::vector<Q>& x, int i) const;
};

}  // namespace kt
