#pragma once

#include "kt/numerics/rational.hpp"

#include <cstdint>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace kt {

// Sparse rank-r tensor over an n-dimensional space. Flat index: slot 0 is the
// most significant digit in base n.
class SparseTensor {
 public:
  using Index = std::uint64_t;

  SparseTensor() = default;
  SparseTensor(int n, int rank) : n_(n), rank_(rank) {}

  int n() const { return n_; }
  int rank() const { return rank_; }
  std::size_t nnz() const { return e_.size(); }
  const std::unordered_map<Index, Q>& entries() const { return e_; }

  Index flat(const int* idx) const;
  Index flat(std::initializer_list<int> idx) const;
  void digits(Index f, int* idx) const;

  Q get(Index f) const;
  Q get(std::initializer_list<int> idx) const { return get(flat(idx)); }
  void add(Index f, const Q& v);
  void add(std::initializer_list<int> idx, const Q& v) { add(flat(idx), v); }
  void set(Index f, const Q& v);

  // Drops explicit zeros.
  void prune();
  bool is_zero() const;

  SparseTensor& operator+=(const SparseTensor& o);
  SparseTensor& operator-=(const SparseTensor& o);
  SparseTensor& operator*=(const Q& s);

  bool operator==(const SparseTensor& o) const;
  bool operator!=(const SparseTensor& o) const { return !(*this == o); }

 private:
  int n_ = 0;
  int rank_ = 0;
  std::unordered_map<Index, Q> e_;
};

SparseTensor operator+(SparseTensor a, const SparseTensor& b);
SparseTensor operator-(SparseTensor a, const SparseTensor& b);
SparseTensor operator*(const Q& s, SparseTensor a);

// Index-labelled contraction. Labels shared by A and B and absent from the
// output are summed; labels repeated within one operand restrict to the
// diagonal; every output label must occur in an operand.
void einsum_acc(SparseTensor& out, const Q& coef, const SparseTensor& a, std::string_view la, const SparseTensor& b,
                std::string_view lb, std::string_view lo);
SparseTensor einsum(const Q& coef, const SparseTensor& a, std::string_view la, const SparseTensor& b,
                    std::string_view lb, std::string_view lo);
void einsum_acc(SparseTensor& out, const Q& coef, const SparseTensor& a, std::string_view la, std::string_view lo);
SparseTensor einsum(const Q& coef, const SparseTensor& a, std::string_view la, std::string_view lo);

// Unweighted averages over the listed slots.
SparseTensor alt(const SparseTensor& t, const std::vector<int>& slots);
SparseTensor sym(const SparseTensor& t, const std::vector<int>& slots);

// Outer product.
SparseTensor outer(const SparseTensor& a, const SparseTensor& b);

}  // namespace kt
