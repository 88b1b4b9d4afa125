#pragma once

#include "kt/numerics/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace kt {

// Dense row-major rational matrix.
struct QMat {
  int rows = 0;
  int cols = 0;
  std::vector<Q> a;

  QMat() = default;
  QMat(int r, int c) : rows(r), cols(c), a(std::size_t(r) * std::size_t(c)) {}

  Q& operator()(int i, int j) { return a[std::size_t(i) * cols + j]; }
  const Q& operator()(int i, int j) const { return a[std::size_t(i) * cols + j]; }

  static QMat identity(int n);
  QMat transpose() const;
  bool is_zero() const;
  std::vector<Q> column(int j) const;
  void set_column(int j, const std::vector<Q>& v);
};

QMat operator*(const QMat& x, const QMat& y);
QMat operator+(const QMat& x, const QMat& y);
QMat operator-(const QMat& x, const QMat& y);
QMat operator*(const Q& s, const QMat& x);
bool operator==(const QMat& x, const QMat& y);
std::vector<Q> operator*(const QMat& x, const std::vector<Q>& v);

// Column-stacked dense matrix from a list of columns.
QMat from_columns(int rows, const std::vector<std::vector<Q>>& cols);

using SparseVec = std::vector<std::pair<int, Q>>;

// Compressed sparse column matrix. Entries within a column are sorted by row
// and never zero.
template <class T>
struct Csc {
  int rows = 0;
  int cols = 0;
  std::vector<int> ptr;
  std::vector<int> idx;
  std::vector<T> val;

  Csc() = default;
  Csc(int r, int c) : rows(r), cols(c), ptr(std::size_t(c) + 1, 0) {}

  std::size_t nnz() const { return val.size(); }
  int col_begin(int j) const { return ptr[j]; }
  int col_end(int j) const { return ptr[j + 1]; }
};

using SpMat = Csc<Q>;

SpMat sparse_from_columns(int rows, const std::vector<SparseVec>& cols);
SpMat sparse_from_dense(const QMat& m);
QMat to_dense(const SpMat& m);
SpMat sparse_identity(int n);
SpMat sparse_zero(int rows, int cols);

SpMat operator*(const SpMat& x, const SpMat& y);
SpMat operator+(const SpMat& x, const SpMat& y);
SpMat operator-(const SpMat& x, const SpMat& y);
SpMat operator*(const Q& s, const SpMat& x);
bool operator==(const SpMat& x, const SpMat& y);
SpMat transpose(const SpMat& x);
SpMat commutator(const SpMat& x, const SpMat& y);
bool is_zero(const SpMat& x);

std::vector<Q> apply(const SpMat& m, const std::vector<Q>& v);
SparseVec apply(const SpMat& m, const SparseVec& v);
// Row vector times matrix.
std::vector<Q> left_apply(const std::vector<Q>& r, const SpMat& m);

// Block placement: embeds x at (row0, col0) of a rows×cols matrix.
SpMat place_block(const SpMat& x, int rows, int cols, int row0, int col0);
SpMat hstack(const std::vector<SpMat>& parts);
SpMat vstack(const std::vector<SpMat>& parts);
SpMat block_column(const SpMat& x, int col0, int ncols);
SpMat block_rows(const SpMat& x, int row0, int nrows);

SparseVec to_sparse(const std::vector<Q>& v);
std::vector<Q> to_dense(const SparseVec& v, int n);

}  // namespace kt
