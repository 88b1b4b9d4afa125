#include "kt/numerics/matrix.hpp"

#include <algorithm>

namespace kt {

QMat QMat::identity(int n) {
  QMat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMat QMat::transpose() const {
  QMat t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool QMat::is_zero() const {
  for (const auto& x : a)
    if (sgn(x) != 0) return false;
  return true;
}

std::vector<Q> QMat::column(int j) const {
  std::vector<Q> v(rows);
  for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
  return v;
}

void QMat::set_column(int j, const std::vector<Q>& v) {
  for (int i = 0; i < rows; ++i) (*this)(i, j) = v[i];
}

QMat operator*(const QMat& x, const QMat& y) {
  if (x.cols != y.rows) throw std::invalid_argument("QMat product: shape mismatch");
  QMat z(x.rows, y.cols);
  Q t;
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const Q& xik = x(i, k);
      if (sgn(xik) == 0) continue;
      for (int j = 0; j < y.cols; ++j) {
        const Q& ykj = y(k, j);
        if (sgn(ykj) == 0) continue;
        t = xik * ykj;
        z(i, j) += t;
      }
    }
  return z;
}

QMat operator+(const QMat& x, const QMat& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("QMat sum: shape mismatch");
  QMat z = x;
  for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] += y.a[i];
  return z;
}

QMat operator-(const QMat& x, const QMat& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("QMat difference: shape mismatch");
  QMat z = x;
  for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] -= y.a[i];
  return z;
}

QMat operator*(const Q& s, const QMat& x) {
  QMat z = x;
  for (auto& e : z.a) e *= s;
  return z;
}

bool operator==(const QMat& x, const QMat& y) {
  return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
}

std::vector<Q> operator*(const QMat& x, const std::vector<Q>& v) {
  if (int(v.size()) != x.cols) throw std::invalid_argument("QMat apply: shape mismatch");
  std::vector<Q> out(x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j)
      if (sgn(x(i, j)) != 0 && sgn(v[j]) != 0) out[i] += x(i, j) * v[j];
  return out;
}

QMat from_columns(int rows, const std::vector<std::vector<Q>>& cols) {
  QMat m(rows, int(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(int(j), cols[j]);
  return m;
}

SpMat sparse_from_columns(int rows, const std::vector<SparseVec>& cols) {
  SpMat m(rows, int(cols.size()));
  SparseVec c;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    c = cols[j];
    std::stable_sort(c.begin(), c.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
    std::size_t k = 0;
    while (k < c.size()) {
      int i = c[k].first;
      if (i < 0 || i >= rows) throw std::out_of_range("sparse_from_columns: row index");
      Q s = c[k].second;
      std::size_t l = k + 1;
      for (; l < c.size() && c[l].first == i; ++l) s += c[l].second;
      if (sgn(s) != 0) {
        m.idx.push_back(i);
        m.val.push_back(s);
      }
      k = l;
    }
    m.ptr[j + 1] = int(m.idx.size());
  }
  return m;
}

SpMat sparse_from_dense(const QMat& d) {
  std::vector<SparseVec> cols(d.cols);
  for (int j = 0; j < d.cols; ++j)
    for (int i = 0; i < d.rows; ++i)
      if (sgn(d(i, j)) != 0) cols[j].emplace_back(i, d(i, j));
  return sparse_from_columns(d.rows, cols);
}

QMat to_dense(const SpMat& m) {
  QMat d(m.rows, m.cols);
  for (int j = 0; j < m.cols; ++j)
    for (int p = m.ptr[j]; p < m.ptr[j + 1]; ++p) d(m.idx[p], j) = m.val[p];
  return d;
}

SpMat sparse_identity(int n) {
  SpMat m(n, n);
  for (int j = 0; j < n; ++j) {
    m.idx.push_back(j);
    m.val.emplace_back(1);
    m.ptr[j + 1] = j + 1;
  }
  return m;
}

SpMat sparse_zero(int rows, int cols) { return SpMat(rows, cols); }

namespace {

// Accumulates a sparse column with a dense scratch array and a touched list.
struct ColumnAccumulator {
  std::vector<Q> acc;
  std::vector<char> mark;
  std::vector<int> touched;
  explicit ColumnAccumulator(int n) : acc(n), mark(n, 0) {}
  void add(int i, const Q& v) {
    if (!mark[i]) {
      mark[i] = 1;
      touched.push_back(i);
      acc[i] = v;
    } else {
      acc[i] += v;
    }
  }
  void flush(SpMat& out) {
    std::sort(touched.begin(), touched.end());
    for (int i : touched) {
      if (sgn(acc[i]) != 0) {
        out.idx.push_back(i);
        out.val.push_back(acc[i]);
      }
      mark[i] = 0;
    }
    touched.clear();
  }
};

}  // namespace

SpMat operator*(const SpMat& x, const SpMat& y) {
  if (x.cols != y.rows) throw std::invalid_argument("SpMat product: shape mismatch");
  SpMat z(x.rows, y.cols);
  ColumnAccumulator acc(x.rows);
  Q t;
  for (int j = 0; j < y.cols; ++j) {
    for (int p = y.ptr[j]; p < y.ptr[j + 1]; ++p) {
      int k = y.idx[p];
      const Q& ykj = y.val[p];
      for (int q = x.ptr[k]; q < x.ptr[k + 1]; ++q) {
        t = x.val[q] * ykj;
        acc.add(x.idx[q], t);
      }
    }
    acc.flush(z);
    z.ptr[j + 1] = int(z.idx.size());
  }
  return z;
}

static SpMat combine(const SpMat& x, const SpMat& y, int sign) {
  if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("SpMat sum: shape mismatch");
  SpMat z(x.rows, x.cols);
  for (int j = 0; j < x.cols; ++j) {
    int p = x.ptr[j], pe = x.ptr[j + 1], q = y.ptr[j], qe = y.ptr[j + 1];
    while (p < pe || q < qe) {
      if (q >= qe || (p < pe && x.idx[p] < y.idx[q])) {
        z.idx.push_back(x.idx[p]);
        z.val.push_back(x.val[p]);
        ++p;
      } else if (p >= pe || y.idx[q] < x.idx[p]) {
        z.idx.push_back(y.idx[q]);
        z.val.push_back(sign > 0 ? Q(y.val[q]) : Q(-y.val[q]));
        ++q;
      } else {
        Q s = sign > 0 ? Q(x.val[p] + y.val[q]) : Q(x.val[p] - y.val[q]);
        if (sgn(s) != 0) {
          z.idx.push_back(x.idx[p]);
          z.val.push_back(s);
        }
        ++p;
        ++q;
      }
    }
    z.ptr[j + 1] = int(z.idx.size());
  }
  return z;
}

SpMat operator+(const SpMat& x, const SpMat& y) { return combine(x, y, 1); }
SpMat operator-(const SpMat& x, const SpMat& y) { return combine(x, y, -1); }

SpMat operator*(const Q& s, const SpMat& x) {
  if (sgn(s) == 0) return SpMat(x.rows, x.cols);
  SpMat z = x;
  for (auto& v : z.val) v *= s;
  return z;
}

bool operator==(const SpMat& x, const SpMat& y) {
  return x.rows == y.rows && x.cols == y.cols && x.ptr == y.ptr && x.idx == y.idx && x.val == y.val;
}

SpMat transpose(const SpMat& x) {
  std::vector<SparseVec> cols(x.rows);
  for (int j = 0; j < x.cols; ++j)
    for (int p = x.ptr[j]; p < x.ptr[j + 1]; ++p) cols[x.idx[p]].emplace_back(j, x.val[p]);
  return sparse_from_columns(x.cols, cols);
}

SpMat commutator(const SpMat& x, const SpMat& y) { return x * y - y * x; }

bool is_zero(const SpMat& x) { return x.val.empty(); }

std::vector<Q> apply(const SpMat& m, const std::vector<Q>& v) {
  if (int(v.size()) != m.cols) throw std::invalid_argument("SpMat apply: shape mismatch");
  std::vector<Q> out(m.rows);
  Q t;
  for (int j = 0; j < m.cols; ++j) {
    if (sgn(v[j]) == 0) continue;
    for (int p = m.ptr[j]; p < m.ptr[j + 1]; ++p) {
      t = m.val[p] * v[j];
      out[m.idx[p]] += t;
    }
  }
  return out;
}

SparseVec apply(const SpMat& m, const SparseVec& v) {
  ColumnAccumulator acc(m.rows);
  Q t;
  for (const auto& [j, x] : v)
    for (int p = m.ptr[j]; p < m.ptr[j + 1]; ++p) {
      t = m.val[p] * x;
      acc.add(m.idx[p], t);
    }
  SpMat tmp(m.rows, 1);
  acc.flush(tmp);
  SparseVec out;
  out.reserve(tmp.idx.size());
  for (std::size_t k = 0; k < tmp.idx.size(); ++k) out.emplace_back(tmp.idx[k], tmp.val[k]);
  return out;
}

std::vector<Q> left_apply(const std::vector<Q>& r, const SpMat& m) {
  if (int(r.size()) != m.rows) throw std::invalid_argument("SpMat left_apply: shape mismatch");
  std::vector<Q> out(m.cols);
  Q t;
  for (int j = 0; j < m.cols; ++j)
    for (int p = m.ptr[j]; p < m.ptr[j + 1]; ++p) {
      if (sgn(r[m.idx[p]]) == 0) continue;
      t = r[m.idx[p]] * m.val[p];
      out[j] += t;
    }
  return out;
}

SpMat place_block(const SpMat& x, int rows, int cols, int row0, int col0) {
  if (row0 + x.rows > rows || col0 + x.cols > cols) throw std::out_of_range("place_block");
  SpMat z(rows, cols);
  for (int j = 0; j < cols; ++j) {
    int jj = j - col0;
    if (jj >= 0 && jj < x.cols)
      for (int p = x.ptr[jj]; p < x.ptr[jj + 1]; ++p) {
        z.idx.push_back(x.idx[p] + row0);
        z.val.push_back(x.val[p]);
      }
    z.ptr[j + 1] = int(z.idx.size());
  }
  return z;
}

SpMat hstack(const std::vector<SpMat>& parts) {
  if (parts.empty()) return SpMat();
  int rows = parts[0].rows, cols = 0;
  for (const auto& p : parts) {
    if (p.rows != rows) throw std::invalid_argument("hstack: row mismatch");
    cols += p.cols;
  }
  SpMat z(rows, cols);
  int j0 = 0;
  for (const auto& x : parts) {
    for (int j = 0; j < x.cols; ++j) {
      for (int p = x.ptr[j]; p < x.ptr[j + 1]; ++p) {
        z.idx.push_back(x.idx[p]);
        z.val.push_back(x.val[p]);
      }
      z.ptr[j0 + j + 1] = int(z.idx.size());
    }
    j0 += x.cols;
  }
  return z;
}

SpMat vstack(const std::vector<SpMat>& parts) {
  if (parts.empty()) return SpMat();
  int cols = parts[0].cols, rows = 0;
  for (const auto& p : parts) {
    if (p.cols != cols) throw std::invalid_argument("vstack: column mismatch");
    rows += p.rows;
  }
  SpMat z(rows, cols);
  for (int j = 0; j < cols; ++j) {
    int r0 = 0;
    for (const auto& x : parts) {
      for (int p = x.ptr[j]; p < x.ptr[j + 1]; ++p) {
        z.idx.push_back(x.idx[p] + r0);
        z.val.push_back(x.val[p]);
      }
      r0 += x.rows;
    }
    z.ptr[j + 1] = int(z.idx.size());
  }
  return z;
}

SpMat block_column(const SpMat& x, int col0, int ncols) {
  SpMat z(x.rows, ncols);
  for (int j = 0; j < ncols; ++j) {
    for (int p = x.ptr[col0 + j]; p < x.ptr[col0 + j + 1]; ++p) {
      z.idx.push_back(x.idx[p]);
      z.val.push_back(x.val[p]);
    }
    z.ptr[j + 1] = int(z.idx.size());
  }
  return z;
}

SpMat block_rows(const SpMat& x, int row0, int nrows) {
  SpMat z(nrows, x.cols);
  for (int j = 0; j < x.cols; ++j) {
    for (int p = x.ptr[j]; p < x.ptr[j + 1]; ++p)
      if (x.idx[p] >= row0 && x.idx[p] < row0 + nrows) {
        z.idx.push_back(x.idx[p] - row0);
        z.val.push_back(x.val[p]);
      }
    z.ptr[j + 1] = int(z.idx.size());
  }
  return z;
}

SparseVec to_sparse(const std::vector<Q>& v) {
  SparseVec s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) s.emplace_back(int(i), v[i]);
  return s;
}

std::vector<Q> to_dense(const SparseVec& v, int n) {
  std::vector<Q> d(n);
  for (const auto& [i, x] : v) d[i] = x;
  return d;
}

}  // namespace kt
