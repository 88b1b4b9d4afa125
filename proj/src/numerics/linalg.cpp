#include "kt/numerics/linalg.hpp"

#include <stdexcept>

namespace kt {

Backend parse_backend(const std::string& s) {
  if (s == "exact") return Backend::Exact;
  if (s == "float") return Backend::Float;
  throw std::invalid_argument("unknown backend: " + s);
}

std::string to_string(Backend b) { return b == Backend::Exact ? "exact" : "float"; }

SubspaceBasis SubspaceBasis::full(int n) {
  SubspaceBasis s{n, {}};
  for (int i = 0; i < n; ++i) {
    std::vector<Q> e(n);
    e[i] = 1;
    s.vectors.push_back(std::move(e));
  }
  return s;
}

void QEchelon::reduce(std::vector<Q>& r) const {
  Q f, t;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    int c = piv_[k];
    if (sgn(r[c]) == 0) continue;
    f = r[c];
    const auto& row = rows_[k];
    for (int j = c; j < n_; ++j) {
      if (sgn(row[j]) == 0) continue;
      t = f * row[j];
      r[j] -= t;
    }
  }
}

bool QEchelon::insert(std::vector<Q> r) {
  if (int(r.size()) != n_) throw std::invalid_argument("QEchelon: row length");
  reduce(r);
  int c = -1;
  for (int j = 0; j < n_; ++j)
    if (sgn(r[j]) != 0) {
      c = j;
      break;
    }
  if (c < 0) return false;
  Q inv = 1 / r[c];
  for (int j = c; j < n_; ++j)
    if (sgn(r[j]) != 0) r[j] *= inv;
  where_[c] = int(rows_.size());
  piv_.push_back(c);
  rows_.push_back(std::move(r));
  reduced_ = false;
  return true;
}

bool QEchelon::insert(const SparseVec& r) { return insert(to_dense(r, n_)); }

void QEchelon::make_reduced() {
  if (reduced_) return;
  Q f, t;
  for (int k = int(rows_.size()) - 1; k >= 0; --k) {
    int c = piv_[k];
    for (int i = 0; i < int(rows_.size()); ++i) {
      if (i == k || sgn(rows_[i][c]) == 0) continue;
      f = rows_[i][c];
      for (int j = c; j < n_; ++j) {
        if (sgn(rows_[k][j]) == 0) continue;
        t = f * rows_[k][j];
        rows_[i][j] -= t;
      }
    }
  }
  reduced_ = true;
}

SubspaceBasis QEchelon::kernel_basis() {
  make_reduced();
  SubspaceBasis s{n_, {}};
  for (int f = 0; f < n_; ++f) {
    if (where_[f] >= 0) continue;
    std::vector<Q> v(n_);
    v[f] = 1;
    for (std::size_t k = 0; k < rows_.size(); ++k)
      if (sgn(rows_[k][f]) != 0) v[piv_[k]] = -rows_[k][f];
    s.vectors.push_back(std::move(v));
  }
  return s;
}

SubspaceBasis kernel(const QMat& a) {
  QEchelon e(a.cols);
  for (int i = 0; i < a.rows; ++i) {
    std::vector<Q> r(a.a.begin() + std::size_t(i) * a.cols, a.a.begin() + std::size_t(i + 1) * a.cols);
    e.insert(std::move(r));
  }
  return e.kernel_basis();
}

SubspaceBasis kernel_stacked(const std::vector<SpMat>& mats) {
  if (mats.empty()) throw std::invalid_argument("kernel_stacked: no matrices");
  int n = mats[0].cols;
  QEchelon e(n);
  for (const auto& m : mats) {
    if (m.cols != n) throw std::invalid_argument("kernel_stacked: column mismatch");
    SpMat t = transpose(m);
    for (int i = 0; i < t.cols; ++i) {
      if (t.ptr[i] == t.ptr[i + 1]) continue;
      std::vector<Q> r(n);
      for (int p = t.ptr[i]; p < t.ptr[i + 1]; ++p) r[t.idx[p]] = t.val[p];
      e.insert(std::move(r));
      if (e.rank() == n) break;
    }
  }
  return e.kernel_basis();
}

SubspaceBasis kernel(const SpMat& a) { return kernel_stacked({a}); }

int rank(const QMat& a) {
  QEchelon e(a.cols);
  for (int i = 0; i < a.rows; ++i) {
    std::vector<Q> r(a.a.begin() + std::size_t(i) * a.cols, a.a.begin() + std::size_t(i + 1) * a.cols);
    e.insert(std::move(r));
  }
  return e.rank();
}

int rank(const SpMat& a) { return a.cols - kernel(a).dim(); }

int rank_of_vectors(const std::vector<std::vector<Q>>& vs, int ambient) {
  QEchelon e(ambient);
  for (const auto& v : vs) e.insert(v);
  return e.rank();
}

SubspaceBasis span(int ambient, const std::vector<std::vector<Q>>& vs) {
  QEchelon e(ambient);
  SubspaceBasis s{ambient, {}};
  for (const auto& v : vs)
    if (e.insert(v)) s.vectors.push_back(v);
  return s;
}

SubspaceBasis annihilator(const SubspaceBasis& s) {
  QEchelon e(s.ambient_dim);
  for (const auto& v : s.vectors) e.insert(v);
  return e.kernel_basis();
}

SubspaceBasis intersect(const SubspaceBasis& s1, const SubspaceBasis& s2) {
  if (s1.ambient_dim != s2.ambient_dim) throw std::invalid_argument("intersect: ambient mismatch");
  int n = s1.ambient_dim;
  // x ∈ S1 ∩ S2 iff x ∈ S1 and x is annihilated by Ann(S2).
  SubspaceBasis a2 = annihilator(s2);
  int d1 = s1.dim();
  QMat m(a2.dim(), d1);
  for (int i = 0; i < a2.dim(); ++i)
    for (int j = 0; j < d1; ++j) {
      Q acc;
      for (int k = 0; k < n; ++k)
        if (sgn(a2.vectors[i][k]) != 0 && sgn(s1.vectors[j][k]) != 0) acc += a2.vectors[i][k] * s1.vectors[j][k];
      m(i, j) = acc;
    }
  SubspaceBasis c = kernel(m);
  SubspaceBasis out{n, {}};
  for (const auto& cv : c.vectors) {
    std::vector<Q> x(n);
    for (int j = 0; j < d1; ++j)
      if (sgn(cv[j]) != 0)
        for (int k = 0; k < n; ++k) x[k] += cv[j] * s1.vectors[j][k];
    out.vectors.push_back(std::move(x));
  }
  return out;
}

SubspaceBasis sum(const SubspaceBasis& s1, const SubspaceBasis& s2) {
  if (s1.ambient_dim != s2.ambient_dim) throw std::invalid_argument("sum: ambient mismatch");
  auto vs = s1.vectors;
  vs.insert(vs.end(), s2.vectors.begin(), s2.vectors.end());
  return span(s1.ambient_dim, vs);
}

bool contains(const SubspaceBasis& s, const std::vector<Q>& v) {
  QEchelon e(s.ambient_dim);
  for (const auto& x : s.vectors) e.insert(x);
  std::vector<Q> r = v;
  e.reduce(r);
  for (const auto& x : r)
    if (sgn(x) != 0) return false;
  return true;
}

bool contains(const SubspaceBasis& s, const SubspaceBasis& t) {
  QEchelon e(s.ambient_dim);
  for (const auto& x : s.vectors) e.insert(x);
  for (const auto& v : t.vectors) {
    std::vector<Q> r = v;
    e.reduce(r);
    for (const auto& x : r)
      if (sgn(x) != 0) return false;
  }
  return true;
}

bool same_subspace(const SubspaceBasis& s, const SubspaceBasis& t) {
  return s.ambient_dim == t.ambient_dim && rank_of_vectors(s.vectors, s.ambient_dim) ==
                                               rank_of_vectors(t.vectors, t.ambient_dim) &&
         contains(s, t);
}

int rank_at_eigenvalue(const QMat& a, const Q& lambda) {
  if (a.rows != a.cols) throw std::invalid_argument("rank_at_eigenvalue: square matrix required");
  QMat b = a;
  for (int i = 0; i < a.rows; ++i) b(i, i) -= lambda;
  return a.rows - rank(b);
}

std::optional<std::vector<Q>> solve(const QMat& a, const std::vector<Q>& b) {
  if (int(b.size()) != a.rows) throw std::invalid_argument("solve: shape mismatch");
  QEchelon e(a.cols + 1);
  for (int i = 0; i < a.rows; ++i) {
    std::vector<Q> r(a.cols + 1);
    for (int j = 0; j < a.cols; ++j) r[j] = a(i, j);
    r[a.cols] = b[i];
    e.insert(std::move(r));
  }
  e.make_reduced();
  std::vector<Q> x(a.cols);
  for (std::size_t k = 0; k < e.rows().size(); ++k) {
    int c = e.pivots()[k];
    if (c == a.cols) return std::nullopt;
    x[c] = e.rows()[k][a.cols];
  }
  return x;
}

std::optional<QMat> solve_columns(const QMat& a, const QMat& b, int* rank_a) {
  if (b.rows != a.rows) throw std::invalid_argument("solve_columns: shape mismatch");
  const int m = a.cols, k = b.cols;
  QEchelon e(m + k);
  for (int i = 0; i < a.rows; ++i) {
    SparseVec r;
    for (int j = 0; j < m; ++j)
      if (sgn(a(i, j)) != 0) r.emplace_back(j, a(i, j));
    for (int j = 0; j < k; ++j)
      if (sgn(b(i, j)) != 0) r.emplace_back(m + j, b(i, j));
    if (!r.empty()) e.insert(r);
  }
  e.make_reduced();
  int ra = 0;
  for (int c : e.pivots()) ra += c < m;
  if (rank_a) *rank_a = ra;
  QMat x(m, k);
  for (std::size_t q = 0; q < e.rows().size(); ++q) {
    const int c = e.pivots()[q];
    if (c >= m) return std::nullopt;
    for (int j = 0; j < k; ++j) x(c, j) = e.rows()[q][m + j];
  }
  return x;
}

QMat inverse(const QMat& a) {
  if (a.rows != a.cols) throw std::invalid_argument("inverse: square matrix required");
  int n = a.rows;
  QEchelon e(2 * n);
  for (int i = 0; i < n; ++i) {
    std::vector<Q> r(2 * n);
    for (int j = 0; j < n; ++j) r[j] = a(i, j);
    r[n + i] = 1;
    e.insert(std::move(r));
  }
  e.make_reduced();
  QMat inv(n, n);
  for (int k = 0; k < n; ++k) {
    int c = e.pivots()[k];
    if (c >= n) throw std::domain_error("inverse: singular matrix");
    for (int j = 0; j < n; ++j) inv(c, j) = e.rows()[k][n + j];
  }
  if (e.rank() != n) throw std::domain_error("inverse: singular matrix");
  return inv;
}

FixpointTrace invariant_subspace_reference(const SubspaceBasis& v0, const std::vector<SpMat>& ops) {
  for (const auto& op : ops)
    if (op.rows != v0.ambient_dim || op.cols != v0.ambient_dim)
      throw std::invalid_argument("invariant_subspace_reference: dimension mismatch");
  FixpointTrace out{v0, {v0.dim()}};
  int n = v0.ambient_dim;
  while (true) {
    const auto& w = out.basis;
    int d = w.dim();
    if (d == 0) break;
    SubspaceBasis ann = annihilator(w);
    // Stacked map c ↦ (Ann(W)·op·B·c) over all ops.
    std::vector<std::vector<Q>> cols(d);
    for (int j = 0; j < d; ++j) {
      for (const auto& op : ops) {
        std::vector<Q> y = apply(op, w.vectors[j]);
        for (const auto& a : ann.vectors) {
          Q acc;
          for (int k = 0; k < n; ++k)
            if (sgn(a[k]) != 0 && sgn(y[k]) != 0) acc += a[k] * y[k];
          cols[j].push_back(acc);
        }
      }
    }
    int rows = d == 0 ? 0 : int(cols[0].size());
    QMat m(rows, d);
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    SubspaceBasis c = kernel(m);
    if (c.dim() == d) break;
    SubspaceBasis next{n, {}};
    for (const auto& cv : c.vectors) {
      std::vector<Q> x(n);
      for (int j = 0; j < d; ++j)
        if (sgn(cv[j]) != 0)
          for (int k = 0; k < n; ++k)
            if (sgn(w.vectors[j][k]) != 0) x[k] += cv[j] * w.vectors[j][k];
      next.vectors.push_back(std::move(x));
    }
    out.basis = std::move(next);
    out.trace.push_back(out.basis.dim());
  }
  return out;
}

}  // namespace kt
