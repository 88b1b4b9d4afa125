#include "kt/numerics/modp.hpp"

#include <algorithm>
#include <stdexcept>

namespace kt {

u64 Field::pow(u64 a, u64 e) const {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

u64 Field::inv(u64 a) const {
  if (a == 0) throw std::domain_error("Field::inv: zero");
  return pow(a, p - 2);
}

static u64 mpz_mod_u64(const mpz_class& z, u64 p) {
  mpz_class r;
  mpz_class pp;
  mpz_import(pp.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &p);
  mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), pp.get_mpz_t());
  u64 out = 0;
  std::size_t cnt = 0;
  mpz_export(&out, &cnt, 1, sizeof(u64), 0, 0, r.get_mpz_t());
  return cnt ? out : 0;
}

u64 Field::reduce(const Q& q) const {
  u64 d = mpz_mod_u64(q.get_den(), p);
  if (d == 0) throw std::domain_error("Field::reduce: prime divides a denominator");
  return mul(mpz_mod_u64(q.get_num(), p), inv(d));
}

const std::vector<u64>& modular_primes() {
  static const std::vector<u64> primes = [] {
    std::vector<u64> ps{kMersenne61};
    mpz_class c = (mpz_class(1) << 61) - 1;
    while (ps.size() < 8) {
      mpz_sub_ui(c.get_mpz_t(), c.get_mpz_t(), 2);
      if (mpz_probab_prime_p(c.get_mpz_t(), 40)) ps.push_back(c.get_ui());
    }
    return ps;
  }();
  return primes;
}

ModMat reduce(const SpMat& m, const Field& f) {
  ModMat out(m.rows, m.cols);
  out.idx.reserve(m.nnz());
  out.val.reserve(m.nnz());
  for (int j = 0; j < m.cols; ++j) {
    for (int p = m.ptr[j]; p < m.ptr[j + 1]; ++p) {
      u64 v = f.reduce(m.val[p]);
      if (v == 0) continue;
      out.idx.push_back(m.idx[p]);
      out.val.push_back(v);
    }
    out.ptr[j + 1] = int(out.idx.size());
  }
  return out;
}

Csc<double> to_double(const SpMat& m) {
  Csc<double> out(m.rows, m.cols);
  out.ptr = m.ptr;
  out.idx = m.idx;
  out.val.reserve(m.nnz());
  for (const auto& v : m.val) out.val.push_back(v.get_d());
  return out;
}

void left_apply(const Field& f, const std::vector<u64>& r, const ModMat& m, std::vector<u64>& out) {
  out.assign(m.cols, 0);
  for (int j = 0; j < m.cols; ++j) {
    u64 acc = 0;
    for (int p = m.ptr[j]; p < m.ptr[j + 1]; ++p) {
      u64 x = r[m.idx[p]];
      if (x) acc = f.add(acc, f.mul(x, m.val[p]));
    }
    out[j] = acc;
  }
}

std::optional<Q> rational_reconstruct(const mpz_class& a, const mpz_class& m) {
  // Extended Euclid on (m, a) stopped at the half-size bound.
  mpz_class bound;
  mpz_class half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  mpz_class r0 = m, r1 = a % m;
  if (r1 < 0) r1 += m;
  mpz_class t0 = 0, t1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1;
    mpz_class t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (abs(t1) > bound || t1 == 0) return std::nullopt;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return std::nullopt;
  Q out(r1, t1);
  out.canonicalize();
  return out;
}

void ModEchelon::reduce(std::vector<u64>& r) const { reduce_from(r, 0); }

void ModEchelon::reduce_from(std::vector<u64>& r, int first) const {
  for (std::size_t k = std::size_t(first); k < rows_.size(); ++k) {
    int c = piv_[k];
    u64 x = r[c];
    if (x == 0) continue;
    u64 m = f_.neg(x);
    const auto& row = rows_[k];
    for (int j = c; j < n_; ++j)
      if (row[j]) r[j] = f_.add(r[j], f_.mul(m, row[j]));
  }
}

bool ModEchelon::insert_reduced(std::vector<u64> r) {
  int c = -1;
  for (int j = 0; j < n_; ++j)
    if (r[j]) {
      c = j;
      break;
    }
  if (c < 0) return false;
  if (where_[c] >= 0) throw std::logic_error("ModEchelon: row not reduced");
  u64 inv = f_.inv(r[c]);
  for (int j = c; j < n_; ++j)
    if (r[j]) r[j] = f_.mul(r[j], inv);
  where_[c] = int(rows_.size());
  piv_.push_back(c);
  rows_.push_back(std::move(r));
  reduced_ = false;
  return true;
}

bool ModEchelon::insert(std::vector<u64> r) {
  if (int(r.size()) != n_) throw std::invalid_argument("ModEchelon: row length");
  reduce(r);
  return insert_reduced(std::move(r));
}

void ModEchelon::make_reduced() {
  if (reduced_) return;
  // Order rows by pivot so back substitution runs right to left.
  std::vector<int> order(rows_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = int(i);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return piv_[x] < piv_[y]; });
  std::vector<std::vector<u64>> rows;
  std::vector<int> piv;
  for (int k : order) {
    rows.push_back(std::move(rows_[k]));
    piv.push_back(piv_[k]);
  }
  rows_ = std::move(rows);
  piv_ = std::move(piv);
  for (std::size_t k = 0; k < rows_.size(); ++k) where_[piv_[k]] = int(k);
  for (int k = int(rows_.size()) - 1; k >= 0; --k) {
    int c = piv_[k];
    for (int i = 0; i < k; ++i) {
      u64 x = rows_[i][c];
      if (!x) continue;
      u64 m = f_.neg(x);
      for (int j = c; j < n_; ++j)
        if (rows_[k][j]) rows_[i][j] = f_.add(rows_[i][j], f_.mul(m, rows_[k][j]));
    }
  }
  reduced_ = true;
}

std::vector<int> ModEchelon::free_columns() const {
  std::vector<int> out;
  for (int j = 0; j < n_; ++j)
    if (where_[j] < 0) out.push_back(j);
  return out;
}

int rank_mod(const SpMat& m, const Field& f) {
  SpMat t = transpose(m);
  ModMat tm = reduce(t, f);
  ModEchelon e(m.cols, f);
  for (int i = 0; i < tm.cols; ++i) {
    if (tm.ptr[i] == tm.ptr[i + 1]) continue;
    std::vector<u64> r(m.cols, 0);
    for (int p = tm.ptr[i]; p < tm.ptr[i + 1]; ++p) r[tm.idx[p]] = tm.val[p];
    e.insert(std::move(r));
    if (e.rank() == m.cols) break;
  }
  return e.rank();
}

}  // namespace kt
