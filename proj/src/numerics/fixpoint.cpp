#include "kt/numerics/fixpoint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kt {

SubspaceBasis CanonicalBasis::basis() const {
  SubspaceBasis out{n, {}};
  out.vectors.assign(free_cols.size(), std::vector<Q>(n));
  for (std::size_t f = 0; f < free_cols.size(); ++f) out.vectors[f][free_cols[f]] = 1;
  for (std::size_t k = 0; k < pivot_cols.size(); ++k)
    for (const auto& [f, v] : pivot_rows[k]) out.vectors[f][pivot_cols[k]] = v;
  return out;
}

std::optional<std::vector<Q>> CanonicalBasis::coords(const std::vector<Q>& y) const {
  std::vector<Q> c(free_cols.size());
  for (std::size_t f = 0; f < free_cols.size(); ++f) c[f] = y[free_cols[f]];
  Q acc;
  for (std::size_t k = 0; k < pivot_cols.size(); ++k) {
    acc = 0;
    for (const auto& [f, v] : pivot_rows[k])
      if (!is_zero(c[f])) acc += c[f] * v;
    if (acc != y[pivot_cols[k]]) return std::nullopt;
  }
  return c;
}

SpMat rows_matrix(int n, const std::vector<std::vector<Q>>& rows) {
  std::vector<SparseVec> cols;
  cols.reserve(rows.size());
  for (const auto& r : rows) cols.push_back(to_sparse(r));
  return transpose(sparse_from_columns(n, cols));
}

namespace {

u64 splitmix(u64 x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

u64 sketch_coef(int r, long row) { return splitmix((u64(r) << 40) ^ u64(row)); }

// t random combinations of all seed rows, in dense form.
// tr holds the transposed seeds, so each column is one seed row.
template <class T, class V, class Coef, class Fma>
std::vector<std::vector<T>> sketch_rows(int n, const std::vector<Csc<V>>& tr, int t, Coef coef, Fma fma,
                                        bool parallel) {
  std::vector<std::vector<T>> out(std::size_t(t), std::vector<T>(n, T(0)));
#pragma omp parallel for schedule(static) if (parallel)
  for (int r = 0; r < t; ++r) {
    long row = 0;
    for (const auto& m : tr)
      for (int j = 0; j < m.cols; ++j, ++row) {
        if (m.ptr[j] == m.ptr[j + 1]) continue;
        const T g = coef(r, row);
        for (int p = m.ptr[j]; p < m.ptr[j + 1]; ++p) fma(out[r][m.idx[p]], g, m.val[p]);
      }
  }
  return out;
}

void dense_row(const ModMat& t, int j, std::vector<u64>& r) {
  std::fill(r.begin(), r.end(), 0);
  for (int p = t.ptr[j]; p < t.ptr[j + 1]; ++p) r[t.idx[p]] = t.val[p];
}

bool nonzero(const std::vector<u64>& r) {
  for (u64 x : r)
    if (x) return true;
  return false;
}

// Reduces the candidates against the first k0 rows (in parallel), then
// inserts them one by one in their original order.
std::vector<int> absorb_mod(ModEchelon& e, std::vector<std::vector<u64>>& cands, bool parallel) {
  const int k0 = e.rank();
  const long m = long(cands.size());
#pragma omp parallel for schedule(static) if (parallel)
  for (long i = 0; i < m; ++i) e.reduce_from(cands[i], 0);
  std::vector<int> added;
  for (auto& c : cands) {
    if (e.rank() == e.ambient()) break;
    e.reduce_from(c, k0);
    if (e.insert_reduced(std::move(c))) added.push_back(e.rank() - 1);
  }
  return added;
}

}  // namespace

std::vector<int> absorb_rows(ModEchelon& e, std::vector<std::vector<u64>>& rows, bool parallel) {
  std::vector<std::vector<u64>> keep;
  for (auto& r : rows)
    if (nonzero(r)) keep.push_back(std::move(r));
  return absorb_mod(e, keep, parallel);
}

ModClosure kernel_closure_mod(int n, const std::vector<SpMat>& seeds, const std::vector<SpMat>& ops,
                              const Field& f, bool parallel, int block, int sketch) {
  ModClosure out{ModEchelon(n, f), {}};
  ModEchelon& e = out.ech;
  std::vector<ModMat> mops;
  for (const auto& op : ops) {
    if (op.rows != n || op.cols != n) throw std::invalid_argument("kernel_closure: op dimension");
    mops.push_back(reduce(op, f));
  }
  std::vector<int> frontier;
  for (const auto& s : seeds)
    if (s.cols != n) throw std::invalid_argument("kernel_closure: seed dimension");
  if (sketch > 0) {
    std::vector<ModMat> tr;
    for (const auto& s : seeds) tr.push_back(reduce(transpose(s), f));
    auto rows = sketch_rows<u64>(
        n, tr, sketch, [&](int r, long row) { return sketch_coef(r, row) % f.p; },
        [&](u64& acc, u64 g, u64 v) { acc = f.add(acc, f.mul(g, v)); }, parallel);
    for (std::size_t j0 = 0; j0 < rows.size() && e.rank() < n; j0 += block) {
      std::vector<std::vector<u64>> cands;
      for (std::size_t j = j0; j < std::min(rows.size(), j0 + block); ++j)
        if (nonzero(rows[j])) cands.push_back(std::move(rows[j]));
      auto add = absorb_mod(e, cands, parallel);
      frontier.insert(frontier.end(), add.begin(), add.end());
    }
  }
  for (const auto& s : sketch > 0 ? std::vector<SpMat>{} : seeds) {
    ModMat t = reduce(transpose(s), f);
    for (int j0 = 0; j0 < t.cols && e.rank() < n; j0 += block) {
      std::vector<std::vector<u64>> cands;
      for (int j = j0; j < std::min(t.cols, j0 + block); ++j) {
        if (t.ptr[j] == t.ptr[j + 1]) continue;
        cands.emplace_back(n, 0);
        dense_row(t, j, cands.back());
      }
      auto add = absorb_mod(e, cands, parallel);
      frontier.insert(frontier.end(), add.begin(), add.end());
    }
  }
  out.trace.push_back(n - e.rank());
  const int nops = int(mops.size());
  while (!frontier.empty() && e.rank() < n) {
    std::vector<int> next;
    const long total = long(frontier.size()) * nops;
    for (long c0 = 0; c0 < total && e.rank() < n; c0 += block) {
      const long c1 = std::min(total, c0 + block);
      std::vector<std::vector<u64>> cands(std::size_t(c1 - c0));
#pragma omp parallel for schedule(static) if (parallel)
      for (long c = c0; c < c1; ++c) {
        const auto& row = e.rows()[frontier[c / nops]];
        left_apply(f, row, mops[c % nops], cands[c - c0]);
      }
      std::vector<std::vector<u64>> keep;
      for (auto& c : cands)
        if (nonzero(c)) keep.push_back(std::move(c));
      auto add = absorb_mod(e, keep, parallel);
      next.insert(next.end(), add.begin(), add.end());
    }
    frontier = std::move(next);
    out.trace.push_back(n - e.rank());
  }
  return out;
}

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
constexpr int kTile = 256;

// B -= (B Q^T) Q over the first r rows of Q. Tiles have a fixed size, so
// every entry is summed in the same order whatever the thread count.
void project_out(RowMat& b, const RowMat& q, int r, bool parallel) {
  if (r == 0 || b.rows() == 0) return;
  const int n = int(q.cols());
  const int nb = int(b.rows());
  RowMat p(nb, r);
  const int rt = (r + kTile - 1) / kTile;
#pragma omp parallel for schedule(static) if (parallel)
  for (int t = 0; t < rt; ++t) {
    const int t0 = t * kTile, len = std::min(kTile, r - t0);
    p.middleCols(t0, len).noalias() = b * q.middleRows(t0, len).transpose();
  }
  const int ct = (n + kTile - 1) / kTile;
#pragma omp parallel for schedule(static) if (parallel)
  for (int t = 0; t < ct; ++t) {
    const int t0 = t * kTile, len = std::min(kTile, n - t0);
    b.middleCols(t0, len).noalias() -= p * q.block(0, t0, r, len);
  }
}

// A row is new if its residual exceeds tol times max(its norm, floor[i]).
std::vector<int> absorb_float(RowMat& q, int& r, RowMat& b, double tol, bool parallel,
                              const std::vector<double>& floor = {}) {
  const int nb = int(b.rows());
  std::vector<double> norm0(nb);
  for (int i = 0; i < nb; ++i) norm0[i] = b.row(i).norm();
  const int r0 = r;
  project_out(b, q, r0, parallel);
  project_out(b, q, r0, parallel);
  std::vector<int> added;
  for (int i = 0; i < nb && r < q.rows(); ++i) {
    if (norm0[i] == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass)
      for (int k = r0; k < r; ++k) b.row(i) -= b.row(i).dot(q.row(k)) * q.row(k);
    double nr = b.row(i).norm();
    if (nr <= tol * std::max(norm0[i], floor.empty() ? 0.0 : floor[i])) continue;
    q.row(r) = b.row(i) / nr;
    added.push_back(r);
    ++r;
  }
  return added;
}

void left_apply_float(const double* r, const Csc<double>& m, double* out) {
  for (int j = 0; j < m.cols; ++j) {
    double acc = 0;
    for (int p = m.ptr[j]; p < m.ptr[j + 1]; ++p) acc += r[m.idx[p]] * m.val[p];
    out[j] = acc;
  }
}

}  // namespace

FloatClosure kernel_closure_float(int n, const std::vector<SpMat>& seeds, const std::vector<SpMat>& ops,
                                  double tol, bool parallel, int block, int sketch) {
  Eigen::setNbThreads(1);
  FloatClosure out;
  RowMat q(n, n);
  int r = 0;
  std::vector<Csc<double>> dops;
  std::vector<double> scale;
  for (const auto& op : ops) {
    dops.push_back(to_double(op));
    double f = 0;
    for (double v : dops.back().val) f += v * v;
    scale.push_back(std::sqrt(f));
  }
  std::vector<int> frontier;
  if (sketch > 0) {
    std::vector<Csc<double>> tr;
    for (const auto& s : seeds) tr.push_back(to_double(transpose(s)));
    auto rows = sketch_rows<double>(
        n, tr, sketch, [](int i, long row) { return double(sketch_coef(i, row) >> 11) * 0x1.0p-53 * 2.0 - 1.0; },
        [](double& acc, double g, double v) { acc += g * v; }, parallel);
    for (int j0 = 0; j0 < sketch && r < n; j0 += block) {
      const int j1 = std::min(sketch, j0 + block);
      RowMat b(j1 - j0, n);
      for (int j = j0; j < j1; ++j)
        for (int i = 0; i < n; ++i) b(j - j0, i) = rows[j][i];
      auto add = absorb_float(q, r, b, tol, parallel);
      frontier.insert(frontier.end(), add.begin(), add.end());
    }
  }
  for (const auto& s : sketch > 0 ? std::vector<SpMat>{} : seeds) {
    Csc<double> t = to_double(transpose(s));
    for (int j0 = 0; j0 < t.cols && r < n; j0 += block) {
      const int j1 = std::min(t.cols, j0 + block);
      RowMat b = RowMat::Zero(j1 - j0, n);
      for (int j = j0; j < j1; ++j)
        for (int p = t.ptr[j]; p < t.ptr[j + 1]; ++p) b(j - j0, t.idx[p]) = t.val[p];
      auto add = absorb_float(q, r, b, tol, parallel);
      frontier.insert(frontier.end(), add.begin(), add.end());
    }
  }
  out.trace.push_back(n - r);
  const int nops = int(dops.size());
  while (!frontier.empty() && r < n) {
    std::vector<int> next;
    const long total = long(frontier.size()) * nops;
    for (long c0 = 0; c0 < total && r < n; c0 += block) {
      const long c1 = std::min(total, c0 + block);
      RowMat b(c1 - c0, n);
      std::vector<double> floor(c1 - c0);
#pragma omp parallel for schedule(static) if (parallel)
      for (long c = c0; c < c1; ++c) {
        left_apply_float(q.row(frontier[c / nops]).data(), dops[c % nops], b.row(c - c0).data());
        floor[c - c0] = scale[c % nops];
      }
      auto add = absorb_float(q, r, b, tol, parallel, floor);
      next.insert(next.end(), add.begin(), add.end());
    }
    frontier = std::move(next);
    out.trace.push_back(n - r);
  }
  out.rank = r;
  out.rows = q.topRows(r);
  return out;
}

namespace {

mpz_class to_mpz(u64 x) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &x);
  return z;
}

}  // namespace

std::optional<CanonicalBasis> lift_kernel(const std::vector<const ModEchelon*>& echs) {
  if (echs.empty()) throw std::invalid_argument("lift_kernel: no echelon forms");
  const ModEchelon& e0 = *echs[0];
  for (const auto* e : echs)
    if (e->pivots() != e0.pivots()) return std::nullopt;
  CanonicalBasis cb;
  cb.n = e0.ambient();
  cb.free_cols = e0.free_columns();
  cb.pivot_cols = e0.pivots();
  std::vector<int> fidx(cb.n, -1);
  for (std::size_t f = 0; f < cb.free_cols.size(); ++f) fidx[cb.free_cols[f]] = int(f);
  mpz_class modulus = 1;
  for (const auto* e : echs) modulus *= to_mpz(e->field().p);
  cb.pivot_rows.resize(cb.pivot_cols.size());
  for (std::size_t k = 0; k < cb.pivot_cols.size(); ++k) {
    for (int fc : cb.free_cols) {
      bool any = false;
      for (const auto* e : echs)
        if (e->rows()[k][fc]) any = true;
      if (!any) continue;
      // CRT combine.
      mpz_class a = 0, m = 1;
      for (const auto* e : echs) {
        const u64 p = e->field().p;
        mpz_class pz = to_mpz(p);
        const u64 v = e->rows()[k][fc];
        if (m == 1) {
          a = to_mpz(v);
        } else {
          mpz_class am;
          mpz_fdiv_r(am.get_mpz_t(), a.get_mpz_t(), pz.get_mpz_t());
          mpz_class diff = to_mpz(v) - am;
          mpz_class minv;
          mpz_class mm;
          mpz_fdiv_r(mm.get_mpz_t(), m.get_mpz_t(), pz.get_mpz_t());
          mpz_invert(minv.get_mpz_t(), mm.get_mpz_t(), pz.get_mpz_t());
          mpz_class t = diff * minv;
          mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), pz.get_mpz_t());
          a += m * t;
        }
        m *= pz;
      }
      auto qv = rational_reconstruct(a, modulus);
      if (!qv) return std::nullopt;
      cb.pivot_rows[k].emplace_back(fidx[fc], -*qv);
    }
  }
  return cb;
}

std::optional<QMat> restrict_to(const CanonicalBasis& w, const SpMat& a) {
  const int d = w.dim();
  QMat out(d, d);
  SubspaceBasis b = w.basis();
  for (int j = 0; j < d; ++j) {
    auto c = w.coords(kt::apply(a, b.vectors[j]));
    if (!c) return std::nullopt;
    for (int i = 0; i < d; ++i) out(i, j) = (*c)[i];
  }
  return out;
}

static bool certify(const CanonicalBasis& w, const std::vector<SpMat>& seeds, const std::vector<SpMat>& ops) {
  SubspaceBasis b = w.basis();
  for (const auto& v : b.vectors) {
    for (const auto& s : seeds)
      for (const auto& x : kt::apply(s, v))
        if (!is_zero(x)) return false;
    for (const auto& op : ops)
      if (!w.coords(kt::apply(op, v))) return false;
  }
  return true;
}

ClosureResult kernel_closure(int n, const std::vector<SpMat>& seeds, const std::vector<SpMat>& ops,
                             const FixpointOptions& opt) {
  ClosureResult res;
  res.ambient = n;
  if (opt.backend == Backend::Float) {
    FloatClosure fc = kernel_closure_float(n, seeds, ops, opt.tol, opt.parallel, opt.block, opt.sketch_rows);
    res.dim = n - fc.rank;
    res.trace = fc.trace;
    res.method = "float-cgs2";
    return res;
  }
  const auto& primes = modular_primes();
  std::vector<ModClosure> runs;
  for (int i = 0; i < opt.max_primes && i < int(primes.size()); ++i) {
    runs.push_back(kernel_closure_mod(n, seeds, ops, Field{primes[i]}, opt.parallel, opt.block, opt.sketch_rows));
    if (i == 0) {
      res.dim = n - runs[0].ech.rank();
      res.trace = runs[0].trace;
      if (!opt.lift || opt.sketch_rows > 0) {
        res.method = opt.sketch_rows > 0 ? "modular-sketch-upper-bound" : "modular-unlifted";
        return res;
      }
    }
    runs.back().ech.make_reduced();
    // Drop runs whose rank disagrees with the first (unlucky prime).
    if (runs.back().ech.rank() != runs[0].ech.rank()) {
      runs.pop_back();
      continue;
    }
    std::vector<const ModEchelon*> echs;
    for (const auto& r : runs) echs.push_back(&r.ech);
    auto cb = lift_kernel(echs);
    if (cb && certify(*cb, seeds, ops)) {
      res.basis = std::move(cb);
      res.certified = true;
      res.method = "modular-lift-" + std::to_string(runs.size());
      return res;
    }
  }
  res.method = "modular-uncertified";
  return res;
}

FixpointTrace largest_invariant_subspace(const SubspaceBasis& v0, const std::vector<SpMat>& ops,
                                         const FixpointOptions& opt) {
  const int n = v0.ambient_dim;
  for (const auto& op : ops)
    if (op.rows != n || op.cols != n) throw std::invalid_argument("largest_invariant_subspace: dimension mismatch");
  SubspaceBasis ann = annihilator(v0);
  std::vector<SpMat> seeds;
  if (ann.dim() > 0) seeds.push_back(rows_matrix(n, ann.vectors));
  ClosureResult cr = kernel_closure(n, seeds, ops, opt);
  if (!cr.certified) return invariant_subspace_reference(v0, ops);
  return FixpointTrace{cr.basis->basis(), cr.trace};
}

}  // namespace kt
