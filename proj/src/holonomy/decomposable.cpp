#include "kt/holonomy/holonomy.hpp"

#include <omp.h>

namespace kt {

namespace {

bool all_zero(const std::vector<Q>& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

int mod_rank(const std::vector<std::vector<Q>>& vs, int ambient) {
  ModEchelon ech(ambient, Field{});
  for (const auto& v : vs) {
    std::vector<u64> r(ambient);
    for (int i = 0; i < ambient; ++i) r[i] = ech.field().reduce(v[i]);
    ech.insert(std::move(r));
  }
  return ech.rank();
}

// Matrices A_a with op·x_i = Σ_k A[k][i] x_k; nullopt if span(xs) is not invariant.
std::optional<QMat> restricted(const SpMat& op, const SubspaceBasis& xs) {
  QMat b = xs.matrix();
  QMat out(xs.dim(), xs.dim());
  for (int i = 0; i < xs.dim(); ++i) {
    auto y = solve(b, kt::apply(op, xs.vectors[i]));
    if (!y) return std::nullopt;
    out.set_column(i, *y);
  }
  return out;
}

std::vector<Q> axpy(std::vector<Q> y, const Q& a, const std::vector<Q>& x) {
  if (sgn(a) == 0) return y;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (sgn(x[i]) != 0) y[i] += a * x[i];
  return y;
}

}  // namespace

Decomposable decomposable_subspace(const SymmetricPair& p, const InvariantConnection& k1, const SubspaceBasis& p1,
                                   const InvariantConnection& k2, bool exact) {
  const int n = p.n, N = p1.dim(), D = k2.dim();
  Decomposable out;
  out.sym_dim = N * (N + 1) / 2;
  SpMat phi = phi_matrix(n);
  if (phi.rows != D) throw std::logic_error("decomposable_subspace: fiber mismatch");
  auto at = [N](int i, int j) {
    if (i > j) std::swap(i, j);
    return i * N - i * (i - 1) / 2 + (j - i);
  };
  std::vector<std::vector<Q>> prod(out.sym_dim), v(out.sym_dim);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < N; ++i)
    for (int j = i; j < N; ++j) {
      prod[at(i, j)] = symmetric_product(n, p1.vectors[i], p1.vectors[j]);
      v[at(i, j)] = kt::apply(phi, prod[at(i, j)]);
    }
  const int sym_ambient = phi.cols;
  const int sym_rank = exact ? rank_of_vectors(prod, sym_ambient) : mod_rank(prod, sym_ambient);
  out.report.add("decomposable.symmetric_products_independent", sym_rank == out.sym_dim,
                 std::to_string(sym_rank) + " of " + std::to_string(out.sym_dim));
  if (exact) {
    SubspaceBasis s = span(D, v);
    out.delta = s;
    out.dim = s.dim();
    Report pf = check_parallel_flat(p, k2, s, "decomposable");
    for (const auto& c : pf.checks) out.report.checks.push_back(c);
    out.certified = pf.ok();
    out.method = "exact";
  } else {
    // Flatness: the killing1 curvature kills P1, and α, ρ act on the products
    // as derivations, so the curvature acts on them as a derivation too.
    bool flat1 = true;
    for (const auto& m : connection_curvature(p, k1).lambda)
      for (const auto& x : p1.vectors) flat1 = flat1 && all_zero(kt::apply(m, x));
    out.report.add("decomposable.killing1_flat", flat1);
    std::vector<std::pair<const SpMat*, const SpMat*>> ops;
    for (int a = 0; a < n; ++a) ops.emplace_back(&k1.alpha[a], &k2.alpha[a]);
    for (int k = 0; k < p.kdim; ++k) ops.emplace_back(&k1.rho[k], &k2.rho[k]);
    bool deriv = true;
    for (const auto& [o1, o2] : ops) {
      auto A = restricted(*o1, p1);
      if (!A) {
        deriv = false;
        break;
      }
      std::vector<char> good(out.sym_dim, 1);
#pragma omp parallel for schedule(dynamic)
      for (int i = 0; i < N; ++i)
        for (int j = i; j < N; ++j) {
          std::vector<Q> rhs(D);
          for (int k = 0; k < N; ++k) {
            rhs = axpy(std::move(rhs), (*A)(k, i), v[at(k, j)]);
            rhs = axpy(std::move(rhs), (*A)(k, j), v[at(i, k)]);
          }
          good[at(i, j)] = kt::apply(*o2, v[at(i, j)]) == rhs;
        }
      for (char g : good) deriv = deriv && g;
      if (!deriv) break;
    }
    out.report.add("decomposable.derivation", deriv);
    out.certified = flat1 && deriv;
    out.dim = mod_rank(v, D);
    out.method = "derivation+modular-rank";
  }
  out.kernel_dim = out.sym_dim - out.dim;
  return out;
}

HiddenReport quotient_ranks(const CurvatureData& c) {
  const int n = c.n;
  SubspaceBasis k = k_subspace(c);
  auto l1 = fiber(n, "L1");
  auto l2 = fiber(n, "L2");
  auto ha = fiber(n, "HookAlt");
  auto win = fiber(n, "Window");
  std::vector<SparseTensor> kt;
  for (const auto& x : k.vectors) kt.push_back(l2->embed(x));
  std::vector<std::vector<Q>> mu, rho;
  for (int a = 0; a < n; ++a)
    for (const auto& t : kt) {
      SparseTensor m = outer(l1->basis_tensor(a), t);
      mu.push_back(ha->project_checked(m - alt(m, {0, 1, 2})));
    }
  for (std::size_t i = 0; i < kt.size(); ++i)
    for (std::size_t j = i; j < kt.size(); ++j) {
      SparseTensor r = outer(kt[i], kt[j]) + outer(kt[j], kt[i]);
      rho.push_back(win->project_checked(r - alt(r, {0, 1, 2, 3})));
    }
  HiddenReport h;
  h.p_rank = ha->dim() - rank_of_vectors(mu, ha->dim());
  h.q_rank = win->dim() - rank_of_vectors(rho, win->dim());
  return h;
}

DamperBound first_damper_bound(const SymmetricPair& p, const CurvatureData& c, const InvariantConnection& k2) {
  const int n = p.n;
  const FiberSum& f = k2.fiber;
  DamperBound out;
  ConnectionCurvature cc = connection_curvature(p, k2);
  bool only_rho = true;
  std::vector<SpMat> b;
  for (const auto& m : cc.lambda) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (!(i == 2 && j == 2)) only_rho = only_rho && is_zero(block(m, f, i, f, j));
    b.push_back(block(m, f, 2, f, 2));
  }
  out.report.add("damper.curvature_only_in_window", only_rho);
  std::vector<SpMat> kappa, partial;
  for (int a = 0; a < n; ++a) {
    kappa.push_back(block(k2.alpha[a], f, 2, f, 1));
    partial.push_back(Q(-1) * block(k2.alpha[a], f, 1, f, 2));
  }
  const int dw = f.parts[2]->dim(), dh = f.parts[1]->dim();
  ClosureResult kb = kernel_closure(dw, b, {});
  if (!kb.basis) throw std::runtime_error("first_damper_bound: kernel lift failed");
  SpMat ann_b = rows_matrix(dw, annihilator(kb.basis->basis()).vectors);
  std::vector<SpMat> mseeds;
  for (const auto& k : kappa) mseeds.push_back(ann_b * k);
  ClosureResult km = kernel_closure(dh, mseeds, {});
  if (!km.basis) throw std::runtime_error("first_damper_bound: kernel lift failed");
  SpMat ann_m = rows_matrix(dh, annihilator(km.basis->basis()).vectors);
  std::vector<SpMat> rseeds = b;
  for (const auto& d : partial) rseeds.push_back(ann_m * d);
  ClosureResult kr = kernel_closure(dw, rseeds, {});
  out.s2 = f.parts[0]->dim();
  out.mu = km.dim;
  out.rho = kr.dim;
  out.report.add("damper.exact", kb.certified && km.certified && kr.certified);
  const Fiber& ha = *f.parts[1];
  const Fiber& win = *f.parts[2];
  bool lines = true;
  for (int j = 0; j < ha.dim() && lines; ++j) {
    for (int line : {1, 3}) {
      SparseTensor t = r_diamond(c, ha.basis_tensor(j), line);
      for (int a = 0; a < n && lines; ++a) {
        std::vector<Q> w = win.project_checked(slice0(t, a));
        for (const auto& m : b) lines = lines && all_zero(kt::apply(m, w));
      }
    }
  }
  out.lines_one_three_vanish = lines;
  return out;
}

DamperBound first_damper_bound_modular(const SymmetricPair& p, const InvariantConnection& k2, bool parallel) {
  const int n = p.n;
  const FiberSum& f = k2.fiber;
  const Field fld{};
  DamperBound out;
  ConnectionCurvature cc = connection_curvature(p, k2);
  std::vector<SpMat> b;
  for (const auto& m : cc.lambda) b.push_back(block_column(block_rows(m, f.offset[2], f.parts[2]->dim()),
                                                           f.offset[2], f.parts[2]->dim()));
  cc.lambda.clear();
  const int dw = f.parts[2]->dim(), dh = f.parts[1]->dim();
  std::vector<ModMat> kappa, partial;
  for (int a = 0; a < n; ++a) {
    kappa.push_back(reduce(block(k2.alpha[a], f, 2, f, 1), fld));
    partial.push_back(reduce(block(k2.alpha[a], f, 1, f, 2), fld));
  }
  ModEchelon eb = kernel_closure_mod(dw, b, {}, fld, parallel, 64, dw).ech;
  b.clear();
  // Functionals y·κ_a for y in the row space of the curvature block.
  auto images = [&](const ModEchelon& src, const std::vector<ModMat>& maps, ModEchelon& dst) {
    const auto& rows = src.rows();
    const int per = 16;
    for (std::size_t r0 = 0; r0 < rows.size() && dst.rank() < dst.ambient(); r0 += per) {
      const std::size_t r1 = std::min(rows.size(), r0 + per);
      std::vector<std::vector<u64>> cand((r1 - r0) * maps.size());
#pragma omp parallel for schedule(static) if (parallel)
      for (long c = 0; c < long(cand.size()); ++c)
        left_apply(fld, rows[r0 + c / maps.size()], maps[c % maps.size()], cand[c]);
      absorb_rows(dst, cand, parallel);
    }
  };
  ModEchelon em(dh, fld);
  images(eb, kappa, em);
  ModEchelon er = eb;
  images(em, partial, er);
  out.s2 = f.parts[0]->dim();
  out.mu = dh - em.rank();
  out.rho = dw - er.rank();
  return out;
}

}  // namespace kt
