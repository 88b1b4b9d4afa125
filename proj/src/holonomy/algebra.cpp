#include "kt/holonomy/holonomy.hpp"
#include <functional>

namespace kt {

namespace {

std::vector<Q> part(const std::vector<Q>& x, int off, int len) {
  return std::vector<Q>(x.begin() + off, x.begin() + off + len);
}

std::vector<Q> concat(std::vector<Q> a, const std::vector<Q>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

bool all_zero(const std::vector<Q>& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

}  // namespace

std::vector<Q> prolonged_bracket(const CurvatureData& c, const std::vector<Q>& x, const std::vector<Q>& y) {
  const int n = c.n;
  auto l1 = fiber(n, "L1");
  auto l2 = fiber(n, "L2");
  SparseTensor s1 = l1->embed(part(x, 0, n)), m1 = l2->embed(part(x, n, l2->dim()));
  SparseTensor s2 = l1->embed(part(y, 0, n)), m2 = l2->embed(part(y, n, l2->dim()));
  SparseTensor u1 = raise(c, s1, 0), u2 = raise(c, s2, 0);
  SparseTensor sig = einsum(1, u1, "a", m2, "ab", "b");
  einsum_acc(sig, -1, u2, "a", m1, "ab", "b");
  SparseTensor mu1 = raise(c, m1, 0);
  SparseTensor mu = einsum(1, mu1, "ab", m2, "ca", "bc");
  einsum_acc(mu, -1, mu1, "ac", m2, "ba", "bc");
  SparseTensor rr = einsum(1, raise(c, c.R, 3), "bcad", s1, "a", "bcd");
  einsum_acc(mu, -1, rr, "bcd", s2, "d", "bc");
  sig.prune();
  mu.prune();
  return concat(l1->project_checked(sig), l2->project_checked(mu));
}

KillingAlgebra killing_algebra(const SymmetricPair& p, const CurvatureData& c, const InvariantConnection&,
                               const FlatSubspace& par) {
  KillingAlgebra out;
  out.basis = par.vectors();
  const int N = out.basis.dim();
  out.algebra = LieAlgebra(N);
  bool closed = true, anti = true;
  for (int i = 0; i < N; ++i) {
    anti = anti && all_zero(prolonged_bracket(c, out.basis.vectors[i], out.basis.vectors[i]));
    for (int j = i + 1; j < N; ++j) {
      auto z = prolonged_bracket(c, out.basis.vectors[i], out.basis.vectors[j]);
      auto zr = prolonged_bracket(c, out.basis.vectors[j], out.basis.vectors[i]);
      for (std::size_t q = 0; q < z.size(); ++q) anti = anti && z[q] == -zr[q];
      auto co = par.basis->coords(z);
      if (!co) {
        closed = false;
        continue;
      }
      for (int k = 0; k < N; ++k)
        if (sgn((*co)[k]) != 0) {
          out.algebra.set(i, j, k, (*co)[k]);
          out.algebra.set(j, i, k, -(*co)[k]);
        }
    }
  }
  out.report.add("bracket.parallel", closed);
  out.report.add("bracket.antisymmetric", anti);
  Report va = validate_algebra(out.algebra);
  for (const auto& ch : va.checks)
    if (ch.name == "jacobi") out.report.add("bracket.jacobi", ch.pass);
  // Sections vanishing at the base point have μ ∈ K and close under the bracket.
  const int n = p.n, d2 = par.ambient - n;
  SubspaceBasis vert{par.ambient, {}};
  for (int i = 0; i < d2; ++i) {
    std::vector<Q> e(par.ambient);
    e[n + i] = 1;
    vert.vectors.push_back(e);
  }
  SubspaceBasis iso = intersect(out.basis, vert);
  SubspaceBasis k = k_subspace(c);
  bool kpart = true;
  for (const auto& u : iso.vectors) kpart = kpart && contains(k, part(u, n, d2));
  for (const auto& u : iso.vectors)
    for (const auto& w : iso.vectors) {
      auto z = prolonged_bracket(c, u, w);
      kpart = kpart && all_zero(part(z, 0, n)) && contains(k, part(z, n, d2));
    }
  out.report.add("bracket.isotropy_subalgebra", kpart && iso.dim() == k.dim(),
                 "dim " + std::to_string(iso.dim()) + ", dim K " + std::to_string(k.dim()));
  return out;
}

Signature signature(const QMat& q0) {
  QMat q = q0;
  const int n = q.rows;
  Signature s;
  std::vector<char> done(n, 0);
  for (int step = 0; step < n; ++step) {
    int piv = -1;
    for (int i = 0; i < n && piv < 0; ++i)
      if (!done[i] && sgn(q(i, i)) != 0) piv = i;
    if (piv < 0) {
      // Congruence e_i → e_i + e_j creates a non-zero diagonal entry from q_ij.
      int pi = -1, pj = -1;
      for (int i = 0; i < n && pi < 0; ++i)
        for (int j = 0; j < n; ++j)
          if (!done[i] && !done[j] && i != j && sgn(q(i, j)) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi < 0) break;
      for (int k = 0; k < n; ++k) q(pi, k) += q(pj, k);
      for (int k = 0; k < n; ++k) q(k, pi) += q(k, pj);
      piv = pi;
    }
    const Q d = q(piv, piv);
    (sgn(d) > 0 ? s.pos : s.neg)++;
    done[piv] = 1;
    for (int i = 0; i < n; ++i) {
      if (done[i] || sgn(q(i, piv)) == 0) continue;
      const Q f = q(i, piv) / d;
      for (int k = 0; k < n; ++k) q(i, k) -= f * q(piv, k);
    }
    for (int i = 0; i < n; ++i) {
      if (done[i] || i == piv) continue;
      q(piv, i) = 0;
      q(i, piv) = 0;
    }
  }
  s.zero = n - s.pos - s.neg;
  return s;
}

Sym3Report invariant_sym3(const SymmetricPair& p, const CurvatureData& c, const InvariantConnection& k1,
                          const SubspaceBasis& p1, const InvariantConnection& k2, const SubspaceBasis& k2_sections) {
  const int n = p.n;
  auto s2 = fiber(n, "S2");
  auto s3 = fiber(n, "S3");
  auto l1 = fiber(n, "L1");
  Sym3Report out;
  // With a trivial isotropy algebra (the flat model) K = ⟨μ_e^c⟩ still acts.
  Isotropy iso = isotropy(p);
  if (iso.kdim == 0) {
    auto l2 = fiber(n, "L2");
    for (const auto& mv : k_subspace(c).vectors) {
      SparseTensor m = raise(c, l2->embed(mv), 1);
      std::vector<std::vector<std::pair<int, Q>>> rows(n), cols(n);
      for (const auto& [f, v] : m.entries()) {
        int idx[2];
        m.digits(f, idx);
        rows[idx[0]].emplace_back(idx[1], v);
        cols[idx[1]].emplace_back(idx[0], v);
      }
      iso.rows.push_back(std::move(rows));
      iso.cols.push_back(std::move(cols));
      ++iso.kdim;
    }
  }
  out.invariants = iso.kdim == 0 ? SubspaceBasis{s3->dim(), {}} : kernel_stacked(rho_matrices(iso, *s3));
  if (out.invariants.dim() == 0) return out;
  const int d2 = s2->dim();
  // 2-jet of a section: S2 parts of s, α_a s, α_a α_b s.
  auto jet = [&](const InvariantConnection& conn, const std::vector<Q>& s,
                 const std::function<std::vector<Q>(const std::vector<Q>&)>& value) {
    std::vector<Q> out = value(s);
    std::vector<std::vector<Q>> first;
    for (int a = 0; a < n; ++a) first.push_back(kt::apply(conn.alpha[a], s));
    for (int a = 0; a < n; ++a) out = concat(std::move(out), value(first[a]));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) out = concat(std::move(out), value(kt::apply(conn.alpha[a], first[b])));
    return out;
  };
  auto s2_part = [&](const std::vector<Q>& s) { return part(s, 0, d2); };
  std::vector<std::vector<Q>> cols;
  for (const auto& v : k2_sections.vectors) cols.push_back(jet(k2, v, s2_part));
  QMat m = from_columns(int(cols.empty() ? 0 : cols[0].size()), cols);
  out.report.add("sym3.jets_separate_sections", rank(m) == k2_sections.dim());
  bool all_in = true;
  for (const auto& phv : out.invariants.vectors) {
    SparseTensor ph = s3->embed(phv);
    auto contract = [&](const std::vector<Q>& x) {
      SparseTensor up = raise(c, l1->embed(part(x, 0, n)), 0);
      SparseTensor t = einsum(1, ph, "bcd", up, "d", "bc");
      t.prune();
      return s2->project_checked(t);
    };
    for (const auto& x : p1.vectors) all_in = all_in && solve(m, jet(k1, x, contract)).has_value();
  }
  out.report.add("sym3.killing_tensors_are_parallel_sections", all_in);
  return out;
}

SplittingReport group_splitting(const SymmetricPair& p, const CurvatureData& c, const InvariantConnection& k1,
                                const KillingAlgebra& alg) {
  SplittingReport out;
  CartanForm f = cartan_form(p, c);
  SpMat e = cartan_endomorphism(c, f);
  // E is an involution commuting with the connection on Λ¹ ⊕ K only.
  const int n = p.n, d = e.rows;
  SubspaceBasis w{d, {}};
  for (int i = 0; i < n; ++i) {
    std::vector<Q> v(d);
    v[i] = 1;
    w.vectors.push_back(v);
  }
  for (const auto& k : k_subspace(c).vectors) {
    std::vector<Q> v(n);
    v.insert(v.end(), k.begin(), k.end());
    w.vectors.push_back(v);
  }
  bool comm = true, invol = true;
  for (const auto& x : w.vectors) {
    auto ex = kt::apply(e, x);
    invol = invol && kt::apply(e, ex) == x;
    for (const auto* ops : {&k1.alpha, &k1.rho})
      for (const auto& a : *ops) comm = comm && kt::apply(e, kt::apply(a, x)) == kt::apply(a, ex);
  }
  out.report.add("splitting.commutes_with_connection", comm);
  out.report.add("splitting.involution", invol);
  const int N = alg.basis.dim();
  QMat b = alg.basis.matrix();
  QMat er(N, N);
  bool inv = true;
  for (int i = 0; i < N; ++i) {
    auto y = solve(b, kt::apply(e, alg.basis.vectors[i]));
    if (!y) {
      inv = false;
      break;
    }
    er.set_column(i, *y);
  }
  out.report.add("splitting.preserves_parallel_space", inv);
  if (!inv) return out;
  SubspaceBasis plus = kernel(er - QMat::identity(N));
  SubspaceBasis minus = kernel(er + QMat::identity(N));
  out.plus = plus.dim();
  out.minus = minus.dim();
  const int h = p.group ? p.group->hdim : -1;
  out.report.add("splitting.dimensions", out.plus == h && out.minus == h,
                 std::to_string(out.plus) + " + " + std::to_string(out.minus));
  bool sub = true, commute = true;
  for (const auto& x : plus.vectors)
    for (const auto& y : plus.vectors) sub = sub && contains(plus, alg.algebra.bracket(x, y));
  for (const auto& x : minus.vectors)
    for (const auto& y : minus.vectors) sub = sub && contains(minus, alg.algebra.bracket(x, y));
  for (const auto& x : plus.vectors)
    for (const auto& y : minus.vectors) commute = commute && all_zero(alg.algebra.bracket(x, y));
  out.report.add("splitting.subalgebras", sub);
  out.report.add("splitting.commuting", commute);
  return out;
}

}  // namespace kt
