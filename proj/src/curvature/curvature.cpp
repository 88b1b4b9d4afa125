#include "kt/curvature/curvature.hpp"

#include "kt/tensor/isotropy.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

namespace kt {

SparseTensor matrix_tensor(const QMat& m) {
  SparseTensor t(m.rows, 2);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (!is_zero(m(i, j))) t.add({i, j}, m(i, j));
  return t;
}

namespace {

SparseTensor contract_slot(const QMat& m, const SparseTensor& t, int slot) {
  SparseTensor out(t.n(), t.rank());
  std::array<int, 12> idx{};
  for (const auto& [f, v] : t.entries()) {
    t.digits(f, idx.data());
    const int x = idx[slot];
    for (int y = 0; y < m.rows; ++y) {
      const Q& w = m(y, x);
      if (is_zero(w)) continue;
      idx[slot] = y;
      out.add(out.flat(idx.data()), w * v);
    }
    idx[slot] = x;
  }
  out.prune();
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) throw ConventionError(std::string("curvature: ") + what);
}

QMat ricci(const SparseTensor& r, int n) {
  QMat ric(n, n);
  std::array<int, 4> i{};
  for (const auto& [f, v] : r.entries()) {
    r.digits(f, i.data());
    if (i[0] == i[2]) ric(i[1], i[3]) += v;
  }
  return ric;
}

}  // namespace

SparseTensor raise(const CurvatureData& c, const SparseTensor& t, int slot) { return contract_slot(c.ginv, t, slot); }
SparseTensor lower(const CurvatureData& c, const SparseTensor& t, int slot) { return contract_slot(c.g, t, slot); }

MetricNormalization normalize_metric(const SymmetricPair& p, const CurvatureData& c) {
  MetricNormalization out;
  if (p.flat) return out;
  const int n = p.n;
  int pi = -1, pj = -1;
  for (int i = 0; i < n && pi < 0; ++i)
    for (int j = 0; j < n; ++j)
      if (!is_zero(p.metric(i, j))) {
        pi = i;
        pj = j;
        break;
      }
  out.scale = c.ric(pi, pj) / p.metric(pi, pj);
  if (!(c.ric == out.scale * p.metric)) throw std::domain_error("Ricci is not proportional to the metric");
  if (sgn(out.scale) <= 0) throw std::domain_error("Ricci scale is not positive");
  return out;
}

CurvatureData curvature_tensor(const SymmetricPair& p, bool relax_ricci) {
  const int n = p.n;
  CurvatureData c;
  c.n = n;
  c.label = p.label;
  c.R = SparseTensor(n, 4);
  // R_ab^c_d = −Σ_k c[a][b][k] c[k][d][c].
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (const auto& [k, cab] : p.g.bracket(a, b))
        for (int d = 0; d < n; ++d)
          for (const auto& [e, ckd] : p.g.bracket(k, d)) c.R.add({a, b, e, d}, -cab * ckd);
  c.R.prune();
  c.flat = c.R.is_zero();
  c.ric = ricci(c.R, n);

  c.g = p.metric;
  if (!p.flat) {
    try {
      c.scale = normalize_metric(p, c).scale;
      c.g = c.scale * p.metric;
    } catch (const std::domain_error&) {
      if (!relax_ricci) throw;
      c.scale = 1;
    }
  }
  c.ginv = inverse(c.g);
  c.gt = matrix_tensor(c.g);
  c.ginvt = matrix_tensor(c.ginv);
  c.Rl = contract_slot(c.g, c.R, 2);

  require(c.R == -1 * einsum(1, c.R, "bacd", "abcd"), "R_ab^c_d is not skew in ab");
  SparseTensor bianchi = c.R;
  bianchi += einsum(1, c.R, "bdca", "abcd");
  bianchi += einsum(1, c.R, "dacb", "abcd");
  require(bianchi.is_zero(), "Bianchi symmetry fails");
  require(c.Rl == -1 * einsum(1, c.Rl, "abdc", "abcd"), "R_abcd is not skew in cd");
  require(c.Rl == einsum(1, c.Rl, "cdab", "abcd"), "R_abcd ≠ R_cdab");
  return c;
}

SpMat full_matrix(const Fiber& src, int rank, const std::function<SparseTensor(const SparseTensor&)>& f) {
  SparseTensor::Index total = 1;
  for (int i = 0; i < rank; ++i) total *= SparseTensor::Index(src.n());
  std::vector<SparseVec> cols(src.dim());
  for (int j = 0; j < src.dim(); ++j) {
    SparseTensor t = f(src.basis_tensor(j));
    t.prune();
    SparseVec col;
    for (const auto& [h, v] : t.entries()) col.emplace_back(int(h), v);
    std::sort(col.begin(), col.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    cols[j] = std::move(col);
  }
  return sparse_from_columns(int(total), cols);
}

SparseTensor k_condition(const CurvatureData& c, const SparseTensor& mu) {
  // R_ab^e_[c μ_d]e + R_cd^e_[a μ_b]e
  SparseTensor t(c.n, 4);
  einsum_acc(t, Q(1, 2), c.R, "abec", mu, "de", "abcd");
  einsum_acc(t, Q(-1, 2), c.R, "abed", mu, "ce", "abcd");
  einsum_acc(t, Q(1, 2), c.R, "cdea", mu, "be", "abcd");
  einsum_acc(t, Q(-1, 2), c.R, "cdeb", mu, "ae", "abcd");
  t.prune();
  return t;
}

SparseTensor khat_condition(const CurvatureData& c, const SparseTensor& phi) {
  // R_ab^d_e φ_c^e − R_ab^e_c φ_e^d + R_ae^d_c φ_b^e − R_be^d_c φ_a^e, output slots abcd.
  SparseTensor t(c.n, 4);
  einsum_acc(t, 1, c.R, "abde", phi, "ce", "abcd");
  einsum_acc(t, -1, c.R, "abec", phi, "ed", "abcd");
  einsum_acc(t, 1, c.R, "aedc", phi, "be", "abcd");
  einsum_acc(t, -1, c.R, "bedc", phi, "ae", "abcd");
  t.prune();
  return t;
}

SubspaceBasis k_subspace(const CurvatureData& c) {
  auto l2 = fiber(c.n, "L2");
  return kernel(full_matrix(*l2, 4, [&](const SparseTensor& mu) { return k_condition(c, mu); }));
}

SubspaceBasis khat_subspace(const CurvatureData& c) {
  auto end = fiber(c.n, "End");
  return kernel(full_matrix(*end, 4, [&](const SparseTensor& phi) { return khat_condition(c, phi); }));
}

Report verify_lts(const CurvatureData& c, const SubspaceBasis& k, const SubspaceBasis& khat) {
  Report rep;
  const int n = c.n;
  // 2R_ab^e_[c R_d]e^p_q = R_ab^e_q R_cd^p_e − R_cd^e_q R_ab^p_e
  SparseTensor lhs(n, 6);
  einsum_acc(lhs, 1, c.R, "abec", c.R, "depq", "abcdpq");
  einsum_acc(lhs, -1, c.R, "abed", c.R, "cepq", "abcdpq");
  SparseTensor rhs(n, 6);
  einsum_acc(rhs, 1, c.R, "abeq", c.R, "cdpe", "abcdpq");
  einsum_acc(rhs, -1, c.R, "cdeq", c.R, "abpe", "abcdpq");
  lhs.prune();
  rhs.prune();
  rep.add("lts_gives", lhs == rhs);

  auto l2 = fiber(n, "L2");
  auto end = fiber(n, "End");
  bool in_k = true, in_khat = true;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      // 2-form in ab at fixed End slot (c, d) = (x, y).
      SparseTensor mu(n, 2);
      SparseTensor phi(n, 2);
      for (const auto& [f, v] : c.R.entries()) {
        std::array<int, 4> i{};
        c.R.digits(f, i.data());
        if (i[2] == x && i[3] == y) mu.add({i[0], i[1]}, v);
      }
      if (!mu.is_zero() && !contains(k, l2->project(mu))) in_k = false;
      // End element φ_d^c = R_ab^c_d at fixed ab = (x, y).
      for (const auto& [f, v] : c.R.entries()) {
        std::array<int, 4> i{};
        c.R.digits(f, i.data());
        if (i[0] == x && i[1] == y) phi.add({i[3], i[2]}, v);
      }
      if (!phi.is_zero() && !contains(khat, end->project(phi))) in_khat = false;
    }
  rep.add("R_in_K_tensor_End", in_k);
  rep.add("R_in_L2_tensor_Khat", in_khat);

  // Killing fields are affine Killing fields: K raised into End lies in K̂.
  bool k_in_khat = true;
  for (const auto& v : k.vectors) {
    SparseTensor mu = l2->embed(v);
    SparseTensor phi = raise(c, mu, 1);
    if (!khat_condition(c, phi).is_zero()) k_in_khat = false;
  }
  rep.add("K_in_Khat", k_in_khat);
  return rep;
}

namespace {

// R_a^c_b^d = g^cx g^dy R_axby, slots (a, c, b, d).
SparseTensor second_kind_tensor(const CurvatureData& c) { return raise(c, raise(c, c.Rl, 1), 3); }

}  // namespace

SpMat second_kind_operator(const CurvatureData& c) {
  auto s2 = fiber(c.n, "S2");
  SparseTensor t = second_kind_tensor(c);
  return tensor_matrix(*s2, *s2, [&](const SparseTensor& sigma) { return einsum(1, t, "acbd", sigma, "cd", "ab"); });
}

SpMat lambda2_operator(const CurvatureData& c) {
  auto l2 = fiber(c.n, "L2");
  SparseTensor t = raise(c, c.R, 3);
  return tensor_matrix(*l2, *l2, [&](const SparseTensor& mu) { return einsum(1, t, "abcd", mu, "cd", "ab"); });
}

std::optional<std::vector<EigenCount>> rational_spectrum(const QMat& a) {
  const int n = a.rows;
  if (n == 0) return std::vector<EigenCount>{};
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = a(i, j).get_d();
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  std::vector<double> ev;
  for (int i = 0; i < n; ++i) ev.push_back(es.eigenvalues()[i].real());
  std::sort(ev.begin(), ev.end());
  // Candidate rationals with small denominators near each cluster.
  std::vector<Q> cands;
  for (double x : ev) {
    Q best;
    double err = 1e300;
    for (long d = 1; d <= 720; ++d) {
      double num = std::round(x * double(d));
      double e = std::fabs(num / double(d) - x);
      if (e < err - 1e-12) {
        err = e;
        best = Q(long(num), d);
        best.canonicalize();
      }
      if (err < 1e-9) break;
    }
    if (cands.empty() || cands.back() != best) cands.push_back(best);
  }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  std::vector<EigenCount> out;
  int total = 0;
  for (const Q& l : cands) {
    int k = rank_at_eigenvalue(a, l);
    if (k > 0) {
      out.push_back({l, k});
      total += k;
    }
  }
  if (total != n) return std::nullopt;
  return out;
}

Report su6_identities(const CurvatureData& c) {
  Report rep;
  // R_a^ef_c with slots (a, e, f, c).
  SparseTensor rr = raise(c, raise(c, c.Rl, 1), 2);
  SparseTensor t1 = einsum(1, rr, "aefc", c.Rl, "befd", "abcd");
  SparseTensor t2 = einsum(1, rr, "befc", c.Rl, "aefd", "abcd");
  SparseTensor t3 = einsum(1, rr, "cefb", c.Rl, "aefd", "abcd");
  SparseTensor useful = t1 - t2;
  useful.prune();
  SparseTensor lhs = Q(2, 3) * c.Rl;
  rep.add("useful", useful == lhs);
  SparseTensor also = t1 - t3;
  also.prune();
  SparseTensor lhs2 = lhs - Q(1, 3) * einsum(1, c.Rl, "adcb", "abcd");
  lhs2.prune();
  rep.add("also_useful", also == lhs2);
  // R_ab^ef R_cdef = (2/3) R_abcd
  SparseTensor up = raise(c, raise(c, c.Rl, 2), 3);
  SparseTensor sq = einsum(1, up, "abef", c.Rl, "cdef", "abcd");
  sq.prune();
  rep.add("R_squared", sq == lhs);
  return rep;
}

CartanForm cartan_form(const SymmetricPair& p, const CurvatureData& c) {
  if (!p.group) throw std::domain_error("cartan_form: not a group pair");
  const GroupData& gd = *p.group;
  const int n = p.n;
  QMat bh = gd.h.killing_form();
  std::vector<std::vector<Q>> u(n);
  for (int a = 0; a < n; ++a) u[a] = gd.psi.column(a);
  SparseTensor phi(n, 3);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      std::vector<Q> ab = gd.h.bracket(u[a], u[b]);
      std::vector<Q> bab = bh * ab;
      for (int d = b + 1; d < n; ++d) {
        Q v = 0;
        for (int i = 0; i < gd.hdim; ++i) v += bab[i] * u[d][i];
        if (is_zero(v)) continue;
        const int perm[6][3] = {{a, b, d}, {b, d, a}, {d, a, b}, {b, a, d}, {a, d, b}, {d, b, a}};
        for (int s = 0; s < 6; ++s) phi.add({perm[s][0], perm[s][1], perm[s][2]}, s < 3 ? v : -v);
      }
    }
  // φ_a^cd φ_bcd = λ g_ab
  SparseTensor up = raise(c, raise(c, phi, 1), 2);
  SparseTensor gram = einsum(1, up, "acd", phi, "bcd", "ab");
  Q lambda = gram.get({0, 0}) / c.g(0, 0);
  if (!(gram == lambda * c.gt)) throw std::domain_error("cartan_form: φ·φ is not proportional to g");
  CartanForm f;
  f.raw_lambda = lambda;
  // φ ↦ φ/√λ needs a rational square root.
  mpz_class num = lambda.get_num(), den = lambda.get_den();
  mpz_class rn = sqrt(num), rd = sqrt(den);
  if (sgn(lambda) <= 0 || rn * rn != num || rd * rd != den)
    throw std::domain_error("cartan_form: normalization is irrational");
  Q root(rn, rd);
  f.phi = (1 / root) * phi;
  return f;
}

Report verify_cartan(const CurvatureData& c, const CartanForm& f) {
  Report rep;
  SparseTensor up = raise(c, raise(c, f.phi, 1), 2);
  SparseTensor gram = einsum(1, up, "acd", f.phi, "bcd", "ab");
  gram.prune();
  rep.add("cartan_normalized", gram == c.gt);
  // R_bc^de φ_ade = φ_abc
  SparseTensor rup = raise(c, c.R, 3);
  SparseTensor key = einsum(1, rup, "bcde", f.phi, "ade", "abc");
  key.prune();
  rep.add("cartan_key_observation", key == f.phi);
  // R_abcd = φ_ab^e φ_cde
  SparseTensor pr = raise(c, f.phi, 2);
  SparseTensor rr = einsum(1, pr, "abe", f.phi, "cde", "abcd");
  rr.prune();
  rep.add("group_curvature", rr == c.Rl);
  return rep;
}

SpMat cartan_endomorphism(const CurvatureData& c, const CartanForm& f) {
  const int n = c.n;
  auto l1 = fiber(n, "L1");
  auto l2 = fiber(n, "L2");
  SparseTensor p_up2 = raise(c, raise(c, f.phi, 1), 2);  // φ_b^cd
  SparseTensor p_up1 = raise(c, f.phi, 2);               // φ_bc^d
  SpMat top = tensor_matrix(*l2, *l1, [&](const SparseTensor& mu) { return einsum(1, p_up2, "bcd", mu, "cd", "b"); });
  SpMat bot = tensor_matrix(*l1, *l2, [&](const SparseTensor& s) { return einsum(1, p_up1, "bcd", s, "d", "bc"); });
  const int d1 = l1->dim(), d2 = l2->dim();
  return place_block(top, d1 + d2, d1 + d2, 0, d1) + place_block(bot, d1 + d2, d1 + d2, d1, 0);
}

}  // namespace kt
