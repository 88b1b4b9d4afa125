#include "kt/prolong/prolong.hpp"

#include "kt/tensor/maps.hpp"

#include <algorithm>
#include <functional>

namespace kt {

namespace {

using TensorFn = std::function<SparseTensor(const SparseTensor&)>;

std::vector<Q> column(const SpMat& m, int j) {
  std::vector<Q> v(m.rows);
  for (int q = m.ptr[j]; q < m.ptr[j + 1]; ++q) v[m.idx[q]] = m.val[q];
  return v;
}

bool block_zero(const ConnectionCurvature& cc, const FiberSum& f, int i, int j) {
  for (const auto& m : cc.lambda)
    if (!is_zero(block(m, f, i, f, j))) return false;
  return true;
}

// Block (i, j) of Λ_ab equals factor · formula(basis)_ab•• for every a < b.
bool block_matches(const ConnectionCurvature& cc, const FiberSum& f, int i, int j, const TensorFn& formula,
                   const Q& factor = 2) {
  const Fiber& src = *f.parts[j];
  const Fiber& dst = *f.parts[i];
  const int n = cc.n;
  std::vector<SpMat> blocks;
  for (const auto& m : cc.lambda) blocks.push_back(block(m, f, i, f, j));
  for (int col = 0; col < src.dim(); ++col) {
    SparseTensor t = formula(src.basis_tensor(col));
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        SparseTensor s = factor * slice0(slice0(t, a), b);
        s.prune();
        if (!dst.contains(s)) return false;
        if (column(blocks[pair_index(n, a, b)], col) != dst.project(s)) return false;
      }
  }
  return true;
}

void merge(Report& r, const Report& s) {
  for (const auto& c : s.checks) r.checks.push_back(c);
}

template <class F>
bool all_basis(const Fiber& f, F pred) {
  for (int j = 0; j < f.dim(); ++j)
    if (!pred(f.basis_tensor(j))) return false;
  return true;
}

bool intertwines(const std::vector<SpMat>& a, const SpMat& phi, const std::vector<SpMat>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] * phi == phi * b[i])) return false;
  return true;
}

int binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return int(r);
}

}  // namespace

Report verify_generic_examples(const SymmetricPair& p, const CurvatureData& c) {
  Report r;
  InvariantConnection k1 = killing1_connection(p, c);
  // Hand-assembled (∇σ − μ, ∇μ − R_bc^d_a σ_d).
  const int n = p.n, d = k1.dim();
  auto l1 = fiber(n, "L1");
  auto l2 = fiber(n, "L2");
  bool same = true;
  for (int a = 0; a < n; ++a) {
    SpMat top = tensor_matrix(*l2, *l1, [&](const SparseTensor& mu) { return Q(-1) * slice0(mu, a); });
    SpMat bot = tensor_matrix(*l1, *l2, [&](const SparseTensor& s) {
      return slice0(einsum(-1, c.R, "bcda", s, "d", "abc"), a);
    });
    SpMat m = place_block(top, d, d, 0, n) + place_block(bot, d, d, n, 0);
    same = same && m == k1.alpha[a];
  }
  r.add("generic.killing1_reproduced", same);
  InvariantConnection s1 = killing2_stage1(p, c);
  bool stage = true;
  auto s2 = fiber(n, "S2");
  auto ha = fiber(n, "HookAlt");
  const int ds = s2->dim(), dd = s1.dim();
  for (int a = 0; a < n; ++a) {
    SpMat top = tensor_matrix(*ha, *s2, [&](const SparseTensor& mu) {
      return slice0(einsum(1, mu, "bca", "abc") + einsum(1, mu, "cba", "abc"), a);
    });
    SpMat bot = tensor_matrix(*s2, *ha, [&](const SparseTensor& s) {
      return Q(-1) * slice0(r_triangle(c, s, TriangleOption::One), a);
    });
    stage = stage && (place_block(top, dd, dd, 0, ds) + place_block(bot, dd, dd, ds, 0)) == s1.alpha[a];
  }
  r.add("generic.first_prolongation_reproduced", stage);
  return r;
}

Report verify_killing1(const SymmetricPair& p, const CurvatureData& c) {
  Report r;
  InvariantConnection k1 = killing1_connection(p, c);
  merge(r, check_connection(p, k1));
  ConnectionCurvature cc = connection_curvature(p, k1);
  r.add("killing1.first_line_vanishes", block_zero(cc, k1.fiber, 0, 0) && block_zero(cc, k1.fiber, 0, 1));
  r.add("killing1.sigma_does_not_enter", block_zero(cc, k1.fiber, 1, 0));
  r.add("killing1.curvature_formula",
        block_matches(cc, k1.fiber, 1, 1, [&](const SparseTensor& mu) { return killing1_curvature_formula(c, mu); }));
  return r;
}

Report verify_r_triangle(const CurvatureData& c) {
  Report r;
  const int n = c.n;
  auto s2 = fiber(n, "S2");
  auto lha = fiber(n, "L1xHookAlt");
  auto win = fiber(n, "Window");
  auto tri = [&](const SparseTensor& s, TriangleOption o) { return r_triangle(c, s, o); };
  r.add("r_triangle.image", all_basis(*s2, [&](const SparseTensor& s) {
          return lha->contains(tri(s, TriangleOption::One)) && lha->contains(tri(s, TriangleOption::Two));
        }));
  r.add("r_triangle.option_one_property", all_basis(*s2, [&](const SparseTensor& s) {
          SparseTensor t = tri(s, TriangleOption::One);
          SparseTensor lhs = Q(2) * sym(einsum(1, t, "bcda", "abcd"), {2, 3});
          SparseTensor rhs = einsum(1, c.R, "cafb", s, "df", "abcd");
          einsum_acc(rhs, 1, c.R, "dafb", s, "cf", "abcd");
          return lhs == rhs;
        }));
  r.add("r_triangle.option_two_property", all_basis(*s2, [&](const SparseTensor& s) {
          SparseTensor t = tri(s, TriangleOption::Two);
          SparseTensor z = alt(t, {0, 1}) + alt(einsum(1, t, "cdab", "abcd"), {2, 3});
          z.prune();
          return z.is_zero();
        }));
  r.add("r_triangle.freedom", all_basis(*s2, [&](const SparseTensor& s) {
          SparseTensor d = tri(s, TriangleOption::One) - tri(s, TriangleOption::Two);
          d.prune();
          SparseTensor f = Q(1, 2) * alt(einsum(1, c.R, "cdea", s, "be", "abcd"), {0, 1});
          f += Q(1, 2) * alt(einsum(1, c.R, "abec", s, "de", "abcd"), {2, 3});
          f.prune();
          return win->contains(d) && d == f;
        }));
  r.add("r_triangle.lift", all_basis(*s2, [&](const SparseTensor& s) { return r_triangle_lift_holds(c, s); }));
  SparseTensor mr = Q(-1) * c.Rl;
  r.add("r_triangle.metric", tri(c.gt, TriangleOption::One) == mr);
  return r;
}

Report verify_r_diamond(const CurvatureData& c) {
  Report r;
  auto ha = fiber(c.n, "HookAlt");
  auto lw = fiber(c.n, "L1xWindow");
  for (int line = 1; line <= 3; ++line)
    r.add("r_diamond.line" + std::to_string(line) + "_in_L1xWindow",
          all_basis(*ha, [&](const SparseTensor& mu) { return lw->contains(r_diamond(c, mu, line)); }));
  r.add("r_diamond.skew_part",
        all_basis(*ha, [&](const SparseTensor& mu) { return r_diamond_skew_part_holds(c, mu); }));
  return r;
}

Report verify_first_stage_curvature(const SymmetricPair& p, const CurvatureData& c) {
  Report r;
  InvariantConnection s1 = killing2_stage1(p, c);
  merge(r, check_connection(p, s1));
  ConnectionCurvature cc = connection_curvature(p, s1);
  r.add("first_stage.sym_rows_vanish", block_zero(cc, s1.fiber, 0, 0) && block_zero(cc, s1.fiber, 0, 1));
  r.add("first_stage.sigma_does_not_enter", block_zero(cc, s1.fiber, 1, 0));
  r.add("first_stage.bracket_formula", block_matches(cc, s1.fiber, 1, 1, [&](const SparseTensor& mu) {
          return first_stage_curvature_formula(c, mu);
        }));
  r.add("first_stage.diamond_reproduces", all_basis(*fiber(c.n, "HookAlt"), [&](const SparseTensor& mu) {
          return r_diamond_skew_part_holds(c, mu);
        }));
  return r;
}

Report verify_killing2(const SymmetricPair& p, const CurvatureData& c) {
  Report r;
  const int n = p.n;
  InvariantConnection k = killing2_connection(p, c);
  r.add("killing2.construction", true);
  merge(r, check_connection(p, k));
  ConnectionCurvature cc = connection_curvature(p, k);
  bool low = true;
  for (int j = 0; j < 3; ++j) low = low && block_zero(cc, k.fiber, 0, j) && block_zero(cc, k.fiber, 1, j);
  r.add("killing2.first_two_lines_flat", low);
  auto win = fiber(n, "Window");
  auto bw = fiber(n, "BayWindow");
  bool bay = true;
  const int off = k.fiber.offset[2];
  for (int col = 0; col < k.dim() && bay; ++col) {
    SparseTensor t(n, 6);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        auto v = column(cc.at(a, b), col);
        std::vector<Q> w(v.begin() + off, v.end());
        SparseTensor s = win->embed(w);
        t += with_form(a, with_form(b, s));
        t -= with_form(b, with_form(a, s));
      }
    t.prune();
    bay = bw->contains(t);
  }
  r.add("killing2.curvature_in_bay_window", bay);
  std::vector<Q> g = metric_section(c);
  bool par = true;
  for (const auto* fam : {&k.alpha, &k.rho})
    for (const auto& m : *fam) {
      auto v = kt::apply(m, g);
      par = par && std::all_of(v.begin(), v.end(), [](const Q& x) { return sgn(x) == 0; });
    }
  r.add("killing2.metric_section_parallel", par);
  InvariantConnection k2 = killing2_connection(p, c, TriangleOption::Two);
  merge(r, check_connection(p, k2));
  SpMat gauge = gauge_matrix(c);
  r.add("killing2.gauge_alpha", intertwines(k2.alpha, gauge, k.alpha));
  r.add("killing2.gauge_rho", intertwines(k2.rho, gauge, k.rho));
  return r;
}

Report verify_symmetric_power(const SymmetricPair& p, const CurvatureData& c) {
  Report r;
  const int n = p.n;
  InvariantConnection s = symmetric_power_connection(p, c);
  InvariantConnection t = pentagon_modification(p, c);
  InvariantConnection k1 = killing1_connection(p, c);
  merge(r, check_connection(p, s));
  merge(r, check_connection(p, t));
  const int d1 = k1.dim();
  bool deriv = true;
  auto unit = [&](int i) {
    std::vector<Q> e(d1);
    e[i] = 1;
    return e;
  };
  auto add = [](std::vector<Q> x, const std::vector<Q>& y) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    return x;
  };
  std::vector<std::pair<const std::vector<SpMat>*, const std::vector<SpMat>*>> fam = {{&s.alpha, &k1.alpha},
                                                                                          {&s.rho, &k1.rho}};
  for (int i = 0; i < d1 && deriv; ++i)
    for (int j = i; j < d1 && deriv; ++j) {
      auto x = unit(i), y = unit(j);
      auto xy = symmetric_product(n, x, y);
      for (const auto& [big, small] : fam)
        for (std::size_t a = 0; a < big->size() && deriv; ++a) {
          auto lhs = kt::apply((*big)[a], xy);
          auto rhs = add(symmetric_product(n, kt::apply((*small)[a], x), y),
                         symmetric_product(n, x, kt::apply((*small)[a], y)));
          deriv = lhs == rhs;
        }
    }
  r.add("symmetric_power.induced_derivation", deriv);
  ConnectionCurvature cc = connection_curvature(p, s);
  bool zero = true;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i == 0 || i != j) zero = zero && block_zero(cc, s.fiber, i, j);
  r.add("symmetric_power.curvature_block_diagonal", zero);
  r.add("symmetric_power.curvature_mu", block_matches(cc, s.fiber, 1, 1, [&](const SparseTensor& mu) {
          return symmetric_curvature_mu(c, mu);
        }));
  r.add("symmetric_power.curvature_rho", block_matches(cc, s.fiber, 2, 2, [&](const SparseTensor& rho) {
          return symmetric_curvature_rho(c, rho);
        }));
  return r;
}

Report verify_key_piece(const CurvatureData& c, const SparseTensor& mu) {
  Report r;
  SparseTensor mt = mu - alt(mu, {0, 1, 2});
  mt.prune();
  r.add("key_piece", r_diamond(c, mt) == key_piece_rhs(c, mu));
  return r;
}

Report verify_phi(const SymmetricPair& p, const CurvatureData& c) {
  Report r;
  const int n = p.n;
  SpMat phi = phi_matrix(n);
  InvariantConnection t = pentagon_modification(p, c);
  InvariantConnection k = killing2_connection(p, c);
  r.add("phi.intertwines_alpha", intertwines(k.alpha, phi, t.alpha));
  r.add("phi.intertwines_rho", intertwines(k.rho, phi, t.rho));
  SubspaceBasis ker = kernel(phi);
  const int kd = binom(n, 3) + binom(n, 4);
  r.add("phi.kernel_dimension", ker.dim() == kd, std::to_string(ker.dim()));
  r.add("phi.rank_nullity", rank(phi) + ker.dim() == phi.cols);
  // ι : Λ³ ⊕ Λ⁴ → S2 ⊕ L1xL2 ⊕ S2L2.
  InvariantConnection ky = ky_connection(p, c);
  auto inc = [&](int part, const std::string& kind) {
    return tensor_matrix(*fiber(n, kind), *t.fiber.parts[part], [](const SparseTensor& x) { return x; }, true);
  };
  const int dl3 = fiber(n, "L3")->dim();
  SpMat iota = place_block(inc(1, "L3"), t.dim(), ky.dim(), t.fiber.offset[1], 0) +
               place_block(inc(2, "L4"), t.dim(), ky.dim(), t.fiber.offset[2], dl3);
  r.add("phi.kernel_is_L3_L4", is_zero(phi * iota) && rank(iota) == kd);
  r.add("phi.induced_connection_is_ky", intertwines(t.alpha, iota, ky.alpha) && intertwines(t.rho, iota, ky.rho));
  merge(r, check_connection(p, ky));
  return r;
}

Report verify_affine(const SymmetricPair& p, const CurvatureData& c) {
  Report r;
  const int n = p.n;
  InvariantConnection x = affine_connection(p, c);
  merge(r, check_connection(p, x));
  ConnectionCurvature cc = connection_curvature(p, x);
  r.add("affine.first_line_vanishes", block_zero(cc, x.fiber, 0, 0) && block_zero(cc, x.fiber, 0, 1));
  r.add("affine.vector_does_not_enter", block_zero(cc, x.fiber, 1, 0));
  r.add("affine.curvature_formula", block_matches(cc, x.fiber, 1, 1, [&](const SparseTensor& phi) {
          return affine_curvature_formula(c, phi);
        }));
  std::vector<SpMat> ends;
  for (const auto& m : cc.lambda) ends.push_back(block(m, x.fiber, 1, x.fiber, 1));
  r.add("affine.kernel_is_khat", same_subspace(kernel_stacked(ends), khat_subspace(c)));
  // Γ_[ab]^c = ∇_[a∇_b]X^c + R_d[a^c_b] X^d on the canonical part.
  auto vec = fiber(n, "Vector");
  Isotropy iso = isotropy(p);
  auto rv = rho_matrices(iso, *vec);
  bool gamma = true;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      SpMat m = sparse_zero(n, n);
      for (const auto& [k, v] : p.g.bracket(a, b)) m = m - Q(1, 2) * v * rv[k - n];
      SpMat rr = tensor_matrix(*vec, *vec, [&](const SparseTensor& X) {
        SparseTensor t = einsum(1, c.R, "dacb", X, "d", "abc");
        return Q(1, 2) * (slice0(slice0(t, a), b) - slice0(slice0(t, b), a));
      });
      gamma = gamma && is_zero(m + rr);
    }
  r.add("affine.gamma_symmetric", gamma);
  return r;
}

int very_simple_algebra_kernel(int n) {
  auto l12 = fiber(n, "L1xL2");
  SpMat m = full_matrix(*l12, 3, very_simple_map);
  return kernel(m).dim();
}

SparseTensor very_simple_map(const SparseTensor& x) {
  SparseTensor t = Q(5) * x;
  t -= Q(2) * alt(einsum(1, x, "dec", "cde"), {1, 2});
  t.prune();
  return t;
}

bool r_triangle_lift_holds(const CurvatureData& c, const SparseTensor& s) {
  SparseTensor rhs = Q(-1) * sym(einsum(1, c.R, "abec", s, "de", "abcd"), {2, 3});
  rhs.prune();
  for (auto o : {TriangleOption::One, TriangleOption::Two}) {
    SparseTensor t = r_triangle(c, s, o);
    SparseTensor lhs = sym(einsum(1, t, "bcda", "abcd"), {2, 3}) - sym(einsum(1, t, "acdb", "abcd"), {2, 3});
    lhs.prune();
    if (!(lhs == rhs)) return false;
  }
  return true;
}

bool r_diamond_skew_part_holds(const CurvatureData& c, const SparseTensor& mu) {
  return alt(r_diamond(c, mu), {0, 1}) == first_stage_curvature_formula(c, mu);
}

}  // namespace kt
