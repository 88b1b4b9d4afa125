#include "kt/prolong/prolong.hpp"

namespace kt {

namespace {

SparseTensor identity_map(const SparseTensor& t) { return t; }

// Adds F_a : part j → part i into α_a for every a.
void add_blocks(InvariantConnection& c, int i, int j, const std::vector<SpMat>& f) {
  const int d = c.dim();
  for (std::size_t a = 0; a < f.size(); ++a)
    c.alpha[a] = c.alpha[a] + place_block(f[a], d, d, c.fiber.offset[i], c.fiber.offset[j]);
}

std::vector<SpMat> placed(const std::vector<SpMat>& f, int rows, int cols, int row0, int col0) {
  std::vector<SpMat> out;
  for (const auto& m : f) out.push_back(place_block(m, rows, cols, row0, col0));
  return out;
}

bool check_images(int n) { return n <= 8; }

// (∂μ)_abc = −μ_bca − μ_cba on HookAlt (or L1xL2).
SparseTensor hook_partial(const SparseTensor& mu) {
  SparseTensor t(mu.n(), 3);
  einsum_acc(t, -1, mu, "bca", "abc");
  einsum_acc(t, -1, mu, "cba", "abc");
  return t;
}

std::vector<SpMat> r_triangle_blocks(const CurvatureData& c, TriangleOption opt) {
  return sliced_matrices(*fiber(c.n, "S2"), *fiber(c.n, "HookAlt"),
                         [&](const SparseTensor& s) { return Q(-1) * r_triangle(c, s, opt); }, check_images(c.n));
}

}  // namespace

InvariantConnection killing1_connection(const SymmetricPair& p, const CurvatureData& c) {
  const int n = p.n;
  InvariantConnection u = tensor_bundle(p, {"L1"}, "L1");
  InvariantConnection v = tensor_bundle(p, {"L2"}, "L2");
  auto l1 = fiber(n, "L1");
  auto l2 = fiber(n, "L2");
  auto partial = sliced_matrices(*l2, *l1, identity_map);
  auto kappa = sliced_matrices(*l1, *l2, [&](const SparseTensor& s) { return einsum(-1, c.R, "bcda", s, "d", "abc"); },
                               check_images(n));
  return generic_prolong(p, u, v, partial, kappa, "killing1");
}

InvariantConnection killing2_stage1(const SymmetricPair& p, const CurvatureData& c, TriangleOption opt) {
  const int n = p.n;
  InvariantConnection u = tensor_bundle(p, {"S2"}, "S2");
  InvariantConnection v = tensor_bundle(p, {"HookAlt"}, "HookAlt");
  auto partial = sliced_matrices(*fiber(n, "HookAlt"), *fiber(n, "S2"), hook_partial);
  return generic_prolong(p, u, v, partial, r_triangle_blocks(c, opt),
                         opt == TriangleOption::One ? "killing2.stage1" : "killing2.stage1.option2",
                         check_images(n));
}

InvariantConnection killing2_connection(const SymmetricPair& p, const CurvatureData& c, TriangleOption opt,
                                        bool verify) {
  const int n = p.n;
  InvariantConnection u = killing2_stage1(p, c, opt);
  InvariantConnection v = tensor_bundle(p, {"Window"}, "Window");
  auto s2 = fiber(n, "S2");
  auto ha = fiber(n, "HookAlt");
  auto win = fiber(n, "Window");
  const int du = u.dim();
  auto partial = placed(sliced_matrices(*win, *ha, identity_map), du, win->dim(), s2->dim(), 0);
  std::vector<SpMat> kappa;
  if (opt == TriangleOption::One) {
    kappa = placed(sliced_matrices(
                       *ha, *win, [&](const SparseTensor& mu) { return Q(-1) * r_diamond(c, mu); }, check_images(n)),
                   win->dim(), du, 0, s2->dim());
  } else {
    kappa = solve_lift(p, u, partial, win->dim());
  }
  InvariantConnection out = generic_prolong(p, u, v, partial, kappa,
                                            opt == TriangleOption::One ? "killing2" : "killing2.option2", verify);
  out.fiber.labels = {"S2", "HookAlt", "Window"};
  return out;
}

InvariantConnection symmetric_power_connection(const SymmetricPair& p, const CurvatureData& c) {
  const int n = p.n;
  const bool chk = check_images(n);
  InvariantConnection x = tensor_bundle(p, {"S2", "L1xL2", "S2L2"}, "symmetric_power");
  auto s2 = fiber(n, "S2");
  auto l12 = fiber(n, "L1xL2");
  auto s2l2 = fiber(n, "S2L2");
  add_blocks(x, 0, 1, sliced_matrices(*l12, *s2, [](const SparseTensor& mu) { return Q(-1) * hook_partial(mu); }, chk));
  add_blocks(x, 1, 0,
             sliced_matrices(*s2, *l12, [&](const SparseTensor& s) { return einsum(-1, c.R, "cdea", s, "be", "abcd"); },
                             chk));
  add_blocks(x, 1, 2, sliced_matrices(*s2l2, *l12, [](const SparseTensor& r) { return Q(-1) * r; }, chk));
  add_blocks(x, 2, 1, sliced_matrices(*l12, *s2l2, [&](const SparseTensor& mu) {
               SparseTensor t = einsum(-1, c.R, "bcfa", mu, "fde", "abcde");
               einsum_acc(t, -1, c.R, "defa", mu, "fbc", "abcde");
               return t;
             }, chk));
  return x;
}

InvariantConnection pentagon_modification(const SymmetricPair& p, const CurvatureData& c) {
  InvariantConnection x = symmetric_power_connection(p, c);
  x.label = "pentagon";
  add_blocks(x, 2, 1,
             sliced_matrices(*fiber(p.n, "L1xL2"), *fiber(p.n, "S2L2"),
                             [&](const SparseTensor& mu) { return r_pentagon(c, mu); }, check_images(p.n)));
  return x;
}

InvariantConnection ky_connection(const SymmetricPair& p, const CurvatureData& c) {
  InvariantConnection x = tensor_bundle(p, {"L3", "L4"}, "ky3");
  auto l3 = fiber(p.n, "L3");
  auto l4 = fiber(p.n, "L4");
  add_blocks(x, 0, 1, sliced_matrices(*l4, *l3, [](const SparseTensor& r) { return Q(-1) * r; }));
  add_blocks(x, 1, 0, sliced_matrices(*l3, *l4, [&](const SparseTensor& mu) { return ky_term(c, mu); },
                                      check_images(p.n)));
  return x;
}

InvariantConnection affine_connection(const SymmetricPair& p, const CurvatureData& c) {
  InvariantConnection x = tensor_bundle(p, {"Vector", "End"}, "affine");
  auto vec = fiber(p.n, "Vector");
  auto end = fiber(p.n, "End");
  add_blocks(x, 0, 1, sliced_matrices(*end, *vec, [](const SparseTensor& phi) { return Q(-1) * phi; }));
  add_blocks(x, 1, 0, sliced_matrices(*vec, *end, [&](const SparseTensor& v) {
               return einsum(-1, c.R, "adcb", v, "d", "abc");
             }));
  return x;
}

SpMat phi_matrix(int n) {
  auto s2 = fiber(n, "S2");
  auto l12 = fiber(n, "L1xL2");
  auto s2l2 = fiber(n, "S2L2");
  auto ha = fiber(n, "HookAlt");
  auto win = fiber(n, "Window");
  const int rows = s2->dim() + ha->dim() + win->dim();
  const int cols = s2->dim() + l12->dim() + s2l2->dim();
  SpMat mu = tensor_matrix(*l12, *ha, [](const SparseTensor& t) { return t - alt(t, {0, 1, 2}); }, true);
  SpMat rho = tensor_matrix(*s2l2, *win, [](const SparseTensor& t) { return t - alt(t, {0, 1, 2, 3}); }, true);
  return place_block(sparse_identity(s2->dim()), rows, cols, 0, 0) +
         place_block(mu, rows, cols, s2->dim(), s2->dim()) +
         place_block(rho, rows, cols, s2->dim() + ha->dim(), s2->dim() + l12->dim());
}

std::vector<Q> symmetric_product(int n, const std::vector<Q>& x, const std::vector<Q>& y) {
  auto l1 = fiber(n, "L1");
  auto l2 = fiber(n, "L2");
  auto part = [&](const std::vector<Q>& z, int off, const Fiber& f) {
    return f.embed(std::vector<Q>(z.begin() + off, z.begin() + off + f.dim()));
  };
  SparseTensor s1 = part(x, 0, *l1), m1 = part(x, n, *l2);
  SparseTensor s2 = part(y, 0, *l1), m2 = part(y, n, *l2);
  SparseTensor a = outer(s1, s2) + outer(s2, s1);
  SparseTensor b = outer(s1, m2) + outer(s2, m1);
  SparseTensor c = outer(m1, m2) + outer(m2, m1);
  std::vector<Q> out = fiber(n, "S2")->project_checked(a);
  auto vb = fiber(n, "L1xL2")->project_checked(b);
  auto vc = fiber(n, "S2L2")->project_checked(c);
  out.insert(out.end(), vb.begin(), vb.end());
  out.insert(out.end(), vc.begin(), vc.end());
  return out;
}

SpMat gauge_matrix(const CurvatureData& c) {
  const int n = c.n;
  auto s2 = fiber(n, "S2");
  auto ha = fiber(n, "HookAlt");
  auto win = fiber(n, "Window");
  const int d = s2->dim() + ha->dim() + win->dim();
  SpMat s = tensor_matrix(*s2, *win, [&](const SparseTensor& t) {
    return r_triangle(c, t, TriangleOption::One) - r_triangle(c, t, TriangleOption::Two);
  }, true);
  return sparse_identity(d) + place_block(s, d, d, s2->dim() + ha->dim(), 0);
}

std::vector<Q> metric_section(const CurvatureData& c) {
  std::vector<Q> out = fiber(c.n, "S2")->project_checked(c.gt);
  out.resize(out.size() + fiber(c.n, "HookAlt")->dim());
  auto r = fiber(c.n, "Window")->project_checked(c.Rl);
  out.insert(out.end(), r.begin(), r.end());
  return out;
}

}  // namespace kt
