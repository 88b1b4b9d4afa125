#include "kt/prolong/prolong.hpp"

#include "kt/tensor/maps.hpp"

namespace kt {

namespace {

// coef · sym_{s1} sym_{s2} (R_{rl} μ_{ml}) with output labels abcde…
void term(SparseTensor& out, const Q& coef, const SparseTensor& r, std::string_view rl, const SparseTensor& mu,
          std::string_view ml, std::string_view lo, std::vector<int> s1 = {}, std::vector<int> s2 = {}) {
  SparseTensor t = einsum(1, r, rl, mu, ml, lo);
  if (!s1.empty()) t = sym(t, s1);
  if (!s2.empty()) t = sym(t, s2);
  t *= coef;
  out += t;
}

}  // namespace

SparseTensor r_triangle(const CurvatureData& c, const SparseTensor& s, TriangleOption opt) {
  SparseTensor t(c.n, 4);
  if (opt == TriangleOption::One) {
    einsum_acc(t, Q(2, 3), c.R, "cdea", s, "be", "abcd");
    einsum_acc(t, Q(-1, 3), c.R, "bcea", s, "de", "abcd");
    einsum_acc(t, Q(1, 3), c.R, "bdea", s, "ce", "abcd");
  } else {
    einsum_acc(t, Q(5, 12), c.R, "cdea", s, "be", "abcd");
    einsum_acc(t, Q(1, 4), c.R, "cdeb", s, "ae", "abcd");
    einsum_acc(t, Q(1, 12), c.R, "abec", s, "de", "abcd");
    einsum_acc(t, Q(-1, 12), c.R, "abed", s, "ce", "abcd");
    einsum_acc(t, Q(1, 3), c.R, "caeb", s, "de", "abcd");
    einsum_acc(t, Q(-1, 3), c.R, "daeb", s, "ce", "abcd");
  }
  t.prune();
  return t;
}

SparseTensor r_diamond(const CurvatureData& c, const SparseTensor& mu, int line) {
  const auto& R = c.R;
  SparseTensor t(c.n, 5);
  if (line == 0 || line == 1) {
    term(t, 1, R, "bcfa", mu, "fde", "abcde");
    term(t, 1, R, "defa", mu, "fbc", "abcde");
    term(t, Q(-1, 2), R, "befa", mu, "fcd", "abcde");
    term(t, Q(-1, 2), R, "cdfa", mu, "fbe", "abcde");
    term(t, Q(1, 2), R, "bdfa", mu, "fce", "abcde");
    term(t, Q(1, 2), R, "cefa", mu, "fbd", "abcde");
  }
  if (line == 0 || line == 2) {
    const Q k(2, 3);
    term(t, k, R, "abfd", mu, "cef", "abcde", {1, 3}, {2, 4});
    term(t, -k, R, "acfd", mu, "bef", "abcde", {2, 3}, {1, 4});
    term(t, -k, R, "abfe", mu, "cdf", "abcde", {1, 4}, {2, 3});
    term(t, k, R, "acfe", mu, "bdf", "abcde", {2, 4}, {1, 3});
  }
  if (line == 0 || line == 3) {
    const Q k(-2, 3);
    term(t, k, R, "bcfd", mu, "eaf", "abcde", {4, 0});
    term(t, -k, R, "bcfe", mu, "daf", "abcde", {3, 0});
    term(t, k, R, "defb", mu, "caf", "abcde", {2, 0});
    term(t, -k, R, "defc", mu, "baf", "abcde", {1, 0});
  }
  t.prune();
  return t;
}

SparseTensor first_stage_curvature_formula(const CurvatureData& c, const SparseTensor& mu) {
  const auto& R = c.R;
  SparseTensor ms = sym(mu, {0, 1});
  SparseTensor t(c.n, 5);
  einsum_acc(t, Q(-1, 2), R, "abfc", mu, "fde", "abcde");
  einsum_acc(t, Q(-1, 2), R, "abfd", mu, "cfe", "abcde");
  einsum_acc(t, Q(-1, 2), R, "abfe", mu, "cdf", "abcde");
  einsum_acc(t, Q(-2, 3), R, "defa", ms, "cfb", "abcde");
  einsum_acc(t, Q(2, 3), R, "defb", ms, "cfa", "abcde");
  einsum_acc(t, Q(1, 3), R, "cdfa", ms, "efb", "abcde");
  einsum_acc(t, Q(-1, 3), R, "cdfb", ms, "efa", "abcde");
  einsum_acc(t, Q(-1, 3), R, "cefa", ms, "dfb", "abcde");
  einsum_acc(t, Q(1, 3), R, "cefb", ms, "dfa", "abcde");
  t.prune();
  return t;
}

SparseTensor killing1_curvature_formula(const CurvatureData& c, const SparseTensor& mu) { return k_condition(c, mu); }

SparseTensor symmetric_curvature_mu(const CurvatureData& c, const SparseTensor& mu) {
  SparseTensor t(c.n, 5);
  einsum_acc(t, Q(1, 2), c.R, "abfd", mu, "cef", "abcde");
  einsum_acc(t, Q(-1, 2), c.R, "abfe", mu, "cdf", "abcde");
  einsum_acc(t, Q(1, 2), c.R, "defa", mu, "cbf", "abcde");
  einsum_acc(t, Q(-1, 2), c.R, "defb", mu, "caf", "abcde");
  t.prune();
  return t;
}

SparseTensor symmetric_curvature_rho(const CurvatureData& c, const SparseTensor& rho) {
  SparseTensor t(c.n, 6);
  t += alt(einsum(1, c.R, "abpc", rho, "dpef", "abcdef"), {2, 3});
  t += alt(einsum(1, c.R, "cdpa", rho, "bpef", "abcdef"), {0, 1});
  t += alt(einsum(1, c.R, "abpe", rho, "fpcd", "abcdef"), {4, 5});
  t += alt(einsum(1, c.R, "efpa", rho, "bpcd", "abcdef"), {0, 1});
  t.prune();
  return t;
}

SparseTensor pentagon_x(const CurvatureData& c, const SparseTensor& mu) {
  SparseTensor x(c.n, 5);
  einsum_acc(x, 1, c.R, "bcfd", mu, "aef", "abcde");
  einsum_acc(x, -1, c.R, "bcfe", mu, "adf", "abcde");
  einsum_acc(x, 1, c.R, "defb", mu, "acf", "abcde");
  einsum_acc(x, -1, c.R, "defc", mu, "abf", "abcde");
  x.prune();
  return x;
}

SparseTensor r_pentagon(const CurvatureData& c, const SparseTensor& mu) {
  SparseTensor x = pentagon_x(c, mu);
  SparseTensor y = x;
  y -= Q(2) * alt(einsum(1, x, "bcade", "abcde"), {1, 2});
  y -= Q(2) * alt(einsum(1, x, "deabc", "abcde"), {3, 4});
  y *= Q(1, 3);
  y.prune();
  return y;
}

SparseTensor key_piece_rhs(const CurvatureData& c, const SparseTensor& mu) {
  SparseTensor t(c.n, 5);
  SparseTensor first = einsum(1, c.R, "bcfa", mu, "fde", "abcde");
  t += first;
  einsum_acc(t, 1, c.R, "defa", mu, "fbc", "abcde");
  t -= Q(2) * alt(first, {1, 2, 3, 4});
  SparseTensor x = pentagon_x(c, mu);
  SparseTensor s = x;
  einsum_acc(s, 1, x, "bacde", "abcde");
  einsum_acc(s, -1, x, "cabde", "abcde");
  einsum_acc(s, 1, x, "daebc", "abcde");
  einsum_acc(s, -1, x, "eadbc", "abcde");
  s *= Q(-1, 3);
  t += s;
  t.prune();
  return t;
}

SparseTensor ky_term(const CurvatureData& c, const SparseTensor& mu) {
  SparseTensor t = Q(4) * alt(einsum(1, c.R, "abfc", mu, "def", "abcde"), {1, 2, 3, 4});
  t.prune();
  return t;
}

SparseTensor affine_curvature_formula(const CurvatureData& c, const SparseTensor& phi) {
  SparseTensor t(c.n, 4);
  einsum_acc(t, Q(1, 2), c.R, "abde", phi, "ce", "abcd");
  einsum_acc(t, Q(-1, 2), c.R, "abec", phi, "ed", "abcd");
  einsum_acc(t, Q(1, 2), c.R, "aedc", phi, "be", "abcd");
  einsum_acc(t, Q(-1, 2), c.R, "bedc", phi, "ae", "abcd");
  t.prune();
  return t;
}

}  // namespace kt
