#include "kt/cli/cli.hpp"
#include "kt/numerics/modp.hpp"
#include "kt/tensor/forms.hpp"
#include "kt/tensor/maps.hpp"

#include <algorithm>

namespace kt::cli {

namespace {

template <class F>
bool all_basis(const Fiber& f, F pred) {
  for (int j = 0; j < f.dim(); ++j)
    if (!pred(f.basis_tensor(j))) return false;
  return true;
}

const std::vector<std::string> kHeavy = {"tensor", "generic", "first_stage", "r_diamond", "key_piece",
                                         "killing2", "symmetric_power", "phi", "affine"};

}  // namespace

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> k = {"validate", "bianchi", "lts", "tensor", "generic", "killing1",
                                             "r_triangle", "r_diamond", "first_stage", "key_piece", "killing2",
                                             "symmetric_power", "phi", "affine", "eigenvalues", "su6", "cartan"};
  return k;
}

SesMatrices ses_matrices(int n) {
  auto s2 = fiber(n, "S2");
  auto ha = fiber(n, "HookAlt");
  auto win = fiber(n, "Window");
  // (∂μ)_a cd = −μ_cda − μ_dca.
  auto d1 = sliced_matrices(*ha, *s2, [&](const SparseTensor& mu) {
    SparseTensor out(n, 3);
    einsum_acc(out, -1, mu, "cda", "acd");
    einsum_acc(out, -1, mu, "dca", "acd");
    return out;
  });
  auto d2 = sliced_matrices(*win, *ha, [](const SparseTensor& x) { return x; }, true);
  return SesMatrices{stack_forms(d2), wedge_partial(n, 1, d1), wedge_partial(n, 1, d2), wedge_partial(n, 2, d1)};
}

Report verify_tensor_identities(int n) {
  Report r;
  auto l2l1 = fiber(n, "L2xL1");
  auto l1l2 = fiber(n, "L1xL2");
  r.add("partial_inverse.round_trip",
        all_basis(*l2l1, [&](const SparseTensor& t) {
          SparseTensor m = partial_inverse(t);
          return l1l2->contains(m) && partial_inverse_back(m) == t;
        }) && all_basis(*l1l2, [&](const SparseTensor& m) { return partial_inverse(partial_inverse_back(m)) == m; }));
  auto lw = fiber(n, "L1xWindow");
  r.add("fun_formula.two_sided_inverse", all_basis(*lw, [&](const SparseTensor& x) {
          SparseTensor y = fun_automorphism(x);
          return lw->contains(y) && fun_automorphism_inverse(y) == x && fun_automorphism(fun_automorphism_inverse(x)) == x;
        }));
  auto l4 = fiber(n, "L1xL4Hook");
  r.add("mindless.recover_8_3", all_basis(*l4, [&](const SparseTensor& phi) { return mindless_recover(phi) == phi; }));
  auto ha = fiber(n, "HookAlt");
  auto hs = fiber(n, "HookSym");
  r.add("hook.round_trip",
        all_basis(*ha, [&](const SparseTensor& mu) { return hook_sym_to_alt(hook_alt_to_sym(mu)) == mu; }) &&
            all_basis(*hs, [&](const SparseTensor& nu) { return hook_alt_to_sym(hook_sym_to_alt(nu)) == nu; }));
  const int vs = very_simple_algebra_kernel(n);
  r.add("very_simple_algebra.kernel_zero", vs == 0, "kernel " + std::to_string(vs));
  auto win = fiber(n, "Window");
  SesMatrices m = ses_matrices(n);
  Field fp;
  r.add("ses1.exact", is_zero(m.w1 * m.inc) && rank_mod(m.inc, fp) == win->dim() &&
                          rank_mod(m.w1, fp) == n * ha->dim() - win->dim());
  r.add("ses2.exact", is_zero(m.w12 * m.w2) && rank_mod(m.w2, fp) == n * win->dim() &&
                          rank_mod(m.w12, fp) == m.w12.rows && m.w12.cols - m.w12.rows == n * win->dim());
  return r;
}

Report verify_bianchi(const CurvatureData& c) {
  Report r;
  SparseTensor b = c.R + einsum(1, c.R, "bdca", "abcd") + einsum(1, c.R, "dacb", "abcd");
  b.prune();
  r.add("curvature.first_bianchi", b.is_zero());
  SparseTensor skew = c.R + einsum(1, c.R, "bacd", "abcd");
  skew.prune();
  r.add("curvature.skew_in_first_pair", skew.is_zero());
  SparseTensor pair = c.Rl - einsum(1, c.Rl, "cdab", "abcd");
  pair.prune();
  r.add("curvature.pair_symmetry", pair.is_zero());
  r.add("curvature.ricci_is_metric", c.flat ? c.ric == QMat(c.n, c.n) : c.ric == c.g);
  return r;
}

std::optional<CheckGroup> run_check(const std::string& name, const SymmetricPair& p, const CurvatureData& c,
                                    bool long_run) {
  CheckGroup g;
  g.name = name;
  if (p.n > 8 && !long_run && std::find(kHeavy.begin(), kHeavy.end(), name) != kHeavy.end()) return std::nullopt;
  if (name == "validate") {
    g.report = validate(p);
  } else if (name == "bianchi") {
    g.report = verify_bianchi(c);
  } else if (name == "lts") {
    g.report = verify_lts(c, k_subspace(c), khat_subspace(c));
  } else if (name == "tensor") {
    g.report = verify_tensor_identities(p.n);
  } else if (name == "generic") {
    g.report = verify_generic_examples(p, c);
  } else if (name == "killing1") {
    g.report = verify_killing1(p, c);
  } else if (name == "r_triangle") {
    g.report = verify_r_triangle(c);
  } else if (name == "r_diamond") {
    g.report = verify_r_diamond(c);
  } else if (name == "first_stage") {
    g.report = verify_first_stage_curvature(p, c);
  } else if (name == "key_piece") {
    auto l12 = fiber(p.n, "L1xL2");
    g.report.add("key_piece", all_basis(*l12, [&](const SparseTensor& mu) { return verify_key_piece(c, mu).ok(); }));
  } else if (name == "killing2") {
    g.report = verify_killing2(p, c);
  } else if (name == "symmetric_power") {
    g.report = verify_symmetric_power(p, c);
  } else if (name == "phi") {
    g.report = verify_phi(p, c);
  } else if (name == "affine") {
    g.report = verify_affine(p, c);
  } else if (name == "eigenvalues") {
    auto spec = rational_spectrum(to_dense(second_kind_operator(c)));
    const int d = fiber(p.n, "S2")->dim();
    int total = 0;
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    if (spec)
      for (const auto& e : *spec) {
        list.push_back({{"lambda", to_string(e.lambda)}, {"multiplicity", e.multiplicity}});
        total += e.multiplicity;
      }
    g.data["second_kind_spectrum"] = list;
    g.report.add("eigenvalues.certified", spec && total == d,
                 std::to_string(total) + " of " + std::to_string(d) + " by exact rank");
  } else if (name == "su6") {
    if (p.label != "su2n_spn:3") return std::nullopt;
    g.report = su6_identities(c);
  } else if (name == "cartan") {
    if (!p.group) return std::nullopt;
    try {
      CartanForm f = cartan_form(p, c);
      g.report = verify_cartan(c, f);
      g.data["raw_lambda"] = to_string(f.raw_lambda);
    } catch (const std::domain_error& e) {
      g.report.add("cartan.normalization", false, e.what());
    }
  } else {
    throw std::invalid_argument("unknown check: " + name);
  }
  return g;
}

}  // namespace kt::cli
