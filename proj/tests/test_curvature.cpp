#include "doctest.h"

#include "kt/curvature/curvature.hpp"
#include "kt/tensor/isotropy.hpp"

#include <map>

using namespace kt;

namespace {

const SymmetricPair& pair_of(const std::string& id) {
  static std::map<std::string, SymmetricPair> cache;
  auto it = cache.find(id);
  if (it == cache.end()) it = cache.emplace(id, build_catalog(id)).first;
  return it->second;
}

const CurvatureData& curv_of(const std::string& id) {
  static std::map<std::string, CurvatureData> cache;
  auto it = cache.find(id);
  if (it == cache.end()) it = cache.emplace(id, curvature_tensor(pair_of(id))).first;
  return it->second;
}

SparseTensor constant_curvature(const CurvatureData& c) {
  SparseTensor t(c.n, 4);
  einsum_acc(t, Q(1, c.n - 1), c.gt, "ac", c.gt, "bd", "abcd");
  einsum_acc(t, Q(-1, c.n - 1), c.gt, "bc", c.gt, "ad", "abcd");
  t.prune();
  return t;
}

bool invariant(const SubspaceBasis& s, const std::vector<SpMat>& rho) {
  for (const auto& r : rho)
    for (const auto& v : s.vectors)
      if (!contains(s, kt::apply(r, v))) return false;
  return true;
}

}  // namespace

TEST_CASE("flat curvature vanishes with unit scale") {
  const auto& c = curv_of("flat:4");
  CHECK(c.R.is_zero());
  CHECK(c.flat);
  CHECK(c.scale == 1);
  CHECK(c.g == QMat::identity(4));
  CHECK(normalize_metric(pair_of("flat:4"), c).scale == 1);
}

TEST_CASE("sphere curvature has constant curvature form after normalization") {
  for (int n : {2, 3, 4, 5}) {
    const auto& c = curv_of("sphere:" + std::to_string(n));
    CHECK(c.ric == c.g);
    CHECK(c.Rl == constant_curvature(c));
  }
}

TEST_CASE("normalization makes Ricci equal to the metric") {
  for (const char* id : {"cp:2", "hp:2", "slso:3", "group:su3", "su2n_spn:3"}) {
    const auto& c = curv_of(id);
    CAPTURE(id);
    CHECK(c.ric == c.g);
    CHECK(c.scale == Q(1, 2));
  }
}

TEST_CASE("non-proportional Ricci is rejected unless relaxed") {
  // S² × ℝ: m = (m of S²) ⊕ ℝ, k = so(2).
  const auto& s2 = pair_of("sphere:2");
  SymmetricPair p;
  p.label = "s2xr";
  p.n = 3;
  p.kdim = 1;
  p.g = LieAlgebra(4);
  const int map[3] = {0, 1, 3};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (const auto& [k, v] : s2.g.bracket(i, j)) p.g.set(map[i], map[j], map[k], v);
  p.metric = QMat(3, 3);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) p.metric(i, j) = s2.metric(i, j);
  p.metric(2, 2) = 1;
  CHECK_THROWS_AS(curvature_tensor(p), std::domain_error);
  CHECK_NOTHROW(curvature_tensor(p, true));
  // The bi-invariant metric on SO(4) is Einstein although the pair is reducible.
  CHECK(curvature_tensor(pair_of("group:so4")).ric == curvature_tensor(pair_of("group:so4")).g);
}

TEST_CASE("group su2 has the curvature of the round three-sphere") {
  const auto& a = curv_of("group:su2");
  const auto& b = curv_of("sphere:3");
  auto sa = rational_spectrum(to_dense(lambda2_operator(a)));
  auto sb = rational_spectrum(to_dense(lambda2_operator(b)));
  REQUIRE(sa);
  REQUIRE(sb);
  REQUIRE(sa->size() == sb->size());
  for (std::size_t i = 0; i < sa->size(); ++i) {
    CHECK((*sa)[i].lambda == (*sb)[i].lambda);
    CHECK((*sa)[i].multiplicity == (*sb)[i].multiplicity);
  }
  CHECK(a.Rl == constant_curvature(a));
}

TEST_CASE("K and Khat dimensions") {
  for (int n : {2, 3, 4, 5}) {
    const auto& c = curv_of("sphere:" + std::to_string(n));
    CHECK(k_subspace(c).dim() == n * (n - 1) / 2);
  }
  const auto& f = curv_of("flat:3");
  CHECK(k_subspace(f).dim() == 3);
  CHECK(khat_subspace(f).dim() == 9);
  CHECK(k_subspace(curv_of("su2n_spn:3")).dim() == 21);
  CHECK(k_subspace(curv_of("cp:2")).dim() == 4);
  CHECK(k_subspace(curv_of("group:su3")).dim() == 8);
}

TEST_CASE("K and Khat are isotropy invariant") {
  for (const char* id : {"sphere:4", "cp:2", "group:su3"}) {
    CAPTURE(id);
    const auto& p = pair_of(id);
    const auto& c = curv_of(id);
    auto iso = isotropy(p);
    CHECK(invariant(k_subspace(c), rho_matrices(iso, *fiber(p.n, "L2"))));
    CHECK(invariant(khat_subspace(c), rho_matrices(iso, *fiber(p.n, "End"))));
  }
}

TEST_CASE("LTS and affine LTS") {
  for (const char* id : {"sphere:4", "cp:2", "group:su3", "su2n_spn:3", "flat:3"}) {
    CAPTURE(id);
    const auto& c = curv_of(id);
    Report r = verify_lts(c, k_subspace(c), khat_subspace(c));
    for (const auto& ch : r.checks) {
      CAPTURE(ch.name);
      CHECK(ch.pass);
    }
  }
}

TEST_CASE("second kind operator") {
  CHECK(is_zero(second_kind_operator(curv_of("flat:3"))));
  const auto& c = curv_of("su2n_spn:3");
  QMat s = to_dense(second_kind_operator(c));
  // Trace on ⊙² is ½(R_a^a_b^b + R_a^b_b^a) = −n/2 by Riemann symmetry and Ric = g.
  Q tr = 0;
  for (int i = 0; i < s.rows; ++i) tr += s(i, i);
  CHECK(tr == Q(-7));
  CHECK(rank_at_eigenvalue(s, 1) == 1);
  CHECK(rank_at_eigenvalue(s, Q(1, 2)) == 14);
  // The remaining 90 dimensions carry one eigenvalue, forced by the trace: 1 + 7 + 90λ = −7.
  CHECK(rank_at_eigenvalue(s, Q(-1, 6)) == 90);
  CHECK(rank_at_eigenvalue(s, Q(1, 15)) == 0);
  auto spec = rational_spectrum(s);
  REQUIRE(spec);
  CHECK(spec->size() == 3);
}

TEST_CASE("Lambda2 operator") {
  CHECK(is_zero(lambda2_operator(curv_of("flat:3"))));
  for (const char* id : {"sphere:4", "cp:2", "su2n_spn:3"}) {
    CAPTURE(id);
    const auto& c = curv_of(id);
    QMat l = to_dense(lambda2_operator(c));
    SubspaceBasis k = k_subspace(c);
    SubspaceBasis ker = kernel(l);
    CHECK(ker.dim() + k.dim() == l.rows);
    CHECK(intersect(ker, k).dim() == 0);
  }
  const auto& c = curv_of("su2n_spn:3");
  QMat l = to_dense(lambda2_operator(c));
  for (const auto& v : k_subspace(c).vectors) {
    std::vector<Q> w = v;
    for (auto& x : w) x *= Q(2, 3);
    CHECK(l * v == w);
  }
}

TEST_CASE("SU(6)/Sp(3) curvature identities") {
  Report r = su6_identities(curv_of("su2n_spn:3"));
  for (const auto& ch : r.checks) {
    CAPTURE(ch.name);
    CHECK(ch.pass);
  }
  Report s = su6_identities(curv_of("sphere:5"));
  CHECK_FALSE(s.checks[0].pass);
  Report f = su6_identities(curv_of("flat:4"));
  CHECK(f.ok());
}

TEST_CASE("Cartan form") {
  CHECK_THROWS_AS(cartan_form(pair_of("sphere:4"), curv_of("sphere:4")), std::domain_error);
  for (const char* id : {"group:su2", "group:su3"}) {
    CAPTURE(id);
    const auto& p = pair_of(id);
    const auto& c = curv_of(id);
    CartanForm f = cartan_form(p, c);
    CHECK_FALSE(f.phi.is_zero());
    Report r = verify_cartan(c, f);
    for (const auto& ch : r.checks) {
      CAPTURE(ch.name);
      CHECK(ch.pass);
    }
    // X^e φ_eab are eigenvectors of the Λ² operator with eigenvalue 1.
    auto l2 = fiber(p.n, "L2");
    QMat l = to_dense(lambda2_operator(c));
    for (int e = 0; e < p.n; ++e) {
      SparseTensor mu = slice0(f.phi, e);
      auto v = l2->project(mu);
      CHECK(l * v == v);
    }
    // The endomorphism squares to the identity on Λ¹ ⊕ K.
    SpMat j = cartan_endomorphism(c, f);
    SpMat j2 = j * j;
    SubspaceBasis k = k_subspace(c);
    for (int a = 0; a < p.n; ++a) {
      std::vector<Q> x(j.rows);
      x[a] = 1;
      CHECK(kt::apply(j2, x) == x);
    }
    for (const auto& v : k.vectors) {
      std::vector<Q> x(j.rows);
      for (int i = 0; i < int(v.size()); ++i) x[p.n + i] = v[i];
      CHECK(kt::apply(j2, x) == x);
    }
  }
  // Λ³ of a 3-dimensional space is 1-dimensional.
  CHECK(fiber(3, "L3")->dim() == 1);
}
