#include "doctest.h"

#include "kt/holonomy/holonomy.hpp"

#include <map>

using namespace kt;

namespace {

struct Space {
  SymmetricPair p;
  CurvatureData c;
  InvariantConnection k1;
  FlatSubspace f1;
};

const Space& space(const std::string& id) {
  static std::map<std::string, Space> cache;
  auto it = cache.find(id);
  if (it == cache.end()) {
    Space s;
    s.p = build_catalog(id);
    s.c = curvature_tensor(s.p);
    s.k1 = killing1_connection(s.p, s.c);
    s.f1 = parallel_subspace(s.p, s.k1);
    it = cache.emplace(id, std::move(s)).first;
  }
  return it->second;
}

void require_report(const Report& r) {
  for (const auto& ch : r.checks) {
    CAPTURE(ch.name);
    CAPTURE(ch.detail);
    CHECK(ch.pass);
  }
}

int killing2_dim(const std::string& id, TriangleOption opt = TriangleOption::One) {
  const auto& s = space(id);
  return parallel_subspace(s.p, killing2_connection(s.p, s.c, opt)).dim;
}

int sphere_k2(int n) { return n * (n + 1) * (n + 1) * (n + 2) / 12; }

const char* kPairs[] = {"sphere:2", "sphere:3", "sphere:4", "cp:2", "slso:3", "flat:3", "group:su2", "group:su3"};

}  // namespace

TEST_CASE("killing1 dimension is dim g") {
  for (const char* id : kPairs) {
    CAPTURE(std::string(id));
    const auto& s = space(id);
    // The flat model has g = ℝⁿ; its isometry algebra is the Euclidean one.
    CHECK(s.f1.dim == (s.p.flat ? s.p.n * (s.p.n + 1) / 2 : s.p.g.dim));
    CHECK(s.f1.certified);
  }
}

TEST_CASE("flat subspace invariants and monotone trace") {
  for (const char* id : {"sphere:3", "cp:2", "flat:3", "group:su2"}) {
    CAPTURE(std::string(id));
    const auto& s = space(id);
    InvariantConnection k2 = killing2_connection(s.p, s.c);
    FlatSubspace f = parallel_subspace(s.p, k2);
    require_report(check_parallel_flat(s.p, k2, f.vectors(), "killing2"));
    REQUIRE(!f.trace.empty());
    for (std::size_t i = 1; i < f.trace.size(); ++i) CHECK(f.trace[i] <= f.trace[i - 1]);
    CHECK(f.trace.back() == f.dim);
    CHECK(int(f.trace.size()) <= f.ambient + 1);
  }
}

TEST_CASE("killing2 on spheres and flat space") {
  for (int n = 2; n <= 5; ++n) CHECK(killing2_dim("sphere:" + std::to_string(n)) == sphere_k2(n));
  for (int n = 3; n <= 4; ++n) CHECK(killing2_dim("flat:" + std::to_string(n)) == sphere_k2(n));
  CHECK(killing2_dim("cp:2") == 36);
}

TEST_CASE("float backend agrees with the exact one") {
  const auto& s = space("cp:2");
  HolonomyOptions opt;
  opt.fix.backend = Backend::Float;
  FlatSubspace f = parallel_subspace(s.p, killing2_connection(s.p, s.c), opt);
  CHECK(f.dim == 36);
  CHECK(!f.certified);
  HolonomyOptions alpha_only;
  alpha_only.include_rho = false;
  CHECK(parallel_subspace(s.p, killing2_connection(s.p, s.c), alpha_only).dim == 36);
}

TEST_CASE("gauge invariance of the two options") {
  for (const char* id : {"sphere:3", "cp:2", "flat:3", "group:su2"}) {
    CAPTURE(std::string(id));
    CHECK(killing2_dim(id, TriangleOption::One) == killing2_dim(id, TriangleOption::Two));
  }
}

TEST_CASE("symmetric power and its modification have the same parallel sections") {
  for (const char* id : {"sphere:3", "cp:2", "flat:3", "group:su2"}) {
    CAPTURE(std::string(id));
    const auto& s = space(id);
    int a = parallel_subspace(s.p, symmetric_power_connection(s.p, s.c)).dim;
    int b = parallel_subspace(s.p, pentagon_modification(s.p, s.c)).dim;
    CHECK(a == b);
  }
}

TEST_CASE("Killing-Yano 3-forms") {
  for (int n = 3; n <= 5; ++n) {
    const auto& s = space("sphere:" + std::to_string(n));
    CHECK(parallel_subspace(s.p, ky_connection(s.p, s.c)).dim == (n + 1) * n * (n - 1) * (n - 2) / 24);
  }
  const auto& cp = space("cp:2");
  CHECK(parallel_subspace(cp.p, ky_connection(cp.p, cp.c)).dim == 0);
  const auto& su3 = space("group:su3");
  CHECK(parallel_subspace(su3.p, ky_connection(su3.p, su3.c)).dim == 1);
}

TEST_CASE("affine connection") {
  for (int n = 2; n <= 4; ++n) {
    const auto& s = space("flat:" + std::to_string(n));
    CHECK(parallel_subspace(s.p, affine_connection(s.p, s.c)).dim == n + n * n);
  }
  for (int n = 2; n <= 4; ++n) {
    const auto& s = space("sphere:" + std::to_string(n));
    CHECK(parallel_subspace(s.p, affine_connection(s.p, s.c)).dim == s.f1.dim);
  }
}

TEST_CASE("decomposable subspace") {
  const auto& s3 = space("sphere:3");
  InvariantConnection k2 = killing2_connection(s3.p, s3.c);
  Decomposable d = decomposable_subspace(s3.p, s3.k1, s3.f1.vectors(), k2);
  require_report(d.report);
  CHECK(d.sym_dim == 21);
  CHECK(d.kernel_dim == 1);
  CHECK(d.dim == 20);
  CHECK(d.certified);
  Decomposable dm = decomposable_subspace(s3.p, s3.k1, s3.f1.vectors(), k2, false);
  require_report(dm.report);
  CHECK(dm.dim == 20);
  for (const char* id : {"cp:2", "slso:3", "group:su3", "flat:3"}) {
    CAPTURE(std::string(id));
    const auto& s = space(id);
    InvariantConnection k = killing2_connection(s.p, s.c);
    Decomposable e = decomposable_subspace(s.p, s.k1, s.f1.vectors(), k);
    Decomposable m = decomposable_subspace(s.p, s.k1, s.f1.vectors(), k, false);
    require_report(e.report);
    require_report(m.report);
    CHECK(e.dim == m.dim);
    CHECK(contains(parallel_subspace(s.p, k).vectors(), e.delta));
  }
}

TEST_CASE("injectivity away from spheres and groups") {
  for (const char* id : {"cp:2", "slso:3"}) {
    CAPTURE(std::string(id));
    const auto& s = space(id);
    InvariantConnection k = killing2_connection(s.p, s.c);
    CHECK(decomposable_subspace(s.p, s.k1, s.f1.vectors(), k).kernel_dim == 0);
  }
}

TEST_CASE("hidden symmetries") {
  for (const char* id : {"sphere:4", "cp:2", "group:su3"}) {
    CAPTURE(std::string(id));
    const auto& s = space(id);
    InvariantConnection k = killing2_connection(s.p, s.c);
    int k2 = parallel_subspace(s.p, k).dim;
    Decomposable d = decomposable_subspace(s.p, s.k1, s.f1.vectors(), k);
    CHECK(k2 - d.dim == 0);
  }
  const auto& su3 = space("group:su3");
  Decomposable d = decomposable_subspace(su3.p, su3.k1, su3.f1.vectors(), killing2_connection(su3.p, su3.c));
  CHECK(d.sym_dim == 136);
  CHECK(d.kernel_dim >= 1);
  HiddenReport q = quotient_ranks(space("cp:2").c);
  CHECK(q.p_rank >= 0);
  CHECK(q.q_rank >= 0);
  HiddenReport f = quotient_ranks(space("flat:3").c);
  // K = Λ² when R = 0.
  CHECK(f.p_rank == 0);
  CHECK(f.q_rank == 0);
}

TEST_CASE("first damper bound") {
  for (const char* id : {"flat:3", "sphere:3", "cp:2", "slso:3", "group:su2"}) {
    CAPTURE(std::string(id));
    const auto& s = space(id);
    InvariantConnection k = killing2_connection(s.p, s.c);
    DamperBound b = first_damper_bound(s.p, s.c, k);
    require_report(b.report);
    CHECK(b.bound() >= parallel_subspace(s.p, k).dim);
    DamperBound m = first_damper_bound_modular(s.p, k, true);
    CHECK(m.bound() == b.bound());
    CHECK(first_damper_bound_modular(s.p, k, false).bound() == b.bound());
  }
  const auto& f = space("flat:3");
  InvariantConnection fk = killing2_connection(f.p, f.c);
  CHECK(first_damper_bound(f.p, f.c, fk).bound() == fk.dim());
  const auto& s3 = space("sphere:3");
  DamperBound b = first_damper_bound(s3.p, s3.c, killing2_connection(s3.p, s3.c));
  CHECK(b.bound() >= 20);
  CHECK(b.lines_one_three_vanish);
  // Lines one and three contribute on cp:2 (recorded deviation).
  const auto& cp = space("cp:2");
  CHECK(!first_damper_bound(cp.p, cp.c, killing2_connection(cp.p, cp.c)).lines_one_three_vanish);
}

TEST_CASE("prolonged bracket") {
  const auto& s = space("sphere:3");
  for (const auto& x : s.f1.vectors().vectors) {
    auto z = prolonged_bracket(s.c, x, x);
    for (const auto& v : z) CHECK(sgn(v) == 0);
  }
  KillingAlgebra alg = killing_algebra(s.p, s.c, s.k1, s.f1);
  require_report(alg.report);
  // so(4) is compact: the Killing form is definite of rank 6.
  Signature sig = signature(alg.algebra.killing_form());
  Signature ref = signature(s.p.g.killing_form());
  CHECK(sig.zero == 0);
  CHECK((sig == ref || (sig.pos == ref.neg && sig.neg == ref.pos)));
  CHECK(sig.pos + sig.neg == 6);
  CHECK((sig.pos == 0 || sig.neg == 0));
  for (const char* id : {"cp:2", "group:su3", "flat:3"}) {
    CAPTURE(std::string(id));
    const auto& t = space(id);
    require_report(killing_algebra(t.p, t.c, t.k1, t.f1).report);
  }
}

TEST_CASE("group splitting") {
  for (const char* id : {"group:su2", "group:su3", "group:so4"}) {
    CAPTURE(std::string(id));
    const auto& s = space(id);
    KillingAlgebra alg = killing_algebra(s.p, s.c, s.k1, s.f1);
    SplittingReport r = group_splitting(s.p, s.c, s.k1, alg);
    require_report(r.report);
    CHECK(r.plus == s.p.group->hdim);
    CHECK(r.minus == s.p.group->hdim);
  }
}

TEST_CASE("invariant symmetric 3-tensors") {
  for (int n = 2; n <= 4; ++n) {
    const auto& s = space("sphere:" + std::to_string(n));
    CHECK(kernel_stacked(rho_matrices(isotropy(s.p), *fiber(n, "S3"))).dim() == 0);
  }
  for (const char* id : {"flat:3", "group:su3"}) {
    CAPTURE(std::string(id));
    const auto& s = space(id);
    InvariantConnection k2 = killing2_connection(s.p, s.c);
    FlatSubspace f2 = parallel_subspace(s.p, k2);
    Sym3Report r = invariant_sym3(s.p, s.c, s.k1, s.f1.vectors(), k2, f2.vectors());
    require_report(r.report);
    // Rotations act on the flat model, and no cubic is rotation invariant.
    if (std::string(id) == "flat:3")
      CHECK(r.invariants.dim() == 0);
    else
      CHECK(r.invariants.dim() >= 1);
  }
}

TEST_CASE("quaternionic projective plane" * doctest::timeout(300)) {
  const auto& s = space("hp:2");
  InvariantConnection k = killing2_connection(s.p, s.c);
  FlatSubspace f = parallel_subspace(s.p, k);
  CHECK(f.dim == 231);
  CHECK(f.certified);
  Decomposable d = decomposable_subspace(s.p, s.k1, s.f1.vectors(), k, false);
  require_report(d.report);
  CHECK(f.dim - d.dim == 0);
}
