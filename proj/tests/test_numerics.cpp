#include "doctest.h"

#include "kt/numerics/fixpoint.hpp"
#include "kt/numerics/floatla.hpp"
#include "kt/numerics/linalg.hpp"
#include "kt/numerics/modp.hpp"

#include <random>

using namespace kt;

namespace {

QMat qmat(std::initializer_list<std::initializer_list<int>> rows) {
  QMat m(int(rows.size()), int(rows.begin()->size()));
  int i = 0;
  for (auto r : rows) {
    int j = 0;
    for (int x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

std::vector<Q> unit(int n, int i) {
  std::vector<Q> e(n);
  e[i] = 1;
  return e;
}

SpMat random_sparse(std::mt19937& rng, int n, double density) {
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> v(-3, 3);
  QMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (u(rng) < density) m(i, j) = Q(v(rng), 1 + (v(rng) + 3) % 2);
  return sparse_from_dense(m);
}

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("6/4") == Q(3, 2));
  CHECK(parse_rational("-7") == Q(-7));
  CHECK(to_string(Q(-3) / 9) == "-1/3");
  CHECK(to_string(Q(5)) == "5");
}

TEST_CASE("kernel examples") {
  CHECK(kernel(QMat(3, 3)).dim() == 3);
  CHECK(kernel(QMat::identity(4)).dim() == 0);
  auto k = kernel(qmat({{1, 1}, {2, 2}}));
  REQUIRE(k.dim() == 1);
  CHECK(k.vectors[0][0] == -k.vectors[0][1]);
  CHECK(!is_zero(k.vectors[0][0]));
}

TEST_CASE("kernel vectors are annihilated") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    SpMat a = random_sparse(rng, 9, 0.25);
    auto k = kernel(a);
    for (const auto& v : k.vectors)
      for (const auto& x : kt::apply(a, v)) CHECK(is_zero(x));
    CHECK(k.dim() + rank(a) == 9);
    CHECK(rank_mod(a, Field{}) == rank(a));
    CHECK(rank_float(to_eigen(a)) == rank(a));
  }
}

TEST_CASE("intersections") {
  SubspaceBasis e1{2, {unit(2, 0)}}, e2{2, {unit(2, 1)}};
  CHECK(intersect(e1, e2).dim() == 0);
  auto s = SubspaceBasis{3, {unit(3, 0), unit(3, 1)}};
  auto t = SubspaceBasis{3, {unit(3, 1), unit(3, 2)}};
  auto st = intersect(s, t);
  REQUIRE(st.dim() == 1);
  CHECK(contains(st, unit(3, 1)));
  CHECK(same_subspace(intersect(s, s), s));
  CHECK_THROWS(intersect(s, e1));
}

TEST_CASE("rank at eigenvalue") {
  CHECK(rank_at_eigenvalue(QMat::identity(5), Q(1)) == 5);
  QMat d(3, 3);
  d(0, 0) = 1;
  d(1, 1) = Q(1, 2);
  d(2, 2) = Q(1, 2);
  CHECK(rank_at_eigenvalue(d, Q(1, 2)) == 2);
  CHECK(rank_at_eigenvalue(d, Q(1, 3)) == 0);
}

TEST_CASE("modular field and reconstruction") {
  Field f;
  CHECK(f.mul(f.inv(12345), 12345) == 1);
  u64 x = f.reduce(Q(-22, 7));
  auto q = rational_reconstruct(mpz_class(std::to_string(x)), mpz_class(std::to_string(f.p)));
  REQUIRE(q);
  CHECK(*q == Q(-22, 7));
  CHECK(modular_primes().size() >= 4);
}

TEST_CASE("largest invariant subspace examples") {
  auto full = SubspaceBasis::full(3);
  CHECK(largest_invariant_subspace(full, {}).basis.dim() == 3);
  SpMat perm = sparse_from_dense(qmat({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}));
  SpMat rnd = sparse_from_dense(qmat({{1, 2, 3}, {0, 5, 7}, {4, 0, 1}}));
  CHECK(largest_invariant_subspace(full, {perm, rnd}).basis.dim() == 3);
  SubspaceBasis v0{3, {unit(3, 0)}};
  CHECK(largest_invariant_subspace(v0, {}).basis.dim() == 1);
  CHECK(largest_invariant_subspace(v0, {perm}).basis.dim() == 0);
  SubspaceBasis v2{3, {unit(3, 0), unit(3, 1)}};
  CHECK(largest_invariant_subspace(v2, {perm}).basis.dim() == 2);
}

TEST_CASE("modular closure agrees with the rational reference") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 12;
    // Block upper triangular ops share an invariant subspace of dimension d.
    int d = 1 + trial % 6;
    std::vector<SpMat> ops;
    for (int k = 0; k < 2; ++k) {
      QMat m = to_dense(random_sparse(rng, n, 0.4));
      for (int i = d; i < n; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = 0;
      ops.push_back(sparse_from_dense(m));
    }
    SubspaceBasis v0{n, {}};
    for (int i = 0; i < n - 2; ++i) v0.vectors.push_back(unit(n, i));
    auto ref = invariant_subspace_reference(v0, ops);
    FixpointOptions serial;
    serial.parallel = false;
    auto fast = largest_invariant_subspace(v0, ops);
    auto slow = largest_invariant_subspace(v0, ops, serial);
    CHECK(same_subspace(ref.basis, fast.basis));
    CHECK(same_subspace(ref.basis, slow.basis));
    CHECK(fast.trace == slow.trace);
    for (std::size_t i = 1; i < fast.trace.size(); ++i) CHECK(fast.trace[i] <= fast.trace[i - 1]);
    for (const auto& op : ops)
      for (const auto& v : fast.basis.vectors) CHECK(contains(fast.basis, kt::apply(op, v)));
    // Adjoining any vector of V0 outside W breaks invariance.
    for (const auto& v : v0.vectors) {
      if (contains(fast.basis, v)) continue;
      auto ext = sum(fast.basis, SubspaceBasis{n, {v}});
      bool broken = false;
      for (const auto& op : ops)
        for (const auto& w : ext.vectors)
          if (!contains(ext, kt::apply(op, w))) broken = true;
      CHECK(broken);
      break;
    }
    SubspaceBasis ann = annihilator(v0);
    std::vector<SpMat> seeds{rows_matrix(n, ann.vectors)};
    FixpointOptions fl;
    fl.backend = Backend::Float;
    auto fr = kernel_closure(n, seeds, ops, fl);
    CHECK(fr.dim == ref.basis.dim());
    fl.parallel = false;
    auto fr2 = kernel_closure_float(n, seeds, ops, 1e-9, false);
    auto fr3 = kernel_closure_float(n, seeds, ops, 1e-9, true);
    CHECK(fr2.rows == fr3.rows);
    FixpointOptions sk;
    sk.sketch_rows = 2;
    auto ms = kernel_closure(n, seeds, ops, sk);
    CHECK(ms.dim == ref.basis.dim());
    CHECK(!ms.certified);
    CHECK(kernel_closure_float(n, seeds, ops, 1e-9, true, 64, 2).rank == n - ref.basis.dim());
  }
}

TEST_CASE("solve and inverse") {
  QMat a = qmat({{2, 1}, {1, 1}});
  QMat ai = inverse(a);
  CHECK(a * ai == QMat::identity(2));
  auto x = solve(a, {Q(3), Q(2)});
  REQUIRE(x);
  CHECK((*x)[0] == 1);
  CHECK((*x)[1] == 1);
  CHECK(!solve(qmat({{1, 1}, {1, 1}}), {Q(1), Q(2)}));
}
