#include "doctest.h"

#include "kt/prolong/prolong.hpp"

#include <map>
#include <random>

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

void require_report(const Report& r) {
  for (const auto& ch : r.checks) {
    CAPTURE(ch.name);
    CAPTURE(ch.detail);
    CHECK(ch.pass);
  }
}

SparseTensor random_in(const Fiber& f, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  std::vector<Q> x(f.dim());
  for (auto& v : x) v = d(rng);
  return f.embed(x);
}

const char* kSmall[] = {"sphere:3", "sphere:4", "cp:2", "flat:3", "group:su2"};

}  // namespace

TEST_CASE("generic prolongation reproduces the named connections") {
  for (const char* id : kSmall) {
    CAPTURE(std::string(id));
    require_report(verify_generic_examples(pair_of(id), curv_of(id)));
  }
}

TEST_CASE("flat prolongation is the product connection") {
  const auto& p = pair_of("flat:3");
  InvariantConnection k = killing2_connection(p, curv_of("flat:3"));
  for (const auto& m : connection_curvature(p, k).lambda) CHECK(is_zero(m));
}

TEST_CASE("a non-lift is rejected") {
  const auto& p = pair_of("sphere:3");
  InvariantConnection u = tensor_bundle(p, {"L1"});
  InvariantConnection v = tensor_bundle(p, {"L2"});
  auto partial = sliced_matrices(*fiber(3, "L2"), *fiber(3, "L1"), [](const SparseTensor& t) { return t; });
  std::vector<SpMat> zero(3, sparse_zero(3, 3));
  CHECK_THROWS_AS(generic_prolong(p, u, v, partial, zero, "bad"), LiftError);
}

TEST_CASE("Killing 1-form connection") {
  for (const char* id : kSmall) {
    CAPTURE(std::string(id));
    require_report(verify_killing1(pair_of(id), curv_of(id)));
  }
}

TEST_CASE("R triangle options") {
  for (const char* id : kSmall) {
    CAPTURE(std::string(id));
    require_report(verify_r_triangle(curv_of(id)));
  }
  const auto& f = curv_of("flat:3");
  SparseTensor s = fiber(3, "S2")->basis_tensor(0);
  CHECK(r_triangle(f, s, TriangleOption::One).is_zero());
  CHECK(r_triangle(f, s, TriangleOption::Two).is_zero());
}

TEST_CASE("R diamond lines land in the window") {
  for (const char* id : kSmall) {
    CAPTURE(std::string(id));
    require_report(verify_r_diamond(curv_of(id)));
  }
}

TEST_CASE("first stage curvature") {
  for (const char* id : kSmall) {
    CAPTURE(std::string(id));
    require_report(verify_first_stage_curvature(pair_of(id), curv_of(id)));
  }
}

TEST_CASE("Killing 2-tensor connection") {
  for (const char* id : kSmall) {
    CAPTURE(std::string(id));
    require_report(verify_killing2(pair_of(id), curv_of(id)));
  }
}

TEST_CASE("symmetric power connection") {
  for (const char* id : {"sphere:3", "cp:2", "flat:3"}) {
    CAPTURE(std::string(id));
    require_report(verify_symmetric_power(pair_of(id), curv_of(id)));
  }
}

TEST_CASE("Phi and the Killing-Yano connection") {
  for (const char* id : kSmall) {
    CAPTURE(std::string(id));
    require_report(verify_phi(pair_of(id), curv_of(id)));
  }
}

TEST_CASE("affine connection") {
  for (const char* id : kSmall) {
    CAPTURE(std::string(id));
    require_report(verify_affine(pair_of(id), curv_of(id)));
  }
}

TEST_CASE("key piece on random input") {
  std::mt19937 rng(7);
  for (const char* id : {"sphere:3", "cp:2", "sphere:5"}) {
    CAPTURE(std::string(id));
    const auto& c = curv_of(id);
    auto l12 = fiber(c.n, "L1xL2");
    for (int t = 0; t < 5; ++t) require_report(verify_key_piece(c, random_in(*l12, rng)));
  }
}

TEST_CASE("very simple algebra") {
  for (int n = 3; n <= 6; ++n) CHECK(very_simple_algebra_kernel(n) == 0);
}
