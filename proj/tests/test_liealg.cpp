#include "doctest.h"

#include "kt/liealg/liealg.hpp"

#include "json.hpp"

using namespace kt;

namespace {

void require_valid(const SymmetricPair& p) {
  Report r = validate(p);
  for (const auto& c : r.checks) {
    INFO(p.label << " " << c.name);
    CHECK(c.pass);
  }
}

std::string pair_json(const SymmetricPair& p, bool corrupt) {
  nlohmann::json c = nlohmann::json::array();
  const int d = p.g.dim;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (const auto& [k, v] : p.g.bracket(i, j)) c.push_back({i, j, k, to_string(v)});
  if (corrupt) {
    c.push_back({1, 2, 3, "1"});
    c.push_back({2, 1, 3, "-1"});
  }
  nlohmann::json theta = nlohmann::json::array();
  for (int i = 0; i < d; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < d; ++j) row.push_back(to_string(p.theta(i, j)));
    theta.push_back(row);
  }
  nlohmann::json doc{{"dim", d}, {"c", c}, {"theta", theta}};
  return doc.dump();
}

}  // namespace

TEST_CASE("catalog dimensions") {
  auto s2 = build_catalog("sphere:2");
  CHECK(s2.g.dim == 3);
  CHECK(s2.n == 2);
  auto su6 = build_catalog("su2n_spn:3");
  CHECK(su6.n == 14);
  CHECK(su6.kdim == 21);
  auto g = build_catalog("group:su3");
  CHECK(g.g.dim == 16);
  CHECK(g.n == 8);
  CHECK(build_catalog("cp:2").n == 4);
  CHECK(build_catalog("hp:2").n == 8);
  CHECK(build_catalog("hp:2").kdim == 13);
  CHECK(build_catalog("slso:3").n == 5);
  CHECK(build_catalog("flat:5").n == 5);
}

TEST_CASE("catalog pairs validate") {
  for (const char* id : {"sphere:2", "sphere:4", "cp:2", "hp:1", "hp:2", "slso:3", "slso:4", "su2n_spn:2", "su2n_spn:3",
                         "group:su2", "group:su3", "group:so4", "group:sp1", "flat:5"})
    require_valid(build_catalog(id));
}

TEST_CASE("sp(n) has the expected dimension") {
  CHECK(sp_basis(1).size() == 3);
  CHECK(sp_basis(2).size() == 10);
  CHECK(sp_basis(3).size() == 21);
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS(build_catalog("sphere:1"));
  CHECK_THROWS(build_catalog("group:g2"));
  CHECK_THROWS(build_catalog("nosuch:3"));
  CHECK_THROWS(parse_space("sphere"));
  CHECK_THROWS(parse_space("sphere:x"));
}

TEST_CASE("custom pairs") {
  auto s3 = build_catalog("sphere:3");
  auto p = load_custom(pair_json(s3, false));
  CHECK(p.n == 3);
  CHECK(p.kdim == 3);
  require_valid(p);
  CHECK(p.metric == s3.metric);
  CHECK_THROWS_WITH_AS(load_custom(pair_json(s3, true)), doctest::Contains("jacobi"), std::invalid_argument);
}

TEST_CASE("flat grading checks hold vacuously") {
  auto p = build_catalog("flat:5");
  CHECK(validate(p).ok());
  CHECK(p.metric == QMat::identity(5));
}

TEST_CASE("group data projects m onto h") {
  auto p = build_catalog("group:su2");
  REQUIRE(p.group);
  CHECK(p.group->hdim == 3);
  CHECK(p.group->psi.rows == 3);
  CHECK(p.group->psi.cols == 3);
}
