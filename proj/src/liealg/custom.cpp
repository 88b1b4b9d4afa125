#include "kt/liealg/liealg.hpp"

#include "json.hpp"

#include <stdexcept>

namespace kt {

namespace {

Q json_rational(const nlohmann::json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Q(v.get<long>());
  throw std::invalid_argument("custom pair: rationals must be integers or \"p/q\" strings");
}

QMat json_matrix(const nlohmann::json& v, int rows, int cols, const char* what) {
  if (!v.is_array() || int(v.size()) != rows) throw std::invalid_argument(std::string("custom pair: bad ") + what);
  QMat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!v[i].is_array() || int(v[i].size()) != cols) throw std::invalid_argument(std::string("custom pair: bad ") + what);
    for (int j = 0; j < cols; ++j) m(i, j) = json_rational(v[i][j]);
  }
  return m;
}

}  // namespace

// c is either an N×N array of [k, value] lists or a flat list of [i, j, k, value].
SymmetricPair load_custom(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  const int d = doc.at("dim").get<int>();
  if (d < 1) throw std::invalid_argument("custom pair: dim must be positive");
  LieAlgebra g(d);
  const auto& c = doc.at("c");
  auto put = [&](int i, int j, int k, const Q& v) {
    if (i < 0 || j < 0 || k < 0 || i >= d || j >= d || k >= d) throw std::invalid_argument("custom pair: index range");
    g.set(i, j, k, g.c(i, j, k) + v);
  };
  bool flat_list = !c.empty() && c[0].is_array() && c[0].size() == 4 && c[0][0].is_number_integer();
  if (flat_list) {
    for (const auto& e : c) put(e[0].get<int>(), e[1].get<int>(), e[2].get<int>(), json_rational(e[3]));
  } else {
    if (int(c.size()) != d) throw std::invalid_argument("custom pair: c must have dim rows");
    for (int i = 0; i < d; ++i) {
      if (int(c[i].size()) != d) throw std::invalid_argument("custom pair: c rows must have dim entries");
      for (int j = 0; j < d; ++j)
        for (const auto& e : c[i][j]) put(i, j, e[0].get<int>(), json_rational(e[1]));
    }
  }
  Report alg = validate_algebra(g);
  if (!alg.ok()) {
    std::string failed;
    for (const auto& ch : alg.checks)
      if (!ch.pass) failed += " " + ch.name;
    throw std::invalid_argument("custom pair: algebra check failed:" + failed);
  }
  QMat theta = json_matrix(doc.at("theta"), d, d, "theta");
  std::string label = doc.value("label", std::string("custom"));
  SymmetricPair p = make_pair(label, g, theta);
  if (doc.contains("metric")) p.metric = json_matrix(doc["metric"], p.n, p.n, "metric");
  return p;
}

}  // namespace kt
