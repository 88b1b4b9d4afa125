#include "kt/cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

namespace kt::cli {

namespace {

using json = nlohmann::ordered_json;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool contains(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

json checks_json(const Report& r) {
  json out = json::array();
  for (const auto& c : r.checks) {
    json e{{"name", c.name}, {"pass", c.pass}, {"exact", true}};
    if (!c.detail.empty()) e["detail"] = c.detail;
    out.push_back(e);
  }
  return out;
}

json object_json(const ObjectResult& r) {
  json o{{"dim", r.dim}, {"ambient", r.ambient}, {"certified", r.certified}, {"method", r.method}};
  if (!r.trace.empty()) o["trace"] = r.trace;
  for (const auto& [k, v] : r.extra.items()) o[k] = v;
  return o;
}

json space_json(const SymmetricPair& p, const CurvatureData& c) {
  return json{{"id", p.label}, {"n", p.n}, {"dim_g", p.g.dim}, {"dim_k", p.kdim},
              {"dim_K", k_subspace(c).dim()}, {"scale", to_string(c.scale)}};
}

const std::vector<std::string> kDefaultReport = {"sphere:2", "sphere:3", "sphere:4", "cp:2",
                                                 "slso:3",   "flat:3",   "group:su2", "group:su3"};

}  // namespace

const std::vector<std::string>& known_objects() {
  static const std::vector<std::string> o = {"killing1", "killing2", "ky3", "affine", "decomposable", "hidden"};
  return o;
}

std::pair<std::string, long> parse_expect(const std::string& kv) {
  auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0) throw std::invalid_argument("--expect wants key=value: " + kv);
  std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(val, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != val.size()) throw std::invalid_argument("--expect value must be an integer: " + kv);
  return {key, v};
}

void validate_config(const RunConfig& cfg) {
  for (const auto& o : cfg.objects)
    if (!contains(known_objects(), o)) throw std::invalid_argument("unknown object: " + o);
  for (const auto& c : cfg.checks)
    if (!contains(known_checks(), c)) throw std::invalid_argument("unknown check: " + c);
  for (const auto& [k, v] : cfg.expect)
    if (!contains(known_objects(), k)) throw std::invalid_argument("unknown expectation key: " + k);
  if (!(cfg.tol > 0 && cfg.tol < 1)) throw std::invalid_argument("--tol must lie in (0, 1)");
  if (cfg.threads < 0) throw std::invalid_argument("--threads must be non-negative");
}

SymmetricPair load_space(const std::string& id, const std::string& input) {
  if (id == "custom") {
    if (input.empty()) throw std::invalid_argument("custom space needs --input");
    std::ifstream in(input);
    if (!in) throw std::invalid_argument("cannot read " + input);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_custom(ss.str());
  }
  return build_catalog(id);
}

json cmd_spaces() {
  json doc{{"schema_version", kSchemaVersion}, {"command", "spaces"}};
  doc["families"] = catalog_families();
  json list = json::array();
  for (const char* id : {"sphere:2", "sphere:3", "sphere:4", "sphere:5", "cp:2", "hp:2", "slso:3", "su2n_spn:3",
                         "group:su2", "group:su3", "group:so4", "flat:3", "flat:4"}) {
    SymmetricPair p = build_catalog(id);
    list.push_back({{"id", p.label}, {"n", p.n}, {"dim_g", p.g.dim}, {"dim_k", p.kdim}, {"long", needs_long(p)}});
  }
  doc["examples"] = list;
  doc["ok"] = true;
  return doc;
}

json cmd_dims(const RunConfig& cfg) {
  validate_config(cfg);
  auto t0 = std::chrono::steady_clock::now();
  if (cfg.spaces.size() != 1) throw std::invalid_argument("dims wants exactly one --space");
  std::vector<std::string> objects = cfg.objects;
  for (const auto& [k, v] : cfg.expect)
    if (!contains(objects, k)) objects.push_back(k);
  if (objects.empty()) throw std::invalid_argument("dims wants at least one --object");
  Pipeline pl(load_space(cfg.spaces[0], cfg.input), cfg);
  json doc{{"schema_version", kSchemaVersion}, {"command", "dims"}};
  doc["space"] = space_json(pl.pair(), pl.curvature());
  doc["backend"] = cfg.backend == Backend::Exact ? "exact" : "float";
  json objs = json::object();
  std::map<std::string, int> dims;
  for (const auto& o : objects) {
    ObjectResult r = pl.object(o);
    dims[o] = r.dim;
    objs[o] = object_json(r);
  }
  doc["objects"] = objs;
  bool ok = true;
  json ex = json::array();
  for (const auto& [k, v] : cfg.expect) {
    const bool pass = dims[k] == v;
    ok = ok && pass;
    ex.push_back({{"key", k}, {"expected", v}, {"actual", dims[k]}, {"pass", pass}});
  }
  doc["expectations"] = ex;
  doc["ok"] = ok;
  doc["timing"] = {{"seconds", seconds_since(t0)}};
  return doc;
}

json cmd_verify(const RunConfig& cfg) {
  validate_config(cfg);
  auto t0 = std::chrono::steady_clock::now();
  if (cfg.spaces.size() != 1) throw std::invalid_argument("verify wants exactly one --space");
  json doc{{"schema_version", kSchemaVersion}, {"command", "verify"}};
  SymmetricPair p = load_space(cfg.spaces[0], cfg.input);
  Report val = validate(p);
  if (!val.ok()) {
    doc["space"] = {{"id", p.label}};
    doc["groups"] = json::array({json{{"name", "validate"}, {"ok", false}, {"checks", checks_json(val)}}});
    doc["skipped"] = json::array();
    doc["ok"] = false;
    doc["timing"] = {{"seconds", seconds_since(t0)}};
    return doc;
  }
  CurvatureData c = curvature_tensor(p);
  doc["space"] = space_json(p, c);
  const auto& names = cfg.checks.empty() ? known_checks() : cfg.checks;
  json groups = json::array(), skipped = json::array(), timing = json::object();
  bool ok = true;
  for (const auto& name : names) {
    auto tg = std::chrono::steady_clock::now();
    auto g = run_check(name, p, c, cfg.long_run);
    timing[name] = seconds_since(tg);
    if (!g) {
      skipped.push_back(name);
      continue;
    }
    ok = ok && g->report.ok();
    json e{{"name", name}, {"ok", g->report.ok()}, {"checks", checks_json(g->report)}};
    for (const auto& [k, v] : g->data.items()) e[k] = v;
    groups.push_back(e);
  }
  doc["groups"] = groups;
  doc["skipped"] = skipped;
  doc["ok"] = ok;
  doc["timing"] = {{"seconds", seconds_since(t0)}, {"groups", timing}};
  return doc;
}

json cmd_report(const RunConfig& cfg) {
  validate_config(cfg);
  auto t0 = std::chrono::steady_clock::now();
  const auto& ids = cfg.spaces.empty() ? kDefaultReport : cfg.spaces;
  const auto& objects = cfg.objects.empty() ? known_objects() : cfg.objects;
  json doc{{"schema_version", kSchemaVersion}, {"command", "report"}};
  doc["backend"] = cfg.backend == Backend::Exact ? "exact" : "float";
  json spaces = json::array();
  for (const auto& id : ids) {
    Pipeline pl(load_space(id, cfg.input), cfg);
    json s = space_json(pl.pair(), pl.curvature());
    json objs = json::object();
    for (const auto& o : objects) {
      const bool heavy = o == "killing2" || o == "decomposable" || o == "hidden";
      if (heavy && needs_long(pl.pair()) && !cfg.long_run) {
        objs[o] = {{"skipped", "needs --long"}};
        continue;
      }
      objs[o] = object_json(pl.object(o));
    }
    s["objects"] = objs;
    spaces.push_back(s);
  }
  doc["spaces"] = spaces;
  doc["ok"] = true;
  doc["timing"] = {{"seconds", seconds_since(t0)}};
  return doc;
}

std::string stable_dump(json doc) {
  doc.erase("timing");
  return doc.dump(2);
}

}  // namespace kt::cli
