#pragma once

#include "kt/holonomy/holonomy.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace kt::cli {

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
  std::string command;
  std::vector<std::string> spaces;
  std::vector<std::string> objects;
  std::vector<std::string> checks;
  Backend backend = Backend::Exact;
  double tol = 1e-9;
  int threads = 0;
  std::map<std::string, long> expect;
  bool long_run = false;
  std::string input;
  std::string out;
};

const std::vector<std::string>& known_objects();
const std::vector<std::string>& known_checks();

// Throws std::invalid_argument for unknown objects, checks or expectation keys.
void validate_config(const RunConfig& cfg);
// "k=v" with an integer v.
std::pair<std::string, long> parse_expect(const std::string& kv);

// Spaces whose Killing 2-tensor objects need --long.
bool needs_long(const SymmetricPair& p);

struct ObjectResult {
  std::string name;
  int dim = 0;
  int ambient = 0;
  bool certified = false;
  std::string method;
  std::vector<int> trace;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
};

// Holonomy pipeline for one space. Connections and parallel spaces are cached
// so that decomposable and hidden reuse killing1 and killing2.
class Pipeline {
 public:
  Pipeline(SymmetricPair p, const RunConfig& cfg);
  const SymmetricPair& pair() const { return p_; }
  const CurvatureData& curvature() const { return c_; }
  ObjectResult object(const std::string& name);

 private:
  const ObjectResult& killing1();
  const ObjectResult& killing2();
  const ObjectResult& decomposable();
  FlatSubspace closure(const InvariantConnection& conn);
  ObjectResult from_flat(const std::string& name, const FlatSubspace& f) const;

  SymmetricPair p_;
  CurvatureData c_;
  RunConfig cfg_;
  std::optional<InvariantConnection> k1conn_, k2conn_;
  std::optional<FlatSubspace> f1_;
  std::map<std::string, ObjectResult> done_;
};

// ∂ : HookAlt → Λ¹⊗⊙² and the inclusion Window → Λ¹⊗HookAlt, with the
// wedge maps of the two short exact sequences.
struct SesMatrices {
  SpMat inc, w1, w2, w12;
};
SesMatrices ses_matrices(int n);

// Exactly checked identities that only depend on n.
Report verify_tensor_identities(int n);
// R_ab^c_d + R_bd^c_a + R_da^c_b = 0 and the pair symmetries.
Report verify_bianchi(const CurvatureData& c);

// Verification group for one check name, or nullopt when it does not apply.
struct CheckGroup {
  std::string name;
  Report report;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();
};
std::optional<CheckGroup> run_check(const std::string& name, const SymmetricPair& p, const CurvatureData& c,
                                    bool long_run);

SymmetricPair load_space(const std::string& id, const std::string& input);

nlohmann::ordered_json cmd_spaces();
// The returned document has "ok"; callers exit non-zero when it is false.
nlohmann::ordered_json cmd_dims(const RunConfig& cfg);
nlohmann::ordered_json cmd_verify(const RunConfig& cfg);
nlohmann::ordered_json cmd_report(const RunConfig& cfg);

// Serialized document without the timing block, for reproducibility checks.
std::string stable_dump(nlohmann::ordered_json doc);

}  // namespace kt::cli
