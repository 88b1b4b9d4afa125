#include "kt/cli/cli.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <fstream>
#include <iostream>

using kt::cli::RunConfig;

namespace {

void add_common(CLI::App* sub, RunConfig& cfg, std::vector<std::string>& expects, std::string& backend) {
  sub->add_option("--space", cfg.spaces, "space id, e.g. sphere:4, cp:2, group:su3, custom");
  sub->add_option("--input", cfg.input, "JSON file for --space custom");
  sub->add_option("--backend", backend, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  sub->add_option("--tol", cfg.tol, "relative rank tolerance of the float backend");
  sub->add_option("--threads", cfg.threads, "OpenMP threads (0 keeps the default)");
  sub->add_option("--expect", expects, "key=value assertion on an object dimension");
  sub->add_flag("--long", cfg.long_run, "allow the long su2n_spn:3 and hp:k>=3 runs");
  sub->add_option("--out", cfg.out, "write the JSON report here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Killing tensors on symmetric spaces"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::vector<std::string> expects;
  std::string backend = "exact";
  auto* spaces = app.add_subcommand("spaces", "list the catalog");
  spaces->add_option("--out", cfg.out, "output file");
  auto* dims = app.add_subcommand("dims", "parallel-section dimensions");
  add_common(dims, cfg, expects, backend);
  dims->add_option("--object", cfg.objects, "killing1 killing2 ky3 affine decomposable hidden");
  auto* verify = app.add_subcommand("verify", "exact identity suite");
  add_common(verify, cfg, expects, backend);
  verify->add_option("--check", cfg.checks, "restrict to these check groups");
  auto* report = app.add_subcommand("report", "dimension report for several spaces");
  add_common(report, cfg, expects, backend);
  report->add_option("--object", cfg.objects, "objects to include (default all)");
  CLI11_PARSE(app, argc, argv);

  try {
    for (const auto& e : expects) cfg.expect.insert(kt::cli::parse_expect(e));
    cfg.backend = backend == "float" ? kt::Backend::Float : kt::Backend::Exact;
    kt::cli::validate_config(cfg);
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
    nlohmann::ordered_json doc;
    if (*spaces) {
      doc = kt::cli::cmd_spaces();
    } else if (*dims) {
      doc = kt::cli::cmd_dims(cfg);
    } else if (*verify) {
      if (!cfg.expect.empty()) throw std::invalid_argument("verify does not take --expect");
      doc = kt::cli::cmd_verify(cfg);
    } else {
      doc = kt::cli::cmd_report(cfg);
    }
    const std::string text = doc.dump(2) + "\n";
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream(cfg.out) << text;
    }
    return doc["ok"].get<bool>() ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
