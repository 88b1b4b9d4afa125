#include "doctest.h"

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const char* bin = std::getenv("KILLING_BIN");
  REQUIRE(bin != nullptr);
  std::string cmd = std::string(bin) + " " + args + " 2>&1";
  Run r;
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), f)) > 0) r.out.append(buf.data(), got);
  int st = pclose(f);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

json parse(const Run& r) {
  INFO(r.out);
  REQUIRE(r.code <= 1);
  return json::parse(r.out);
}

// so(3) with θ = diag(−1, −1, 1): the round 2-sphere.
std::string so3_pair(bool corrupt) {
  json c = json::array({{0, 1, 2, 1}, {1, 0, 2, -1}, {1, 2, 0, 1}, {2, 1, 0, -1}, {2, 0, 1, 1}, {0, 2, 1, -1}});
  if (corrupt) {
    c.push_back({0, 1, 0, 1});
    c.push_back({1, 0, 0, -1});
  }
  json doc{{"dim", 3}, {"c", c}, {"theta", {{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}}}, {"label", "so3-custom"}};
  return doc.dump();
}

std::string write_temp(const std::string& name, const std::string& text) {
  std::string path = "/tmp/kt_cli_" + name + ".json";
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("spaces lists the catalog") {
  json d = parse(run("spaces"));
  CHECK(d["schema_version"] == 1);
  CHECK(d["ok"] == true);
  bool su6 = false;
  for (const auto& e : d["examples"])
    if (e["id"] == "su2n_spn:3") su6 = e["n"] == 14 && e["dim_k"] == 21 && e["long"] == true;
  CHECK(su6);
}

TEST_CASE("dims reports integer dimensions") {
  json d = parse(run("dims --space sphere:4 --object killing2"));
  CHECK(d["objects"]["killing2"]["dim"].is_number_integer());
  CHECK(d["objects"]["killing2"]["dim"] == 50);
  CHECK(d["objects"]["killing2"]["certified"] == true);
  CHECK(d["space"]["scale"] == "1/2");
  json a = parse(run("dims --space flat:3 --object affine"));
  CHECK(a["objects"]["affine"]["dim"] == 12);
  json h = parse(run("dims --space cp:2 --object killing1 --object hidden"));
  CHECK(h["objects"]["killing1"]["dim"] == 8);
  CHECK(h["objects"]["hidden"]["dim"] == 0);
  CHECK(h["objects"]["hidden"]["certified"] == true);
}

TEST_CASE("expectations decide the exit code") {
  Run ok = run("dims --space sphere:3 --expect killing2=20");
  CHECK(ok.code == 0);
  Run bad = run("dims --space sphere:3 --expect killing2=21");
  CHECK(bad.code == 1);
  json d = json::parse(bad.out);
  CHECK(d["expectations"][0]["actual"] == 20);
  CHECK(d["expectations"][0]["pass"] == false);
}

TEST_CASE("invalid input is rejected") {
  Run r = run("verify --space sphere:3 --check nonsense");
  CHECK(r.code == 2);
  CHECK(r.out.find("unknown check") != std::string::npos);
  CHECK(run("dims --space sphere:3 --object killing9").code == 2);
  CHECK(run("dims --space sphere:3 --expect killing2=x").code == 2);
  CHECK(run("dims --space nowhere:3 --object killing1").code == 2);
  CHECK(run("dims --space sphere:3 --backend quantum --object killing1").code != 0);
}

TEST_CASE("long entries need the flag") {
  Run r = run("dims --space su2n_spn:3 --object killing2");
  CHECK(r.code == 3);
  CHECK(r.out.find("--long") != std::string::npos);
}

TEST_CASE("output is reproducible across thread counts") {
  auto strip = [](json d) {
    d.erase("timing");
    return d.dump();
  };
  std::string a = strip(parse(run("dims --space cp:2 --object killing2 --object ky3 --threads 1")));
  std::string b = strip(parse(run("dims --space cp:2 --object killing2 --object ky3 --threads 3")));
  CHECK(a == b);
  std::string fa = strip(parse(run("dims --space cp:2 --object killing2 --backend float --threads 1")));
  std::string fb = strip(parse(run("dims --space cp:2 --object killing2 --backend float --threads 3")));
  CHECK(fa == fb);
  json f = json::parse(fa);
  CHECK(f["objects"]["killing2"]["dim"] == 36);
  CHECK(f["objects"]["killing2"]["certified"] == false);
}

TEST_CASE("verify runs the exact suite") {
  json d = parse(run("verify --space sphere:3"));
  CHECK(d["ok"] == true);
  CHECK(d["skipped"].size() == 2);  // su6 and cartan do not apply
  json e = parse(run("verify --space su2n_spn:3 --check eigenvalues --check su6"));
  CHECK(e["ok"] == true);
  std::map<std::string, int> mult;
  for (const auto& x : e["groups"][0]["second_kind_spectrum"]) mult[x["lambda"]] = x["multiplicity"];
  CHECK(mult == std::map<std::string, int>{{"1", 1}, {"1/2", 14}, {"-1/6", 90}});
}

TEST_CASE("custom pairs") {
  std::string good = write_temp("good", so3_pair(false));
  json d = parse(run("dims --space custom --input " + good + " --object killing1 --object killing2"));
  CHECK(d["space"]["id"] == "so3-custom");
  CHECK(d["objects"]["killing1"]["dim"] == 3);
  CHECK(d["objects"]["killing2"]["dim"] == 6);
  std::string bad = write_temp("bad", so3_pair(true));
  Run r = run("verify --space custom --input " + bad);
  CHECK(r.code != 0);
  CHECK(r.out.find("jacobi") != std::string::npos);
  CHECK(run("verify --space custom").code == 2);
}
