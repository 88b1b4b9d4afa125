// One line per acceptance criterion. With --known-red N the exit status ignores
// criterion N when its only failing items are the ones marked as known
// conflicts; the line still reads FAIL.
#include "kt/cli/cli.hpp"
#include "kt/tensor/maps.hpp"
#include "test_util.hpp"

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

using namespace kt;
using kt::testing::random_coords;
using kt::testing::random_element;

namespace {

double now() { return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count(); }

struct Criterion {
  int id = 0;
  std::string title;
  bool pass = true;
  // Set while every failed item is a reference value contradicted by exact computation.
  bool only_conflicts = true;
  std::vector<std::string> notes;
  double t0 = now();

  void item(bool ok, const std::string& what, bool conflict = false) {
    if (!ok) {
      pass = false;
      if (!conflict) only_conflicts = false;
    }
    notes.push_back((ok ? "" : conflict ? "RED(known conflict) " : "RED ") + what);
  }
  void time_limit(double limit) {
    const double t = now() - t0;
    std::ostringstream s;
    s.precision(3);
    s << std::fixed << t << " s (limit " << limit << " s)";
    item(t < limit, s.str());
  }
};

struct Space {
  SymmetricPair p;
  CurvatureData c;
};

const Space& space(const std::string& id) {
  static std::map<std::string, std::unique_ptr<Space>> cache;
  auto& s = cache[id];
  if (!s) {
    SymmetricPair p = build_catalog(id);
    CurvatureData c = curvature_tensor(p);
    s = std::make_unique<Space>(Space{std::move(p), std::move(c)});
  }
  return *s;
}

int pdim(const Space& s, const InvariantConnection& conn, bool* certified = nullptr) {
  FlatSubspace f = parallel_subspace(s.p, conn);
  if (certified) *certified = *certified && f.certified;
  return f.dim;
}

std::string eq(const std::string& what, long got, long want) {
  return what + " = " + std::to_string(got) + " (expected " + std::to_string(want) + ")";
}

bool all_zero(const std::vector<Q>& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

// --- criteria -------------------------------------------------------------

Criterion spheres() {
  Criterion c{1, "sphere Killing 2-tensors"};
  bool cert = true;
  for (int n = 2; n <= 5; ++n) {
    const Space& s = space("sphere:" + std::to_string(n));
    const int want = n * (n + 1) * (n + 1) * (n + 2) / 12;
    c.item(pdim(s, killing2_connection(s.p, s.c), &cert) == want,
           eq("killing2(sphere:" + std::to_string(n) + ")", pdim(s, killing2_connection(s.p, s.c)), want));
  }
  c.item(cert, "exact backend, certified");
  c.time_limit(30);
  return c;
}

Criterion killing_yano() {
  Criterion c{2, "Killing-Yano 3-forms"};
  bool cert = true;
  for (int n = 3; n <= 5; ++n) {
    const Space& s = space("sphere:" + std::to_string(n));
    const int want = (n + 1) * n * (n - 1) * (n - 2) / 24;
    c.item(pdim(s, ky_connection(s.p, s.c), &cert) == want,
           eq("ky3(sphere:" + std::to_string(n) + ")", pdim(s, ky_connection(s.p, s.c)), want));
  }
  for (auto [id, want] : {std::pair{"cp:2", 0}, {"group:su3", 1}}) {
    const Space& s = space(id);
    c.item(pdim(s, ky_connection(s.p, s.c), &cert) == want,
           eq(std::string("ky3(") + id + ")", pdim(s, ky_connection(s.p, s.c)), want));
  }
  c.item(cert, "exact backend, certified");
  c.time_limit(30);
  return c;
}

// killing1, killing2 and hidden through the CLI pipeline.
void pipeline_dims(Criterion& c, const std::string& id, int k1, int k2, bool long_run = false) {
  cli::RunConfig cfg;
  cfg.long_run = long_run;
  cli::Pipeline pl(build_catalog(id), cfg);
  if (k1 > 0) {
    auto r = pl.object("killing1");
    c.item(r.dim == k1 && r.certified, eq("killing1(" + id + ")", r.dim, k1));
  }
  auto r2 = pl.object("killing2");
  c.item(r2.dim == k2 && r2.certified, eq("killing2(" + id + ")", r2.dim, k2) + " [" + r2.method + "]");
  auto h = pl.object("hidden");
  c.item(h.dim == 0 && h.certified, eq("hidden(" + id + ")", h.dim, 0) + " [decomposable " + pl.object("decomposable").method + "]");
}

Criterion cp2() {
  Criterion c{3, "complex projective plane"};
  const int m = 2;
  pipeline_dims(c, "cp:2", 8, m * (m + 1) * (m + 1) * (m + 2) / 2);
  c.time_limit(60);
  return c;
}

Criterion hp2() {
  Criterion c{4, "quaternionic projective plane"};
  const int k = 2;
  pipeline_dims(c, "hp:2", 0, (k + 1) * (2 * k + 3) * (4 * k * k + 6 * k + 5) / 3);
  c.time_limit(300);
  return c;
}

Criterion su6(bool long_run) {
  Criterion c{5, "SU(6)/Sp(3)"};
  const Space& s = space("su2n_spn:3");
  c.item(s.p.n == 14, eq("dim m", s.p.n, 14));
  const int kd = k_subspace(s.c).dim();
  c.item(kd == 21, eq("dim K", kd, 21));
  QMat a = to_dense(second_kind_operator(s.c));
  for (auto [lam, mult] : {std::pair{Q(1), 1}, {Q(1, 2), 14}, {Q(1, 15), 90}}) {
    const int got = rank_at_eigenvalue(a, lam);
    c.item(got == mult, eq("dim ker(A - " + to_string(lam) + ")", got, mult), lam == Q(1, 15));
  }
  const int m6 = rank_at_eigenvalue(a, Q(-1, 6));
  c.notes.push_back("engine: dim ker(A + 1/6) = " + std::to_string(m6) + ", 1 + 14 + " + std::to_string(m6) +
                    " = " + std::to_string(1 + 14 + m6) + " = dim S2");
  Report id = su6_identities(s.c);
  for (const auto& ch : id.checks) c.item(ch.pass, "identity " + ch.name);
  if (long_run) {
    pipeline_dims(c, "su2n_spn:3", 35, 630, true);
    c.time_limit(7200);
  } else {
    c.notes.push_back("killing2 = 630 with hidden = 0 runs under --long (about 20 min on one core)");
  }
  return c;
}

Criterion flat() {
  Criterion c{6, "flat-space bound saturation"};
  for (int n = 3; n <= 4; ++n) {
    const Space& s = space("flat:" + std::to_string(n));
    const int want = n * (n + 1) * (n + 1) * (n + 2) / 12;
    const int got = pdim(s, killing2_connection(s.p, s.c));
    c.item(got == want, eq("killing2(flat:" + std::to_string(n) + ")", got, want));
  }
  c.time_limit(30);
  return c;
}

// Random trials at n = 3..6 on the catalog pairs of that dimension.
struct Trials {
  std::mt19937 rng{2024};
  static constexpr int kPerN = 100;
  std::map<std::string, int> run, failed;
};

const std::vector<std::string>& pairs_at(int n) {
  static const std::map<int, std::vector<std::string>> m = {{3, {"sphere:3", "group:su2"}},
                                                            {4, {"sphere:4", "cp:2"}},
                                                            {5, {"sphere:5", "slso:3"}},
                                                            {6, {"sphere:6", "cp:3", "group:so4"}}};
  return m.at(n);
}

struct PairData {
  const Space* s = nullptr;
  InvariantConnection stage1, k2one, k2two, pent;
  std::vector<SpMat> stage1_blocks;
  SpMat gauge, phi;
  std::vector<Q> metric;
};

const PairData& pair_data(const std::string& id) {
  static std::map<std::string, std::unique_ptr<PairData>> cache;
  auto& d = cache[id];
  if (!d) {
    d = std::make_unique<PairData>();
    const Space& s = space(id);
    d->s = &s;
    d->stage1 = killing2_stage1(s.p, s.c);
    ConnectionCurvature cc = connection_curvature(s.p, d->stage1);
    for (const auto& m : cc.lambda) d->stage1_blocks.push_back(block(m, d->stage1.fiber, 1, d->stage1.fiber, 1));
    d->k2one = killing2_connection(s.p, s.c);
    d->k2two = killing2_connection(s.p, s.c, TriangleOption::Two);
    d->pent = pentagon_modification(s.p, s.c);
    d->gauge = gauge_matrix(s.c);
    d->phi = phi_matrix(s.p.n);
    d->metric = metric_section(s.c);
  }
  return *d;
}

Criterion identities() {
  Criterion c{7, "identity suite"};
  Trials t;
  auto& rng = t.rng;
  auto trial = [&](const std::string& name, int n, const std::function<bool(const PairData&)>& f) {
    const auto& ids = pairs_at(n);
    for (int i = 0; i < Trials::kPerN; ++i) {
      const PairData& d = pair_data(ids[i % ids.size()]);
      ++t.run[name];
      if (!f(d)) ++t.failed[name];
    }
  };
  std::uniform_int_distribution<int> pick(0, 1 << 20);
  for (int n = 3; n <= 6; ++n) {
    auto l2l1 = fiber(n, "L2xL1");
    auto l1l2 = fiber(n, "L1xL2");
    auto lw = fiber(n, "L1xWindow");
    auto l4 = fiber(n, "L1xL4Hook");
    auto ha = fiber(n, "HookAlt");
    auto s2 = fiber(n, "S2");
    cli::SesMatrices ses = cli::ses_matrices(n);
    trial("partial_inverse round trip", n, [&](const PairData&) {
      auto x = random_element(rng, *l2l1, 0.2);
      auto m = partial_inverse(x);
      auto m2 = random_element(rng, *l1l2, 0.2);
      return l1l2->contains(m) && partial_inverse_back(m) == x && partial_inverse(partial_inverse_back(m2)) == m2;
    });
    trial("fun_formula two-sided inverse", n, [&](const PairData&) {
      auto x = random_element(rng, *lw, n <= 4 ? 0.5 : 0.05);
      auto y = fun_automorphism(x);
      return lw->contains(y) && fun_automorphism_inverse(y) == x && fun_automorphism(fun_automorphism_inverse(x)) == x;
    });
    trial("mindless_recover factor 8/3", n, [&](const PairData&) {
      auto phi = random_element(rng, *l4);
      return mindless_recover(phi) == phi;
    });
    const int vk = very_simple_algebra_kernel(n);
    if (vk != 0) c.item(false, "very_simple_algebra kernel at n = " + std::to_string(n) + " is " + std::to_string(vk));
    trial("very_simple_algebra kernel = 0", n, [&](const PairData&) {
      auto x = random_element(rng, *l1l2, 0.3);
      return x.is_zero() || !very_simple_map(x).is_zero();
    });
    trial("key_piece identity", n, [&](const PairData& d) {
      return verify_key_piece(d.s->c, random_element(rng, *l1l2, 0.3)).ok();
    });
    trial("first-stage curvature equality", n, [&](const PairData& d) {
      const Fiber& f = *d.stage1.fiber.parts[1];
      auto x = random_coords(rng, f.dim(), 0.3);
      SparseTensor mu = f.embed(x);
      if (!r_diamond_skew_part_holds(d.s->c, mu)) return false;
      SparseTensor formula = first_stage_curvature_formula(d.s->c, mu);
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
          SparseTensor sl = Q(2) * slice0(slice0(formula, a), b);
          sl.prune();
          if (kt::apply(d.stage1_blocks[pair_index(n, a, b)], x) != f.project(sl)) return false;
        }
      return true;
    });
    trial("R-triangle lift check", n, [&](const PairData& d) {
      return r_triangle_lift_holds(d.s->c, random_element(rng, *s2));
    });
    trial("option-one/option-two gauge conjugacy", n, [&](const PairData& d) {
      auto v = random_coords(rng, d.k2one.dim(), 0.3);
      const int a = pick(rng) % n, k = d.s->p.kdim ? pick(rng) % d.s->p.kdim : -1;
      bool ok = kt::apply(d.k2two.alpha[a], kt::apply(d.gauge, v)) == kt::apply(d.gauge, kt::apply(d.k2one.alpha[a], v));
      if (k >= 0)
        ok = ok && kt::apply(d.k2two.rho[k], kt::apply(d.gauge, v)) == kt::apply(d.gauge, kt::apply(d.k2one.rho[k], v));
      return ok;
    });
    trial("Phi intertwining", n, [&](const PairData& d) {
      auto v = random_coords(rng, d.pent.dim(), 0.3);
      const int a = pick(rng) % n, k = d.s->p.kdim ? pick(rng) % d.s->p.kdim : -1;
      bool ok = kt::apply(d.k2one.alpha[a], kt::apply(d.phi, v)) == kt::apply(d.phi, kt::apply(d.pent.alpha[a], v));
      if (k >= 0)
        ok = ok && kt::apply(d.k2one.rho[k], kt::apply(d.phi, v)) == kt::apply(d.phi, kt::apply(d.pent.rho[k], v));
      return ok;
    });
    Report tr = cli::verify_tensor_identities(n);
    for (const auto& ch : tr.checks)
      if (ch.name.rfind("ses", 0) == 0 && !ch.pass) c.item(false, ch.name + " at n = " + std::to_string(n));
    trial("SES1/SES2 exactness", n, [&](const PairData&) {
      auto x = random_coords(rng, ses.inc.cols, 0.3);
      auto y = random_coords(rng, ses.w2.cols, 0.1);
      return all_zero(kt::apply(ses.w1, kt::apply(ses.inc, x))) && all_zero(kt::apply(ses.w12, kt::apply(ses.w2, y)));
    });
    trial("(g,0,R) parallel for killing2", n, [&](const PairData& d) {
      std::vector<Q> acc(d.k2one.dim());
      for (const auto* fam : {&d.k2one.alpha, &d.k2one.rho})
        for (const auto& m : *fam) {
          Q coef = kt::testing::random_rational(rng);
          auto w = kt::apply(m, d.metric);
          for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += coef * w[i];
        }
      return all_zero(acc);
    });
    trial("R-diamond image in L1xWindow per line", n, [&](const PairData& d) {
      auto mu = random_element(rng, *ha, 0.3);
      for (int line = 1; line <= 3; ++line)
        if (!lw->contains(r_diamond(d.s->c, mu, line))) return false;
      return true;
    });
  }
  for (const auto& [name, count] : t.run) {
    const int bad = t.failed[name];
    c.item(bad == 0, name + ": " + std::to_string(count - bad) + "/" + std::to_string(count) + " trials");
  }
  return c;
}

const std::vector<std::string> kCatalog = {"sphere:2", "sphere:3",  "sphere:4",  "sphere:5",  "cp:2", "hp:2",
                                           "slso:3",   "group:su2", "group:su3", "group:so4", "flat:3", "flat:4"};

Criterion structural() {
  Criterion c{8, "structural equalities"};
  for (const auto& id : kCatalog) {
    const Space& s = space(id);
    const int a = pdim(s, symmetric_power_connection(s.p, s.c));
    const int b = pdim(s, pentagon_modification(s.p, s.c));
    c.item(a == b, "symmetric power = modification on " + id + ": " + std::to_string(a) + " = " + std::to_string(b));
    const int k1 = pdim(s, killing1_connection(s.p, s.c));
    if (s.p.flat) {
      const int e = s.p.n * (s.p.n + 1) / 2;
      c.item(k1 == e, eq("killing1(" + id + ")", k1, e) + ", the Euclidean algebra; g = R^n holds only translations");
    } else {
      c.item(k1 == s.p.g.dim, eq("killing1(" + id + ")", k1, s.p.g.dim));
    }
  }
  const Space& s = space("group:su3");
  InvariantConnection k1 = killing1_connection(s.p, s.c);
  FlatSubspace f1 = parallel_subspace(s.p, k1);
  KillingAlgebra alg = killing_algebra(s.p, s.c, k1, f1);
  for (const auto& ch : alg.report.checks) c.item(ch.pass, "group:su3 " + ch.name);
  SplittingReport sp = group_splitting(s.p, s.c, k1, alg);
  for (const auto& ch : sp.report.checks) c.item(ch.pass, "group:su3 " + ch.name + (ch.detail.empty() ? "" : " (" + ch.detail + ")"));
  c.item(sp.plus == 8 && sp.minus == 8, "group:su3 splitting " + std::to_string(sp.plus) + " + " + std::to_string(sp.minus));
  return c;
}

Criterion affine() {
  Criterion c{9, "affine connections"};
  for (int n = 2; n <= 5; ++n) {
    const Space& s = space("flat:" + std::to_string(n));
    c.item(pdim(s, affine_connection(s.p, s.c)) == n + n * n,
           eq("affine(flat:" + std::to_string(n) + ")", pdim(s, affine_connection(s.p, s.c)), n + n * n));
  }
  for (int n = 2; n <= 5; ++n) {
    const Space& s = space("sphere:" + std::to_string(n));
    const int a = pdim(s, affine_connection(s.p, s.c)), k = pdim(s, killing1_connection(s.p, s.c));
    c.item(a == k, "affine(sphere:" + std::to_string(n) + ") = killing1: " + std::to_string(a) + " = " + std::to_string(k));
  }
  std::vector<std::string> ids = kCatalog;
  ids.push_back("su2n_spn:3");
  for (const auto& id : ids) {
    const Space& s = space(id);
    Report r = verify_lts(s.c, k_subspace(s.c), khat_subspace(s.c));
    bool ok = r.ok();
    std::string failed;
    for (const auto& ch : r.checks)
      if (!ch.pass) failed += " " + ch.name;
    c.item(ok, "affine LTS membership on " + id + (ok ? "" : ":" + failed));
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  bool long_run = false, verbose = false;
  std::set<int> known_red;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--long")) {
      long_run = true;
    } else if (!std::strcmp(argv[i], "--verbose")) {
      verbose = true;
    } else if (!std::strcmp(argv[i], "--known-red") && i + 1 < argc) {
      known_red.insert(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--long] [--verbose] [--known-red N]...\n";
      return 2;
    }
  }
  std::vector<std::function<Criterion()>> all = {spheres, killing_yano, cp2, hp2, [&] { return su6(long_run); },
                                                 flat,    identities,   structural, affine};
  bool ok = true;
  for (auto& f : all) {
    Criterion c;
    try {
      c = f();
    } catch (const std::exception& e) {
      c.item(false, std::string("exception: ") + e.what());
    }
    std::cout << "criterion " << c.id << ": " << (c.pass ? "PASS" : "FAIL") << "  " << c.title;
    int red = 0;
    for (const auto& n : c.notes) red += n.rfind("RED", 0) == 0;
    std::cout << " (" << c.notes.size() - red << "/" << c.notes.size() << " items)";
    std::cout << std::endl;
    for (const auto& n : c.notes)
      if (verbose || n.rfind("RED", 0) == 0 || n.rfind("engine", 0) == 0 || n.rfind("killing2 = 630", 0) == 0)
        std::cout << "    " << n << "\n";
    if (!c.pass && !(known_red.count(c.id) && c.only_conflicts)) ok = false;
  }
  return ok ? 0 : 1;
}
