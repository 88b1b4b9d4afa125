// Serial reference against the OpenMP kernels on Killing 2-tensor closures.
#include "kt/holonomy/holonomy.hpp"

#include <benchmark/benchmark.h>

#include <map>
#include <memory>

namespace {

struct Problem {
  int n = 0;
  std::vector<kt::SpMat> seeds, ops;
};

const Problem& problem(const std::string& id) {
  static std::map<std::string, std::unique_ptr<Problem>> cache;
  auto& pr = cache[id];
  if (!pr) {
    kt::SymmetricPair p = kt::build_catalog(id);
    kt::CurvatureData c = kt::curvature_tensor(p);
    kt::InvariantConnection k = kt::killing2_connection(p, c, kt::TriangleOption::One, false);
    pr = std::make_unique<Problem>();
    pr->n = k.dim();
    pr->seeds = kt::connection_curvature(p, k).lambda;
    pr->ops = k.alpha;
  }
  return *pr;
}

const char* kSpaces[] = {"sphere:4", "cp:2", "sphere:5"};

void BM_Modular(benchmark::State& st) {
  const Problem& pr = problem(kSpaces[st.range(0)]);
  kt::Field f;
  for (auto _ : st) {
    auto r = kt::kernel_closure_mod(pr.n, pr.seeds, pr.ops, f, st.range(1) != 0);
    benchmark::DoNotOptimize(r.ech.rank());
  }
  st.SetLabel(kSpaces[st.range(0)]);
}

void BM_Float(benchmark::State& st) {
  const Problem& pr = problem(kSpaces[st.range(0)]);
  for (auto _ : st) {
    auto r = kt::kernel_closure_float(pr.n, pr.seeds, pr.ops, 1e-9, st.range(1) != 0);
    benchmark::DoNotOptimize(r.rank);
  }
  st.SetLabel(kSpaces[st.range(0)]);
}

void BM_Exact(benchmark::State& st) {
  const Problem& pr = problem(kSpaces[st.range(0)]);
  kt::FixpointOptions opt;
  opt.parallel = st.range(1) != 0;
  for (auto _ : st) {
    auto r = kt::kernel_closure(pr.n, pr.seeds, pr.ops, opt);
    benchmark::DoNotOptimize(r.dim);
  }
  st.SetLabel(kSpaces[st.range(0)]);
}

}  // namespace

BENCHMARK(BM_Modular)->ArgsProduct({{0, 1, 2}, {0, 1}})->ArgNames({"space", "omp"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Float)->ArgsProduct({{0, 1, 2}, {0, 1}})->ArgNames({"space", "omp"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Exact)->ArgsProduct({{0, 1}, {0, 1}})->ArgNames({"space", "omp"})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
