#include "cybeforge/averaging.hpp"
#include "cybeforge/conformal.hpp"
#include "cybeforge/cybe.hpp"
#include "cybeforge/liealg.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace cybeforge;

namespace {

Exec exec_of(const benchmark::State &state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

struct Fixture {
  BuiltAlgebra sl4 = build_sl(4);
  ConfAveOp family;
  LaurentOp solution;

  Fixture() {
    auto subs = enumerate_closed_symmetric(sl4.roots);
    std::mt19937_64 rng(1);
    HomogeneousSpec spec = random_homogeneous_spec(sl4.algebra, sl4.roots, subs[subs.size() / 2], rng, 2, true);
    family = homogeneous_build(sl4.algebra, sl4.roots, spec, false);
    solution = solution_from_conformal_averaging(sl4.algebra, sl4.roots, family);
  }
};

const Fixture &fixture() {
  static const Fixture f;
  return f;
}

void BM_ConformalAveraging(benchmark::State &state) {
  const Fixture &f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_conformal_averaging(f.sl4.algebra, f.family, exec_of(state)));
  }
}

void BM_OperatorCybe(benchmark::State &state) {
  const Fixture &f = fixture();
  KillingForm kf(f.sl4.algebra);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cybe_check_operator(f.sl4.algebra, kf, f.solution, exec_of(state)));
  }
}

void BM_CurAxioms(benchmark::State &state) {
  const Fixture &f = fixture();
  CurAlgebra c(f.sl4.algebra, Exec::serial);
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_axioms(c, 2, exec_of(state)));
  }
}

void BM_SubsystemEnumeration(benchmark::State &state) {
  BuiltAlgebra sl5 = build_sl(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_closed_symmetric(sl5.roots, exec_of(state)));
  }
}

} // namespace

BENCHMARK(BM_ConformalAveraging)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OperatorCybe)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CurAxioms)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SubsystemEnumeration)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
