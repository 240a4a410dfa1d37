#include <benchmark/benchmark.h>

#include <random>

#include "fluidic/minimize.hpp"

using namespace fluidic;

namespace {

TruthTable random_table(std::mt19937& rng, int vars) {
  std::uniform_int_distribution<int> val(0, 2);
  TruthTable t = TruthTable::constant(vars, TtVal::F0);
  for (uint32_t r = 0; r < t.rows(); ++r) t.set(r, TtVal(val(rng)));
  return t;
}

} // namespace

static void BM_Minimize(benchmark::State& state) {
  std::mt19937 rng(17);
  std::vector<TruthTable> tables;
  for (int i = 0; i < 64; ++i)
    tables.push_back(random_table(rng, static_cast<int>(state.range(0))));
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(minimize(tables[i++ % tables.size()]));
  }
}
BENCHMARK(BM_Minimize)->Arg(4)->Arg(5)->Arg(6);
