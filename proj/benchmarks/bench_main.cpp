#include <benchmark/benchmark.h>

#include "ratho/character.hpp"
#include "ratho/chern_weil.hpp"
#include "ratho/corpus.hpp"
#include "ratho/minimal_model.hpp"
#include "ratho/twisted_derham.hpp"

using namespace ratho;

namespace {

void BM_SphereCohomology(benchmark::State& state) {
  const Dgca& S4 = corpus_entry("S4").dgca;
  const int hi = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cohomology(S4, 0, hi));
}
BENCHMARK(BM_SphereCohomology)->Arg(12)->Arg(24)->Arg(48);

void BM_CylinderCohomology(benchmark::State& state) {
  Dgca C = CylinderAlgebra(corpus_entry("CP2").dgca).algebra();
  const int bound = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cohomology(C, 0, 8, bound));
}
BENCHMARK(BM_CylinderCohomology)->Arg(2)->Arg(4)->Arg(8);

void BM_MinimalModel(benchmark::State& state) {
  const Dgca& A = corpus_entry("twistor_cofiber").dgca;
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(minimal_model(A, n));
}
BENCHMARK(BM_MinimalModel)->Arg(8)->Arg(12)->Arg(16);

void BM_TwistedCohomology(benchmark::State& state) {
  const Dgca& K = corpus_entry("ku1").dgca;
  TwistedComplex C(K, K.gen("f3"), 1);
  for (auto _ : state) benchmark::DoNotOptimize(twisted_cohomology(C));
}
BENCHMARK(BM_TwistedCohomology);

void BM_Pfaffian(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<std::string> names;
  for (std::size_t k = 0; k < n * (n - 1) / 2; ++k) names.push_back("a" + std::to_string(k));
  Dgca S = symbol_algebra(names);
  PolyMatrix M(n, std::vector<Polynomial>(n, S.zero()));
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      M[i][j] = S.gen(k);
      M[j][i] = -S.gen(k++);
    }
  CurvatureMatrix Phi(S.generators(), M, true);
  for (auto _ : state) benchmark::DoNotOptimize(pfaffian(Phi));
}
BENCHMARK(BM_Pfaffian)->Arg(4)->Arg(6)->Arg(8);

void BM_LineQuotient(benchmark::State& state) {
  const Dgca& T3 = corpus_entry("T3").dgca;
  for (auto _ : state) benchmark::DoNotOptimize(line_quotient(T3, 1, 1));
}
BENCHMARK(BM_LineQuotient);

}  // namespace

BENCHMARK_MAIN();
